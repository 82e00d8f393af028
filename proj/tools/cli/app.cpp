#include "cli/app.hpp"

#include <fstream>
#include <ostream>

#include "cli/csv.hpp"
#include "cli/results.hpp"
#include "cli/scenario.hpp"
#include "cli/svg_plot.hpp"
#include "isrsgn/error.hpp"
#include "isrsgn/link_engine.hpp"

namespace isrsgn::cli {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path.string() + "'");
}

ResultSeries to_series(const LinkResult& result, const std::string& label) {
  ResultSeries s{label, {}, {}};
  for (const auto& c : result.channels) {
    s.wavelength_nm.push_back(c.wavelength_nm);
    s.snr_nli_db.push_back(c.snr_nli_db);
  }
  return s;
}

}  // namespace

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::optional<Scenario> loaded;
  std::optional<ResultSeries> overlay;
  try {
    loaded.emplace(load_scenario(options.scenario));
    auto& scenario = *loaded;
    if (options.format) {
      const auto fmt = resolve_format(*options.format, std::filesystem::current_path());
      for (auto& seg : scenario.segments) seg.format = fmt;
    }
    if (options.spans) scenario.span_count = *options.spans;
    if (options.epsilon) scenario.coherence_epsilon = *options.epsilon;
    if (options.output_dir) scenario.output_dir = *options.output_dir;
    scenario.plot = scenario.plot || options.plot || options.overlay.has_value();
    scenario.dump_fits = scenario.dump_fits || options.dump_fits;
    if (options.overlay) {
      overlay = parse_results_csv(read_file(options.overlay->string()), options.overlay->filename().string());
    }
  } catch (const InputError& e) {
    err << "error [config]: " << e.what() << '\n';
    return kInputError;
  }

  auto& scenario = *loaded;
  try {
    const auto plan = scenario.plan();
    const auto link = scenario.link();
    LinkOptions link_options;
    link_options.grid = scenario.grid;
    link_options.keep_evolution = scenario.dump_fits;
    const auto result = evaluate_link(plan, link, link_options);

    std::filesystem::create_directories(scenario.output_dir);
    std::vector<std::string> artifacts;
    const auto results_path = scenario.output_dir / "results.csv";
    write_text(results_path, results_csv(result));
    artifacts.push_back(results_path.filename().string());
    if (scenario.plot) {
      std::vector<ResultSeries> series{to_series(result, scenario.name)};
      if (overlay) series.push_back(*overlay);
      const auto svg_path = scenario.output_dir / "snr.svg";
      write_text(svg_path, render_snr_plot(series, "SNR_NLI after " + std::to_string(link.span_count) +
                                                       " x " + format_number(link.fiber.span_length()) + " km"));
      artifacts.push_back(svg_path.filename().string());
    }
    if (scenario.dump_fits) {
      const auto fits_path = scenario.output_dir / "fits.csv";
      write_text(fits_path, fit_dump_csv(result));
      artifacts.push_back(fits_path.filename().string());
    }
    write_text(scenario.output_dir / "manifest.json", manifest_json(scenario, result, artifacts));

    out << scenario.name << ": " << result.channels.size() << " channels, " << link.span_count
        << " span(s), " << format_number(result.timings.total_ms) << " ms -> "
        << scenario.output_dir.string() << '\n';
    return kSuccess;
  } catch (const StageError& e) {
    err << "error [" << e.stage() << "]: " << e.what() << '\n';
    return e.numerical() ? kNumericalFailure : kInputError;
  } catch (const InputError& e) {
    err << "error [input]: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "error [numerical]: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [output]: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace isrsgn::cli
