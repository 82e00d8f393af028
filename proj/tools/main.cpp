#include <CLI11.hpp>
#include <iostream>

#include "cli/app.hpp"
#include "isrsgn/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Per-channel nonlinear-interference SNR of ultra-wideband WDM links"};
  app.set_version_flag("--version", std::string(isrsgn::kVersion));

  isrsgn::cli::RunOptions options;
  std::string scenario;
  std::string output_dir;
  std::string format;
  std::string overlay;
  int spans = 0;
  double epsilon = 0.0;

  app.add_option("scenario", scenario, "Scenario JSON file")->required();
  auto* out_opt = app.add_option("--output-dir", output_dir, "Directory for results (overrides the scenario)");
  auto* fmt_opt = app.add_option("--format", format, "Modulation format name or constellation CSV for all channels");
  auto* spans_opt = app.add_option("--spans", spans, "Number of identical spans")->check(CLI::PositiveNumber);
  auto* eps_opt = app.add_option("--epsilon", epsilon, "Coherence factor epsilon")->check(CLI::NonNegativeNumber);
  app.add_flag("--plot", options.plot, "Write snr.svg");
  app.add_flag("--dump-fits", options.dump_fits, "Write fits.csv with measured and fitted profiles");
  auto* overlay_opt = app.add_option("--overlay", overlay, "Results CSV drawn as a second series on the plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : isrsgn::cli::kInputError;
  }

  options.scenario = scenario;
  if (*out_opt) options.output_dir = output_dir;
  if (*fmt_opt) options.format = format;
  if (*spans_opt) options.spans = spans;
  if (*eps_opt) options.epsilon = epsilon;
  if (*overlay_opt) options.overlay = overlay;
  return isrsgn::cli::run(options, std::cout, std::cerr);
}
