#include "cli/scenario.hpp"

#include <json.hpp>

#include "cli/csv.hpp"
#include "cli/fiber_tables.hpp"
#include "isrsgn/dispersion.hpp"
#include "isrsgn/error.hpp"
#include "isrsgn/units.hpp"

namespace isrsgn::cli {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError("scenario: missing '" + where + key + "'");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw InputError("scenario: '" + where + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return number(obj, key, where);
}

std::string string_value(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw InputError("scenario: '" + where + key + "' must be a string");
  return v.get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::optional<SnrContribution> snr_contribution(const json& link, const char* key) {
  if (!link.contains(key) || link.at(key).is_null()) return std::nullopt;
  const auto& v = link.at(key);
  SnrContribution out;
  if (v.is_number()) {
    out.values_db.push_back(v.get<double>());
  } else if (v.is_array() && !v.empty()) {
    for (const auto& e : v) {
      if (!e.is_number()) throw InputError(std::string("scenario: 'link.") + key + "' entries must be numbers");
      out.values_db.push_back(e.get<double>());
    }
  } else {
    throw InputError(std::string("scenario: 'link.") + key + "' must be a number or array");
  }
  return out;
}

Dispersion parse_dispersion(const json& d) {
  const std::string where = "fiber.dispersion.";
  Dispersion out;
  if (d.contains("reference_frequency_thz")) {
    out.reference_frequency_thz = number(d, "reference_frequency_thz", where);
  } else {
    out.reference_frequency_thz =
        wavelength_nm_to_thz(number(d, "reference_wavelength_nm", where));
  }
  const double lambda = thz_to_wavelength_nm(out.reference_frequency_thz);
  if (d.contains("d_ps_nm_km")) {
    out.coefficients = convert_dispersion(number(d, "d_ps_nm_km", where),
                                          number_or(d, "s_ps_nm2_km", 0.0, where), lambda);
  } else {
    out.coefficients.beta2 = number(d, "beta2_ps2_per_km", where);
    out.coefficients.beta3 = number_or(d, "beta3_ps3_per_km", 0.0, where);
  }
  return out;
}

}  // namespace

LinkSpec Scenario::link() const {
  LinkSpec spec{fiber, span_count, coherence_epsilon, snr_ase_db, snr_trx_db};
  spec.validate();
  return spec;
}

std::vector<ConstellationPoint> parse_constellation_csv(const std::string& text,
                                                        const std::string& source) {
  const auto table = parse_csv(text, source);
  const auto re = table.column("re");
  const auto im = table.column("im");
  const auto prob = table.column("probability");
  if (re == std::string::npos || im == std::string::npos) {
    throw InputError(source + ": header must contain re and im");
  }
  std::vector<ConstellationPoint> points;
  for (const auto& row : table.rows) {
    const double p = prob == std::string::npos ? 0.0 : parse_number(row.cells[prob], source, row.line);
    points.push_back({{parse_number(row.cells[re], source, row.line),
                       parse_number(row.cells[im], source, row.line)},
                      p});
  }
  if (points.empty()) throw InputError(source + ": empty constellation");
  if (prob == std::string::npos) {
    for (auto& p : points) p.probability = 1.0 / static_cast<double>(points.size());
  }
  return points;
}

ModulationFormat resolve_format(const std::string& spec, const std::filesystem::path& base_dir) {
  try {
    return named_format(spec);
  } catch (const InputError&) {
  }
  const auto path = resolve(base_dir, spec);
  if (!std::filesystem::exists(path)) {
    throw InputError("format '" + spec + "' is neither a known format nor an existing file");
  }
  const auto points = parse_constellation_csv(read_file(path.string()), path.string());
  return ModulationFormat::from_constellation(path.stem().string(), points);
}

Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
  if (!root.is_object()) throw InputError("scenario: top level must be an object");

  const auto& fiber_cfg = require(root, "fiber", "");
  const auto att_path = resolve(base_dir, string_value(fiber_cfg, "attenuation_csv", "fiber."));
  const auto ram_path = resolve(base_dir, string_value(fiber_cfg, "raman_csv", "fiber."));
  for (const auto& p : {att_path, ram_path}) {
    if (!std::filesystem::exists(p)) throw InputError("fiber table not found: " + p.string());
  }
  auto attenuation = load_attenuation_csv(att_path.string());
  auto raman = load_raman_csv(ram_path.string());
  const auto dispersion = parse_dispersion(require(fiber_cfg, "dispersion", "fiber."));

  Scenario s{
      .name = root.value("name", std::string("scenario")),
      .attenuation_path = att_path,
      .raman_path = ram_path,
      .fiber = FiberProfile(std::move(attenuation), std::move(raman), dispersion,
                            number(fiber_cfg, "gamma_per_w_km", "fiber."),
                            number(fiber_cfg, "span_length_km", "fiber.")),
  };

  const auto& channels = require(root, "channels", "");
  if (channels.contains("reference_frequency_thz")) {
    s.reference_frequency_thz = number(channels, "reference_frequency_thz", "channels.");
  }
  const auto& segments = require(channels, "segments", "channels.");
  if (!segments.is_array() || segments.empty()) {
    throw InputError("scenario: 'channels.segments' must be a non-empty array");
  }
  for (const auto& seg : segments) {
    const std::string where = "channels.segments[].";
    const auto count = number(seg, "channel_count", where);
    if (count != static_cast<int>(count)) throw InputError("scenario: channel_count must be an integer");
    s.segments.push_back(BandSegment{
        .name = seg.value("name", std::string("segment")),
        .start_frequency_thz = number(seg, "start_frequency_thz", where),
        .channel_count = static_cast<int>(count),
        .symbol_rate_thz = number(seg, "symbol_rate_gbaud", where) * 1e-3,
        .spacing_thz = number_or(seg, "spacing_ghz", 0.0, where) * 1e-3,
        .launch_power_w = dbm_to_watt(number(seg, "power_dbm", where)),
        .format = resolve_format(seg.value("format", std::string("gaussian")), base_dir),
    });
  }

  if (root.contains("link")) {
    const auto& link = root.at("link");
    const double spans = number_or(link, "spans", 1.0, "link.");
    if (spans != static_cast<int>(spans)) throw InputError("scenario: link.spans must be an integer");
    s.span_count = static_cast<int>(spans);
    s.coherence_epsilon = number_or(link, "epsilon", 0.0, "link.");
    s.snr_ase_db = snr_contribution(link, "snr_ase_db");
    s.snr_trx_db = snr_contribution(link, "snr_trx_db");
  }
  if (root.contains("solver")) {
    const auto& solver = root.at("solver");
    s.grid.step_km = number_or(solver, "step_km", s.grid.step_km, "solver.");
    s.grid.max_step_km = number_or(solver, "max_step_km", s.grid.max_step_km, "solver.");
    const double samples = number_or(solver, "output_samples", 201.0, "solver.");
    if (samples < 2 || samples != static_cast<std::size_t>(samples)) {
      throw InputError("scenario: solver.output_samples must be an integer >= 2");
    }
    s.grid.output_samples = static_cast<std::size_t>(samples);
  }
  if (root.contains("output")) {
    const auto& out = root.at("output");
    if (out.contains("directory")) s.output_dir = resolve(base_dir, string_value(out, "directory", "output."));
    s.plot = out.value("plot", false);
    s.dump_fits = out.value("dump_fits", false);
  }
  s.link();  // validates spans/epsilon
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("scenario file not found: " + path.string());
  return parse_scenario(read_file(path.string()), path.parent_path());
}

}  // namespace isrsgn::cli
