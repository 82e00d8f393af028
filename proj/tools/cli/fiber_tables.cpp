#include "cli/fiber_tables.hpp"

#include <algorithm>
#include <sstream>

#include "cli/csv.hpp"
#include "isrsgn/error.hpp"
#include "isrsgn/units.hpp"

namespace isrsgn::cli {
namespace {

[[noreturn]] void row_error(std::string_view source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw InputError(msg.str());
}

}  // namespace

std::vector<AttenuationSample> parse_attenuation_csv(std::string_view text, std::string_view source) {
  const auto table = parse_csv(text, source);
  if (table.header.size() != 2) {
    throw InputError(std::string(source) + ": expected two columns");
  }
  const bool by_wavelength = table.header[0] == "wavelength_nm";
  if (!by_wavelength && table.header[0] != "frequency_thz") {
    throw InputError(std::string(source) + ": first column must be wavelength_nm or frequency_thz");
  }
  const bool in_db = table.header[1] == "loss_db_per_km";
  if (!in_db && table.header[1] != "loss_per_km") {
    throw InputError(std::string(source) + ": second column must be loss_db_per_km or loss_per_km");
  }
  if (table.rows.empty()) throw InputError(std::string(source) + ": no data rows");

  std::vector<AttenuationSample> out;
  out.reserve(table.rows.size());
  double previous = 0.0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const double x = parse_number(row.cells[0], source, row.line);
    const double loss = parse_number(row.cells[1], source, row.line);
    if (!(x > 0.0)) row_error(source, row.line, "abscissa must be positive");
    if (r > 0 && x == previous) row_error(source, row.line, "duplicate abscissa");
    if (r > 0 && x < previous) row_error(source, row.line, "abscissae must be increasing");
    if (!(loss > 0.0)) row_error(source, row.line, "loss must be positive");
    previous = x;
    out.push_back({by_wavelength ? wavelength_nm_to_thz(x) : x,
                   in_db ? attenuation_db_to_linear(loss) : loss});
  }
  if (by_wavelength) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<RamanGainSample> parse_raman_csv(std::string_view text, std::string_view source) {
  const auto table = parse_csv(text, source);
  if (table.header.size() != 2 || table.header[0] != "shift_thz" ||
      table.header[1] != "gain_per_w_per_km") {
    throw InputError(std::string(source) + ": header must be shift_thz,gain_per_w_per_km");
  }
  if (table.rows.empty()) throw InputError(std::string(source) + ": no data rows");
  std::vector<RamanGainSample> out;
  out.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const double shift = parse_number(row.cells[0], source, row.line);
    const double gain = parse_number(row.cells[1], source, row.line);
    if (shift < 0.0) row_error(source, row.line, "negative shift");
    if (r > 0 && shift == out.back().shift_thz) row_error(source, row.line, "duplicate shift");
    if (r > 0 && shift < out.back().shift_thz) row_error(source, row.line, "shifts must be increasing");
    if (shift == 0.0 && gain != 0.0) row_error(source, row.line, "gain at zero shift must be zero");
    out.push_back({shift, gain});
  }
  return out;
}

std::vector<AttenuationSample> load_attenuation_csv(const std::string& path) {
  return parse_attenuation_csv(read_file(path), path);
}

std::vector<RamanGainSample> load_raman_csv(const std::string& path) {
  return parse_raman_csv(read_file(path), path);
}

std::string serialize_attenuation(const std::vector<AttenuationSample>& table) {
  std::string out = "frequency_thz,loss_per_km\n";
  for (const auto& s : table) {
    out += format_number(s.frequency_thz) + "," + format_number(s.loss_per_km) + "\n";
  }
  return out;
}

std::string serialize_raman(const std::vector<RamanGainSample>& table) {
  std::string out = "shift_thz,gain_per_w_per_km\n";
  for (const auto& s : table) {
    out += format_number(s.shift_thz) + "," + format_number(s.gain_per_w_km) + "\n";
  }
  return out;
}

}  // namespace isrsgn::cli
