#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isrsgn/fiber.hpp"

namespace isrsgn::cli {

/// Attenuation CSV: header "wavelength_nm" or "frequency_thz" followed by
/// "loss_db_per_km" (or "loss_per_km" for linear 1/km). The abscissa must be
/// strictly increasing in the file; the result is sorted by frequency.
/// Throws InputError with the offending line on unsorted or duplicate
/// abscissae and non-positive loss.
std::vector<AttenuationSample> parse_attenuation_csv(std::string_view text,
                                                     std::string_view source = "attenuation");

/// Raman CSV: header "shift_thz,gain_per_w_per_km". Shifts strictly
/// increasing and non-negative, at least one row.
std::vector<RamanGainSample> parse_raman_csv(std::string_view text,
                                             std::string_view source = "raman");

std::vector<AttenuationSample> load_attenuation_csv(const std::string& path);
std::vector<RamanGainSample> load_raman_csv(const std::string& path);

/// Lossless serializations ("frequency_thz,loss_per_km" and
/// "shift_thz,gain_per_w_per_km"), readable by the parsers above.
std::string serialize_attenuation(const std::vector<AttenuationSample>& table);
std::string serialize_raman(const std::vector<RamanGainSample>& table);

}  // namespace isrsgn::cli
