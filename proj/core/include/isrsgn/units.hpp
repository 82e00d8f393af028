#pragma once

// Internal units: THz, km, W, ps. dB quantities are converted at the
// ingestion and reporting boundaries only.

#include <cmath>
#include <numbers>

namespace isrsgn {

/// Speed of light in nm/ps (equivalently nm*THz).
inline constexpr double kSpeedOfLightNmPerPs = 299792.458;

/// dB/km -> 1/km power attenuation.
inline constexpr double kDbPerKmToPerKm = std::numbers::ln10 / 10.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline double dbm_to_watt(double dbm) { return 1e-3 * db_to_linear(dbm); }
inline double watt_to_dbm(double w) { return linear_to_db(w / 1e-3); }

inline double wavelength_nm_to_thz(double nm) { return kSpeedOfLightNmPerPs / nm; }
inline double thz_to_wavelength_nm(double thz) { return kSpeedOfLightNmPerPs / thz; }

inline double attenuation_db_to_linear(double db_per_km) { return db_per_km * kDbPerKmToPerKm; }
inline double attenuation_linear_to_db(double per_km) { return per_km / kDbPerKmToPerKm; }

}  // namespace isrsgn
