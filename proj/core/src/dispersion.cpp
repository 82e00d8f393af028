#include "isrsgn/dispersion.hpp"

#include <cmath>
#include <numbers>

#include "isrsgn/error.hpp"
#include "isrsgn/units.hpp"

namespace isrsgn {

DispersionCoefficients convert_dispersion(double d_ps_nm_km, double s_ps_nm2_km,
                                          double lambda_ref_nm) {
  if (!(lambda_ref_nm > 0.0) || !std::isfinite(lambda_ref_nm)) {
    throw InputError("convert_dispersion: reference wavelength must be positive");
  }
  // lambda^2 / (2 pi c) in ps*nm
  const double k = lambda_ref_nm * lambda_ref_nm / (2.0 * std::numbers::pi * kSpeedOfLightNmPerPs);
  return {.beta2 = -d_ps_nm_km * k,
          .beta3 = k * k * (s_ps_nm2_km + 2.0 * d_ps_nm_km / lambda_ref_nm)};
}

double Dispersion::beta2_at(double frequency_thz) const {
  if (reference_frequency_thz <= 0.0) return coefficients.beta2;
  const double shift = frequency_thz - reference_frequency_thz;
  return coefficients.beta2 + 2.0 * std::numbers::pi * coefficients.beta3 * shift;
}

}  // namespace isrsgn
