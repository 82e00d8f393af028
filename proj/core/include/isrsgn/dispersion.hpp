#pragma once

namespace isrsgn {

/// Group-velocity dispersion coefficients, ps^2/km and ps^3/km.
struct DispersionCoefficients {
  double beta2 = 0.0;
  double beta3 = 0.0;
};

/// Converts dispersion D [ps/(nm km)] and slope S [ps/(nm^2 km)] given at
/// wavelength lambda_ref [nm] to (beta2, beta3) at the same wavelength.
///
///   beta2 = -D lambda^2 / (2 pi c)
///   beta3 = (lambda^2 / (2 pi c))^2 (S + 2 D / lambda)
///
/// Throws InputError when lambda_ref is not positive and finite.
DispersionCoefficients convert_dispersion(double d_ps_nm_km, double s_ps_nm2_km,
                                          double lambda_ref_nm);

/// Dispersion of a fiber, anchored at an absolute reference frequency. A
/// reference of 0 means the coefficients apply at whatever reference
/// frequency the channel plan uses.
struct Dispersion {
  DispersionCoefficients coefficients;
  double reference_frequency_thz = 0.0;

  /// beta2 re-expanded around another absolute frequency (first-order Taylor
  /// in angular frequency; exact for a cubic propagation constant).
  double beta2_at(double frequency_thz) const;
};

}  // namespace isrsgn
