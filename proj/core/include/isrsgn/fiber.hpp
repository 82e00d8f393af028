#pragma once

#include <span>
#include <vector>

#include "isrsgn/dispersion.hpp"

namespace isrsgn {

struct AttenuationSample {
  double frequency_thz;  // absolute
  double loss_per_km;    // power attenuation, 1/km

  bool operator==(const AttenuationSample&) const = default;
};

struct RamanGainSample {
  double shift_thz;       // >= 0
  double gain_per_w_km;   // normalized gain g_R / A_eff

  bool operator==(const RamanGainSample&) const = default;
};

/// Tabulated attenuation and Raman gain spectra plus dispersion, nonlinearity
/// and span length. Immutable after construction.
///
/// The attenuation table must be strictly increasing in frequency with
/// positive loss. A single-row table describes a frequency-flat fiber. The
/// Raman table must be strictly increasing in shift, start at a
/// non-negative shift, and have zero gain at zero shift; a missing (0, 0)
/// row is prepended. Gain is interpolated linearly, clamped to zero past the
/// last row, and extended antisymmetrically to negative shifts.
class FiberProfile {
public:
  FiberProfile(std::vector<AttenuationSample> attenuation,
               std::vector<RamanGainSample> raman_gain, Dispersion dispersion,
               double gamma_per_w_km, double span_length_km);

  /// Power attenuation at an absolute frequency. Throws InputError when the
  /// frequency lies outside the tabulated range.
  double attenuation(double frequency_thz) const;
  bool covers(double frequency_thz) const;

  /// g(shift) for signed shift = f_interferer - f_channel. Positive when the
  /// interferer is at the higher frequency.
  double raman_gain(double shift_thz) const;

  /// Largest |g| over the table.
  double max_raman_gain() const;

  std::span<const AttenuationSample> attenuation_table() const { return attenuation_; }
  std::span<const RamanGainSample> raman_gain_table() const { return raman_gain_; }
  const Dispersion& dispersion() const { return dispersion_; }
  double gamma() const { return gamma_; }
  double span_length() const { return span_length_; }

  FiberProfile with_raman_gain(std::vector<RamanGainSample> raman_gain) const;
  FiberProfile with_attenuation(std::vector<AttenuationSample> attenuation) const;
  FiberProfile with_dispersion(Dispersion dispersion) const;
  FiberProfile with_span_length(double span_length_km) const;

private:
  std::vector<AttenuationSample> attenuation_;
  std::vector<RamanGainSample> raman_gain_;
  Dispersion dispersion_;
  double gamma_;
  double span_length_;
};

/// A Raman table with zero gain everywhere (ISRS disabled).
std::vector<RamanGainSample> zero_raman_gain();

/// Triangular gain: slope * shift up to peak_shift, then a linear decay to
/// zero at cutoff_shift. cutoff_shift == peak_shift gives a pure ramp that is
/// clamped at the peak shift.
std::vector<RamanGainSample> triangular_raman_gain(double slope_per_w_km_thz,
                                                   double peak_shift_thz,
                                                   double cutoff_shift_thz);

}  // namespace isrsgn
