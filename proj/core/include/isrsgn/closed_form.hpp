#pragma once

#include <span>
#include <vector>

#include "isrsgn/channel_plan.hpp"
#include "isrsgn/link_spec.hpp"
#include "isrsgn/profile_fit.hpp"

namespace isrsgn {

/// Auxiliary quantities of the closed-form expression. Frequencies are
/// relative to the plan reference; beta2 must be taken at that reference.
namespace terms {

/// T = (alpha + alpha_bar - P_tot c_r f)^2
double t_coefficient(const EffectiveParams& p, double total_power_w, double frequency_thz);
/// A = alpha + alpha_bar
double a_coefficient(const EffectiveParams& p);
/// phi = -4 pi^2 [beta2 + pi beta3 (f_i + f_k)] L
double phi(const DispersionCoefficients& d, double f_i, double f_k, double span_length_km);
/// phi_i = 3/2 pi^2 (beta2 + 2 pi beta3 f_i)
double phi_self(const DispersionCoefficients& d, double f_i);
/// phi_ik = -2 pi^2 (f_k - f_i) [beta2 + pi beta3 (f_i + f_k)]
double phi_cross(const DispersionCoefficients& d, double f_i, double f_k);
/// 0 for a single span, n otherwise.
int n_tilde(int span_count);

}  // namespace terms

struct NliChannel {
  double snr_nli_db = 0.0;
  double spm_inverse = 0.0;
  /// Cross-channel sum weighted by n (the Gaussian part).
  double xpm_inverse = 0.0;
  /// All excess-kurtosis proportional parts: the (5/6) Phi share of the
  /// cross-channel weight and the logarithmic multi-span correction.
  double kurtosis_correction_inverse = 0.0;

  double total_inverse() const { return spm_inverse + xpm_inverse + kurtosis_correction_inverse; }
};

struct NliResult {
  std::vector<NliChannel> channels;

  std::vector<double> snr_nli_db() const;
};

struct NliOptions {
  /// When false the kurtosis-dependent terms are skipped entirely rather than
  /// evaluated with their Phi factor.
  bool format_correction = true;
  /// Worker threads for the per-channel loop; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Per-channel SNR_NLI from fitted effective parameters over link.span_count
/// identical spans. Throws InputError for misaligned params or overlapping
/// channels and NumericalError (naming the channel pair) when an intermediate
/// is non-finite or a cross-channel contribution is not positive.
NliResult compute_nli(const ChannelPlan& plan, std::span<const EffectiveParams> params,
                      const LinkSpec& link, const NliOptions& options = {});

/// SNR_tot^-1 = SNR_NLI^-1 + SNR_ASE^-1 + SNR_TRX^-1 per channel, dB. Missing
/// contributions count as infinite SNR.
std::vector<double> total_snr(const NliResult& nli, const LinkSpec& link);

}  // namespace isrsgn
