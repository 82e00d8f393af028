#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isrsgn/channel_plan.hpp"
#include "isrsgn/error.hpp"
#include "isrsgn/raman_solver.hpp"

namespace isrsgn {

/// Per-channel loss/ISRS parameters of the first-order profile
///   P(z)/P(0) = (1 + T) exp(-alpha z) - T exp(-(alpha + alpha_bar) z),
///   T = -P_tot c_r f / alpha_bar.
struct EffectiveParams {
  double alpha = 0.0;      // 1/km
  double alpha_bar = 0.0;  // 1/km
  double c_r = 0.0;        // 1/(W km THz)
  double t_tilde = 0.0;
  double fit_residual = 0.0;  // RMS of (measured - fitted), normalized power
  int iterations = 0;
  bool alpha_pinned = false;  // alpha held at the fiber attenuation

  /// Parameters of a channel without ISRS: alpha_bar = alpha, c_r = 0.
  static EffectiveParams lossy(double alpha);
  /// Builds a consistent set from (alpha, alpha_bar, c_r); t_tilde is derived.
  static EffectiveParams from_raman_slope(double alpha, double alpha_bar, double c_r,
                                          double total_power_w, double frequency_thz);
};

/// Evaluates the first-order profile. Exactly 1 at z = 0.
double eval_first_order_profile(const EffectiveParams& params, double z_km);

struct FitHints {
  /// Seed for alpha; estimated from the profile tail when <= 0.
  double alpha = 0.0;
  /// alpha is the fiber attenuation at the channel frequency. A free fit that
  /// ends with alpha <= 0 is then redone with alpha pinned to it instead of
  /// failing.
  bool alpha_is_attenuation = false;
};

struct FitOptions {
  int max_iterations = 200;
  double relative_tolerance = 1e-10;
  /// Below this |T| the second exponential is dropped (alpha_bar = alpha,
  /// c_r = 0) and alpha is refit alone.
  double t_tilde_floor = 1e-4;
  /// |f| at or below this is the reference channel, whose c_r cannot be
  /// identified.
  double center_frequency_threshold_thz = 1e-6;
  /// Starting saturation rates, as multiples of the alpha seed. The start with
  /// the lowest converged cost wins; ties keep the earlier start.
  std::vector<double> alpha_bar_seed_factors{1.0, 0.25, 4.0, 16.0};
  /// Lower bound on |alpha_bar| (1/km). Profiles whose optimum is the
  /// alpha_bar -> 0 limit are refit with alpha_bar held here.
  double min_alpha_bar = 1e-4;
};

/// Thrown when the optimizer does not converge or converges to an unphysical
/// point. Carries the best parameters seen.
class FitError : public NumericalError {
public:
  FitError(const std::string& what, EffectiveParams best)
      : NumericalError(what), best_(best) {}
  const EffectiveParams& best() const { return best_; }

private:
  EffectiveParams best_;
};

/// Least-squares fit of one channel's normalized profile (linear scale, unit
/// weights) with a damped Gauss-Newton iteration. The optimizer works on
/// (alpha, alpha_bar, T alpha_bar), which is smooth through alpha_bar = 0;
/// results are mapped to the alpha_bar > 0 branch and c_r is recovered from
/// T afterwards.
///
/// Throws InputError when fewer than 10 samples, z and profile lengths differ,
/// z does not start at 0 or is not increasing, or a sample is not positive.
EffectiveParams fit_effective_params(std::span<const double> z_km,
                                     std::span<const double> normalized_profile,
                                     double frequency_thz, double total_power_w,
                                     const FitHints& hints = {},
                                     const FitOptions& options = {});

/// Residual RMS of a parameter set against a profile.
double profile_residual(std::span<const double> z_km,
                        std::span<const double> normalized_profile,
                        const EffectiveParams& params);

/// Fits every channel of an evolution. Attenuation seeds are read from the
/// fiber when given. Errors are rethrown with the channel index attached.
std::vector<EffectiveParams> fit_all(const PowerEvolution& evolution, const ChannelPlan& plan,
                                     const FiberProfile* fiber = nullptr,
                                     const FitOptions& options = {});

}  // namespace isrsgn
