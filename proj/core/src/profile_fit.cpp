#include "isrsgn/profile_fit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <tuple>
#include <sstream>
#include <string>

#include "detail/parallel.hpp"

namespace isrsgn {

EffectiveParams EffectiveParams::lossy(double alpha) {
  EffectiveParams p;
  p.alpha = alpha;
  p.alpha_bar = alpha;
  return p;
}

EffectiveParams EffectiveParams::from_raman_slope(double alpha, double alpha_bar, double c_r,
                                                  double total_power_w, double frequency_thz) {
  EffectiveParams p;
  p.alpha = alpha;
  p.alpha_bar = alpha_bar;
  p.c_r = c_r;
  p.t_tilde = -total_power_w * c_r * frequency_thz / alpha_bar;
  return p;
}

double eval_first_order_profile(const EffectiveParams& p, double z) {
  // (1 + T) e^{-a z} - T e^{-(a + ab) z} written so that z = 0 gives exactly 1.
  return std::exp(-p.alpha * z) * (1.0 - p.t_tilde * std::expm1(-p.alpha_bar * z));
}

double profile_residual(std::span<const double> z, std::span<const double> y,
                        const EffectiveParams& params) {
  double sum = 0.0;
  for (std::size_t s = 0; s < z.size(); ++s) {
    const double r = eval_first_order_profile(params, z[s]) - y[s];
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(z.size()));
}

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// The optimizer works on (alpha, alpha_bar, S) with S = T * alpha_bar, i.e.
//   m(z) = exp(-alpha z) (1 + S h(alpha_bar, z)),  h = (1 - exp(-alpha_bar z)) / alpha_bar.
// h is smooth through alpha_bar = 0, where the (alpha, alpha_bar, T) form is
// singular; strongly pumped or depleted channels have their optimum there.
struct Shape {
  double h;
  double dh;  // dh / d alpha_bar
};

Shape shape(double alpha_bar, double z) {
  const double x = alpha_bar * z;
  if (std::abs(x) < 1e-3) {
    // Series with term_k = (-x)^k / (k + 2)!:
    //   h  = z   sum (k + 2) term_k
    //   dh = -z^2 sum (k + 1) term_k
    double h = 0.0, dh = 0.0, term = 0.5;
    for (int k = 0; k < 8; ++k) {
      h += (k + 2) * term;
      dh -= (k + 1) * term;
      term *= -x / (k + 3);
    }
    return {z * h, z * z * dh};
  }
  const double em = std::expm1(-x);
  const double h = -em / alpha_bar;
  return {h, (z * (em + 1.0) - h) / alpha_bar};
}

struct Model {
  std::span<const double> z;
  std::span<const double> y;

  static double value(const Vec3& p, double z) {
    return std::exp(-p[0] * z) * (1.0 + p[2] * shape(p[1], z).h);
  }

  double cost(const Vec3& p) const {
    double c = 0.0;
    for (std::size_t s = 0; s < z.size(); ++s) {
      const double r = value(p, z[s]) - y[s];
      c += r * r;
    }
    return c;
  }

  // Normal equations J^T J and gradient J^T r.
  void normal_equations(const Vec3& p, Mat3& jtj, Vec3& jtr) const {
    jtj = {};
    jtr = {};
    for (std::size_t s = 0; s < z.size(); ++s) {
      const double zz = z[s];
      const double e1 = std::exp(-p[0] * zz);
      const Shape sh = shape(p[1], zz);
      const double m = e1 * (1.0 + p[2] * sh.h);
      const Vec3 j{-zz * m, e1 * p[2] * sh.dh, e1 * sh.h};
      const double r = m - y[s];
      for (int a = 0; a < 3; ++a) {
        jtr[a] += j[a] * r;
        for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
      }
    }
  }
};

// Cholesky solve of a symmetric positive definite 3x3 system.
bool solve_spd(const Mat3& a, const Vec3& b, Vec3& x) {
  Mat3 l{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  Vec3 w{};
  for (int i = 0; i < 3; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[i][k] * w[k];
    w[i] = s / l[i][i];
  }
  for (int i = 2; i >= 0; --i) {
    double s = w[i];
    for (int k = i + 1; k < 3; ++k) s -= l[k][i] * x[k];
    x[i] = s / l[i][i];
  }
  return true;
}

struct LmOutcome {
  Vec3 params;
  double cost;
  int iterations;
  bool converged;
};

using FreeMask = std::array<bool, 3>;

constexpr double kMaxDamping = 1e20;

// Damped Gauss-Newton with multiplicative (Levenberg-Marquardt) damping over
// the parameters marked free. Converges on a relative parameter change below
// tol, or when no step can lower the cost any more (the floating-point floor
// of a noise-free fit).
LmOutcome levenberg_marquardt(const Model& model, Vec3 p, const FreeMask& free, int max_iterations,
                              double tol) {
  double cost = model.cost(p);
  double lambda = 1e-3;
  // alpha_bar and S may pass through zero; their changes are measured against
  // these absolute floors (1/km).
  const Vec3 floor{0.0, 1e-6, 1e-8};
  for (int it = 1; it <= max_iterations; ++it) {
    if (cost == 0.0) return {p, cost, it - 1, true};
    Mat3 jtj;
    Vec3 jtr;
    model.normal_equations(p, jtj, jtr);
    for (int a = 0; a < 3; ++a) {
      if (free[a]) continue;
      for (int b = 0; b < 3; ++b) jtj[a][b] = jtj[b][a] = 0.0;
      jtj[a][a] = 1.0;
      jtr[a] = 0.0;
    }
    double max_diag = 0.0;
    for (int a = 0; a < 3; ++a) max_diag = std::max(max_diag, jtj[a][a]);
    bool accepted = false;
    while (lambda <= kMaxDamping) {
      Mat3 damped = jtj;
      for (int a = 0; a < 3; ++a) {
        damped[a][a] += lambda * std::max(jtj[a][a], 1e-12 * max_diag + 1e-300);
      }
      Vec3 step{};
      const Vec3 rhs{-jtr[0], -jtr[1], -jtr[2]};
      if (!solve_spd(damped, rhs, step)) {
        lambda *= 10.0;
        continue;
      }
      const Vec3 trial{p[0] + step[0], p[1] + step[1], p[2] + step[2]};
      const double trial_cost = model.cost(trial);
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        bool small = true;
        for (int a = 0; a < 3; ++a) {
          const double scale = std::max({std::abs(p[a]), std::abs(trial[a]), floor[a]});
          if (std::abs(step[a]) > tol * scale) small = false;
        }
        const bool stalled = trial_cost == cost;
        p = trial;
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (small || stalled) return {p, cost, it, true};
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) return {p, cost, it, true};
  }
  return {p, cost, max_iterations, false};
}

void validate_profile(std::span<const double> z, std::span<const double> y) {
  if (z.size() != y.size()) throw InputError("fit: z and profile lengths differ");
  if (z.size() < 10) throw InputError("fit: need at least 10 samples");
  if (z.front() != 0.0) throw InputError("fit: first sample must be at z = 0");
  for (std::size_t s = 0; s < z.size(); ++s) {
    if (s > 0 && !(z[s] > z[s - 1])) throw InputError("fit: z must be strictly increasing");
    if (!(y[s] > 0.0) || !std::isfinite(y[s])) {
      throw InputError("fit: profile sample " + std::to_string(s) + " is not positive");
    }
  }
}

// Log-slope over the last tenth of the span.
double tail_alpha(std::span<const double> z, std::span<const double> y) {
  const std::size_t last = z.size() - 1;
  const std::size_t first = last - std::max<std::size_t>(1, z.size() / 10);
  return -std::log(y[last] / y[first]) / (z[last] - z[first]);
}

// Maps an optimizer point back to (alpha, alpha_bar, T) on the branch with
// alpha_bar > 0. (a, ab, T) and (a + ab, -ab, -(1 + T)) describe the same curve.
EffectiveParams to_params(const Vec3& p, int iterations) {
  EffectiveParams out;
  out.alpha = p[0];
  out.alpha_bar = p[1];
  out.t_tilde = p[2] / p[1];
  if (out.alpha_bar < 0.0) {
    out.alpha = p[0] + p[1];
    out.alpha_bar = -p[1];
    out.t_tilde = -(1.0 + out.t_tilde);
  }
  out.iterations = iterations;
  return out;
}

}  // namespace

EffectiveParams fit_effective_params(std::span<const double> z, std::span<const double> y,
                                     double frequency_thz, double total_power_w,
                                     const FitHints& hints, const FitOptions& options) {
  validate_profile(z, y);
  const Model model{z, y};
  const double length = z.back();
  const double alpha0 = hints.alpha > 0.0 ? hints.alpha : tail_alpha(z, y);
  const auto rms = [&](double cost) { return std::sqrt(cost / static_cast<double>(z.size())); };

  auto single = [&](int used_iterations) {
    const auto r = levenberg_marquardt(model, {alpha0, alpha0, 0.0}, {true, false, false},
                                       options.max_iterations, options.relative_tolerance);
    EffectiveParams out = EffectiveParams::lossy(r.params[0]);
    out.iterations = used_iterations + r.iterations;
    out.fit_residual = rms(r.cost);
    if (!r.converged) throw FitError("single-exponential fit did not converge", out);
    if (!(out.alpha > 0.0)) throw FitError("fitted attenuation is not positive", out);
    return out;
  };

  if (std::abs(frequency_thz) <= options.center_frequency_threshold_thz) return single(0);

  // Fixed multi-start over the saturation rate; every start shares the
  // end-of-span seed for T. A start counts only if it converges to a point
  // with positive attenuation on the alpha_bar > 0 branch.
  const double t0 = y.back() * std::exp(alpha0 * length) - 1.0;
  int iterations = 0;
  const auto fit_from = [&](FreeMask free, bool pinned) {
    std::optional<LmOutcome> best;
    std::optional<LmOutcome> fallback;
    for (double factor : options.alpha_bar_seed_factors) {
      const double ab0 = factor * alpha0;
      auto r = levenberg_marquardt(model, {alpha0, ab0, t0 * ab0}, free, options.max_iterations,
                                   options.relative_tolerance);
      iterations += r.iterations;
      if (std::abs(r.params[1]) < options.min_alpha_bar && r.converged) {
        // Optimum at the linear-gain limit alpha_bar -> 0, which the
        // first-order form only reaches asymptotically. Hold alpha_bar at the
        // floor.
        const double ab = pinned || r.params[1] >= 0.0 ? options.min_alpha_bar
                                                       : -options.min_alpha_bar;
        r = levenberg_marquardt(model, {r.params[0], ab, r.params[2]}, {free[0], false, true},
                                options.max_iterations, options.relative_tolerance);
        iterations += r.iterations;
      }
      if (!fallback || r.cost < fallback->cost) fallback = r;
      if (!r.converged) continue;
      const EffectiveParams mapped = to_params(r.params, 0);
      if (!(mapped.alpha > 0.0) || (pinned && r.params[1] <= 0.0)) continue;
      if (!best || r.cost < best->cost) best = r;
    }
    return std::pair{best, *fallback};
  };

  auto [best, fallback] = fit_from({true, true, true}, false);
  bool pinned = false;
  if (!best && hints.alpha_is_attenuation) {
    // The first-order shape cannot follow this profile with a physical loss;
    // pin alpha to the fiber attenuation and fit the ISRS part alone.
    std::tie(best, fallback) = fit_from({false, true, true}, true);
    pinned = true;
  }
  if (!best) {
    EffectiveParams partial = to_params(fallback.params, iterations);
    partial.fit_residual = rms(fallback.cost);
    if (!fallback.converged) {
      throw FitError("fit did not converge within " + std::to_string(options.max_iterations) +
                         " iterations",
                     partial);
    }
    throw FitError("fitted attenuation is not positive", partial);
  }
  EffectiveParams out = to_params(best->params, iterations);
  out.fit_residual = rms(best->cost);
  out.alpha_pinned = pinned;

  if (std::abs(out.t_tilde) < options.t_tilde_floor) return single(iterations);
  const double c_r = -out.t_tilde * out.alpha_bar / (total_power_w * frequency_thz);
  // Rederive T from c_r so the T definition holds exactly.
  const auto consistent =
      EffectiveParams::from_raman_slope(out.alpha, out.alpha_bar, c_r, total_power_w, frequency_thz);
  out.c_r = consistent.c_r;
  out.t_tilde = consistent.t_tilde;
  return out;
}

std::vector<EffectiveParams> fit_all(const PowerEvolution& evolution, const ChannelPlan& plan,
                                     const FiberProfile* fiber, const FitOptions& options) {
  if (evolution.channel_count() != plan.size()) {
    throw InputError("fit_all: evolution has " + std::to_string(evolution.channel_count()) +
                     " channels, plan has " + std::to_string(plan.size()));
  }
  std::vector<EffectiveParams> out(plan.size());
  detail::parallel_for(plan.size(), 0, [&](std::size_t i) {
    const auto y = evolution.normalized(i);
    FitHints hints;
    if (fiber != nullptr) {
      hints.alpha = fiber->attenuation(plan.absolute_frequency(i));
      hints.alpha_is_attenuation = true;
    }
    try {
      out[i] = fit_effective_params(evolution.z(), y, plan[i].center_frequency_thz,
                                    plan.total_power(), hints, options);
    } catch (const FitError& e) {
      throw FitError("channel " + std::to_string(i) + ": " + e.what(), e.best());
    } catch (const InputError& e) {
      throw InputError("channel " + std::to_string(i) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace isrsgn
