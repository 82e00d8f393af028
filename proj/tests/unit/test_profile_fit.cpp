#include <doctest.h>

#include <cmath>
#include <vector>

#include "isrsgn/error.hpp"
#include "isrsgn/profile_fit.hpp"
#include "isrsgn/raman_solver.hpp"
#include "support.hpp"

using namespace isrsgn;
using doctest::Approx;

namespace {

std::vector<double> z_grid(std::size_t n = 201, double length = 80.0) {
  std::vector<double> z(n);
  for (std::size_t s = 0; s < n; ++s) z[s] = length * static_cast<double>(s) / (n - 1);
  return z;
}

EffectiveParams shape(double alpha, double alpha_bar, double t_tilde) {
  EffectiveParams p;
  p.alpha = alpha;
  p.alpha_bar = alpha_bar;
  p.t_tilde = t_tilde;
  return p;
}

std::vector<double> synthesize(const EffectiveParams& p, const std::vector<double>& z) {
  std::vector<double> y;
  for (double zi : z) y.push_back(eval_first_order_profile(p, zi));
  return y;
}

}  // namespace

TEST_CASE("eval_first_order_profile") {
  CHECK(eval_first_order_profile(shape(0.05, 0.02, 0.7), 0.0) == 1.0);
  CHECK(eval_first_order_profile(shape(0.05, 0.02, -3.1), 0.0) == 1.0);
  CHECK(eval_first_order_profile(shape(0.046, 0.046, 0.0), 50.0) == Approx(0.1002588437));
  CHECK(eval_first_order_profile(shape(0.046, 0.046, 0.2), 80.0) ==
        Approx(1.2 * std::exp(-3.68) - 0.2 * std::exp(-7.36)).epsilon(1e-14));
}

TEST_CASE("EffectiveParams constructors") {
  const auto p = EffectiveParams::from_raman_slope(0.046, 0.04, 0.03, 0.3, -2.0);
  CHECK(p.t_tilde == -0.3 * 0.03 * -2.0 / 0.04);
  const auto l = EffectiveParams::lossy(0.05);
  CHECK(l.alpha_bar == 0.05);
  CHECK(l.c_r == 0.0);
  CHECK(l.t_tilde == 0.0);
}

TEST_CASE("round trip from a synthesized profile") {
  const auto z = z_grid();
  const double f = 1.5;
  const double ptot = 0.285;
  const auto truth = shape(0.05, 0.05, 0.3);
  const auto fit = fit_effective_params(z, synthesize(truth, z), f, ptot, {0.046});
  CHECK(test::relative_error(fit.alpha, 0.05) < 1e-5);
  CHECK(test::relative_error(fit.alpha_bar, 0.05) < 1e-5);
  CHECK(test::relative_error(fit.t_tilde, 0.3) < 1e-5);
  CHECK(fit.c_r == Approx(-0.3 * 0.05 / (ptot * f)).epsilon(1e-5));
  // T consistency holds exactly by construction.
  CHECK(fit.t_tilde == -ptot * fit.c_r * f / fit.alpha_bar);
  CHECK(fit.fit_residual < 1e-10);
  CHECK_FALSE(fit.alpha_pinned);
}

TEST_CASE("T below the identifiability floor takes the single-exponential fallback") {
  const auto z = z_grid();
  const auto fit = fit_effective_params(z, synthesize(shape(0.05, 0.035, 5e-5), z), 1.0, 0.3);
  CHECK(fit.t_tilde == 0.0);
  CHECK(fit.c_r == 0.0);
  CHECK(fit.alpha_bar == fit.alpha);
  CHECK(fit.alpha == Approx(0.05).epsilon(1e-4));
}

TEST_CASE("round trip with negative T and no alpha hint") {
  const auto z = z_grid();
  const auto truth = shape(0.04, 0.07, -0.45);
  const auto fit = fit_effective_params(z, synthesize(truth, z), -3.0, 0.2);
  CHECK(test::relative_error(fit.alpha, 0.04) < 1e-5);
  CHECK(test::relative_error(fit.alpha_bar, 0.07) < 1e-5);
  CHECK(test::relative_error(fit.t_tilde, -0.45) < 1e-5);
}

TEST_CASE("pure exponential falls back to a single exponential") {
  const auto z = z_grid();
  const auto fit = fit_effective_params(z, synthesize(shape(0.046, 0.046, 0.0), z), 2.0, 0.3,
                                       {0.05});
  CHECK(std::abs(fit.alpha - 0.046) < 1e-6);
  CHECK(fit.t_tilde == 0.0);
  CHECK(fit.c_r == 0.0);
  CHECK(fit.alpha_bar == fit.alpha);
}

TEST_CASE("center channel uses the single-exponential fallback") {
  const auto z = z_grid();
  const auto y = synthesize(shape(0.045, 0.03, 0.15), z);
  const auto fit = fit_effective_params(z, y, 0.0, 0.3, {0.046});
  CHECK(fit.c_r == 0.0);
  CHECK(fit.t_tilde == 0.0);
  CHECK(fit.alpha > 0.0);
  CHECK(fit.alpha_bar == fit.alpha);
  CHECK(fit.fit_residual == Approx(profile_residual(z, y, fit)).epsilon(1e-9));
}

TEST_CASE("residual does not exceed the seed residual") {
  const auto z = z_grid();
  // A profile outside the model family: sigmoid-like ISRS depletion.
  std::vector<double> y;
  for (double zi : z) y.push_back(std::exp(-0.045 * zi) * (0.7 + 0.3 / (1.0 + std::pow(zi / 20.0, 2))));
  const double alpha0 = 0.045;
  const double t0 = y.back() * std::exp(alpha0 * z.back()) - 1.0;
  const auto seed = EffectiveParams::from_raman_slope(alpha0, alpha0, -t0 * alpha0 / (0.3 * 2.0),
                                                      0.3, 2.0);
  const auto fit = fit_effective_params(z, y, 2.0, 0.3, {alpha0});
  CHECK(fit.fit_residual <= profile_residual(z, y, seed));
  CHECK(fit.alpha > 0.0);
  CHECK(fit.alpha_bar > 0.0);
}

TEST_CASE("fit is deterministic") {
  const auto z = z_grid();
  std::vector<double> y;
  for (double zi : z) y.push_back(std::exp(-0.05 * zi) * (1.0 + 0.4 * std::tanh(zi / 25.0)));
  const auto a = fit_effective_params(z, y, -1.0, 0.3, {0.046});
  const auto b = fit_effective_params(z, y, -1.0, 0.3, {0.046});
  CHECK(a.alpha == b.alpha);
  CHECK(a.alpha_bar == b.alpha_bar);
  CHECK(a.c_r == b.c_r);
  CHECK(a.fit_residual == b.fit_residual);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("unphysical fits") {
  const auto z = z_grid();
  std::vector<double> growing;
  for (double zi : z) growing.push_back(std::exp(0.01 * zi));
  SUBCASE("without a known attenuation the fit fails") {
    try {
      (void)fit_effective_params(z, growing, 1.0, 0.3, {0.046});
      FAIL("expected FitError");
    } catch (const FitError& e) {
      CHECK(std::string(e.what()).find("not positive") != std::string::npos);
      CHECK(e.best().alpha <= 0.0);
    }
  }
  SUBCASE("with the fiber attenuation alpha is pinned") {
    const auto fit = fit_effective_params(z, growing, 1.0, 0.3, {0.046, true});
    CHECK(fit.alpha_pinned);
    CHECK(fit.alpha == 0.046);
    CHECK(fit.alpha_bar > 0.0);
  }
}

TEST_CASE("non-convergence carries the best parameters") {
  const auto z = z_grid();
  const auto y = synthesize(shape(0.05, 0.05, 0.3), z);
  FitOptions options;
  options.max_iterations = 1;
  try {
    (void)fit_effective_params(z, y, 1.0, 0.3, {0.03}, options);
    FAIL("expected FitError");
  } catch (const FitError& e) {
    CHECK(std::string(e.what()).find("converge") != std::string::npos);
    CHECK(e.best().fit_residual > 0.0);
  }
}

TEST_CASE("profile preconditions") {
  const auto z = z_grid();
  const auto y = synthesize(shape(0.05, 0.05, 0.3), z);
  const std::vector<double> short_z(z.begin(), z.begin() + 9);
  const std::vector<double> short_y(y.begin(), y.begin() + 9);
  CHECK_THROWS_AS(fit_effective_params(short_z, short_y, 1.0, 0.3), InputError);
  CHECK_THROWS_AS(fit_effective_params(z, short_y, 1.0, 0.3), InputError);
  auto bad = y;
  bad[50] = 0.0;
  CHECK_THROWS_AS(fit_effective_params(z, bad, 1.0, 0.3), InputError);
  auto shifted = z;
  shifted[0] = 0.1;
  CHECK_THROWS_AS(fit_effective_params(shifted, y, 1.0, 0.3), InputError);
}

TEST_CASE("fit_all without ISRS recovers the local attenuation") {
  const FiberProfile fiber({{185.0, 0.05}, {193.0, 0.042}, {201.0, 0.047}}, zero_raman_gain(),
                           Dispersion{}, 1.2, 80.0);
  const auto plan = test::uniform_plan(40, 0.35, 0.04, 1e-3);
  const auto evo = solve_raman(plan, fiber);
  const auto params = fit_all(evo, plan, &fiber);
  REQUIRE(params.size() == plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    CHECK(params[i].t_tilde == 0.0);
    CHECK(params[i].c_r == 0.0);
    CHECK(std::abs(params[i].alpha - fiber.attenuation(plan.absolute_frequency(i))) < 1e-6);
  }
}

TEST_CASE("fit_all recovers a linear gain slope") {
  const double slope = 0.0284;
  const auto fiber = test::flat_fiber(test::kAlpha02, triangular_raman_gain(slope, 40.0, 40.0));
  // Linear regime: the depletion common to all channels, second order in
  // P_tot C_r L_eff, stays small against the first-order term even at the
  // channels next to the reference.
  const auto plan = test::uniform_plan(21, 0.2, 0.04, 1e-3);
  const auto evo = solve_raman(plan, fiber);
  const auto params = fit_all(evo, plan, &fiber);
  int checked = 0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (params[i].t_tilde == 0.0) continue;
    ++checked;
    CHECK(std::abs(params[i].c_r - slope) < 0.1 * slope);
  }
  CHECK(checked == 20);
}

TEST_CASE("fit_all rejects mismatched inputs") {
  const auto fiber = test::flat_fiber(test::kAlpha02, zero_raman_gain());
  const auto plan = test::uniform_plan(4, 0.05, 0.04, 1e-3);
  const auto other = test::uniform_plan(5, 0.05, 0.04, 1e-3);
  const auto evo = solve_raman(plan, fiber);
  CHECK_THROWS_AS(fit_all(evo, other, &fiber), InputError);
}
