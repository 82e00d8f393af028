#pragma once

#include <cmath>
#include <vector>

#include "isrsgn/channel_plan.hpp"
#include "isrsgn/fiber.hpp"
#include "isrsgn/units.hpp"

namespace isrsgn::test {

inline constexpr double kAlpha02 = 0.2 * kDbPerKmToPerKm;

/// Fiber with frequency-flat loss over 150-250 THz.
inline FiberProfile flat_fiber(double loss_per_km, std::vector<RamanGainSample> gain,
                               Dispersion dispersion = {{-22.6, 0.0}, 0.0},
                               double span_km = 80.0) {
  return FiberProfile({{150.0, loss_per_km}, {250.0, loss_per_km}}, std::move(gain), dispersion,
                      1.2, span_km);
}

/// n equally spaced channels centered on the reference frequency.
inline ChannelPlan uniform_plan(int n, double spacing_thz, double bandwidth_thz, double power_w,
                                double reference_thz = 193.0, double kurtosis = 0.0) {
  std::vector<Channel> channels;
  for (int i = 0; i < n; ++i) {
    const double f = (i - 0.5 * (n - 1)) * spacing_thz;
    channels.push_back({f, bandwidth_thz, power_w, kurtosis});
  }
  return ChannelPlan(std::move(channels), reference_thz);
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace isrsgn::test
