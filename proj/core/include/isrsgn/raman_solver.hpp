#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isrsgn/channel_plan.hpp"
#include "isrsgn/fiber.hpp"

namespace isrsgn {

/// Integration and output sampling of one span.
struct ZGrid {
  double step_km = 0.05;        // requested maximum RK4 step
  double max_step_km = 1.0;     // upper bound accepted for step_km
  std::size_t output_samples = 201;
};

/// Sampled per-channel power along one span.
class PowerEvolution {
public:
  PowerEvolution(std::vector<double> z_km, std::size_t channel_count);

  std::span<const double> z() const { return z_; }
  std::size_t channel_count() const { return channels_; }
  std::size_t sample_count() const { return z_.size(); }

  std::span<const double> channel(std::size_t i) const;
  std::span<double> channel(std::size_t i);
  double power(std::size_t i, std::size_t sample) const { return channel(i)[sample]; }

  /// P_i(z) / P_i(0).
  std::vector<double> normalized(std::size_t i) const;
  double total_power(std::size_t sample) const;

  double integration_step_km = 0.0;  // step actually used
  std::size_t integration_steps = 0;

private:
  std::vector<double> z_;
  std::size_t channels_;
  std::vector<double> powers_;  // channel-major
};

/// Integrates
///   dP_i/dz = -alpha(f_i) P_i + P_i sum_{k != i} g(f_k - f_i) P_k
/// over one span with fixed-step classical RK4. The step is shrunk so that
/// an integer number of steps lands on every output sample.
///
/// Throws InputError for an empty plan, a step outside (0, max_step_km], fewer
/// than two output samples, or a channel outside the attenuation table.
/// Throws NumericalError (naming z) when the state becomes non-finite or
/// non-positive.
PowerEvolution solve_raman(const ChannelPlan& plan, const FiberProfile& fiber,
                           const ZGrid& grid = {});

}  // namespace isrsgn
