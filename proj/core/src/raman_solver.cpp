#include "isrsgn/raman_solver.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "isrsgn/error.hpp"

namespace isrsgn {

PowerEvolution::PowerEvolution(std::vector<double> z_km, std::size_t channel_count)
    : z_(std::move(z_km)), channels_(channel_count), powers_(z_.size() * channel_count, 0.0) {}

std::span<const double> PowerEvolution::channel(std::size_t i) const {
  return std::span<const double>(powers_).subspan(i * z_.size(), z_.size());
}

std::span<double> PowerEvolution::channel(std::size_t i) {
  return std::span<double>(powers_).subspan(i * z_.size(), z_.size());
}

std::vector<double> PowerEvolution::normalized(std::size_t i) const {
  const auto p = channel(i);
  std::vector<double> out(p.begin(), p.end());
  const double p0 = p.front();
  for (auto& v : out) v /= p0;
  return out;
}

double PowerEvolution::total_power(std::size_t sample) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < channels_; ++i) sum += power(i, sample);
  return sum;
}

namespace {

// Right-hand side of the power equations with the gain matrix precomputed
// once, row-major: gain[i * n + k] = g(f_k - f_i).
class RamanSystem {
public:
  RamanSystem(const ChannelPlan& plan, const FiberProfile& fiber)
      : n_(plan.size()), loss_(n_), gain_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double f_abs = plan.absolute_frequency(i);
      if (!fiber.covers(f_abs)) {
        std::ostringstream msg;
        msg << "channel " << i << " at " << f_abs << " THz lies outside the attenuation table";
        throw InputError(msg.str());
      }
      loss_[i] = fiber.attenuation(f_abs);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const double fi = plan[i].center_frequency_thz;
      for (std::size_t k = 0; k < n_; ++k) {
        gain_[i * n_ + k] = (i == k) ? 0.0 : fiber.raman_gain(plan[k].center_frequency_thz - fi);
      }
    }
  }

  std::size_t size() const { return n_; }

  void derivative(const std::vector<double>& p, std::vector<double>& dp) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = &gain_[i * n_];
      // Four partial sums keep the loop pipelined without reassociation flags.
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      std::size_t k = 0;
      for (; k + 4 <= n_; k += 4) {
        s0 += row[k] * p[k];
        s1 += row[k + 1] * p[k + 1];
        s2 += row[k + 2] * p[k + 2];
        s3 += row[k + 3] * p[k + 3];
      }
      for (; k < n_; ++k) s0 += row[k] * p[k];
      dp[i] = p[i] * ((s0 + s1) + (s2 + s3) - loss_[i]);
    }
  }

private:
  std::size_t n_;
  std::vector<double> loss_;
  std::vector<double> gain_;
};

}  // namespace

PowerEvolution solve_raman(const ChannelPlan& plan, const FiberProfile& fiber, const ZGrid& grid) {
  if (plan.size() == 0) throw InputError("solve_raman: empty plan");
  if (!(grid.step_km > 0.0) || !(grid.step_km <= grid.max_step_km)) {
    throw InputError("solve_raman: step must lie in (0, " + std::to_string(grid.max_step_km) + "] km");
  }
  if (grid.output_samples < 2) throw InputError("solve_raman: need at least two output samples");

  const RamanSystem system(plan, fiber);
  const std::size_t n = system.size();
  const double length = fiber.span_length();
  const std::size_t intervals = grid.output_samples - 1;
  const auto steps_per_interval =
      static_cast<std::size_t>(std::ceil(length / static_cast<double>(intervals) / grid.step_km - 1e-12));
  const std::size_t total_steps = intervals * std::max<std::size_t>(steps_per_interval, 1);
  const double h = length / static_cast<double>(total_steps);

  std::vector<double> z(grid.output_samples);
  for (std::size_t s = 0; s < grid.output_samples; ++s) {
    z[s] = length * static_cast<double>(s) / static_cast<double>(intervals);
  }
  PowerEvolution out(std::move(z), n);
  out.integration_step_km = h;
  out.integration_steps = total_steps;

  std::vector<double> p(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = plan[i].launch_power_w;
    out.channel(i)[0] = p[i];
  }

  const std::size_t per_sample = total_steps / intervals;
  for (std::size_t step = 0; step < total_steps; ++step) {
    system.derivative(p, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
    system.derivative(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
    system.derivative(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + h * k3[i];
    system.derivative(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(p[i]) || !(p[i] > 0.0)) {
        std::ostringstream msg;
        msg << "power of channel " << i << " became " << p[i] << " at z = "
            << h * static_cast<double>(step + 1) << " km; reduce the step size";
        throw NumericalError(msg.str());
      }
    }
    if ((step + 1) % per_sample == 0) {
      const std::size_t sample = (step + 1) / per_sample;
      for (std::size_t i = 0; i < n; ++i) out.channel(i)[sample] = p[i];
    }
  }
  return out;
}

}  // namespace isrsgn
