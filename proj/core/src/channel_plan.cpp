#include "isrsgn/channel_plan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isrsgn/error.hpp"
#include "isrsgn/units.hpp"

namespace isrsgn {
namespace {

// Adjacent channels packed at exactly (B_i + B_k)/2 must not be rejected
// because of rounding in the frequency arithmetic.
constexpr double kOverlapSlackThz = 1e-9;

}  // namespace

ChannelPlan::ChannelPlan(std::vector<Channel> channels, double reference_frequency_thz)
    : channels_(std::move(channels)), reference_frequency_(reference_frequency_thz), total_power_(0.0) {
  if (channels_.empty()) throw InputError("channel plan is empty");
  if (!std::isfinite(reference_frequency_) || !(reference_frequency_ > 0.0)) {
    throw InputError("reference frequency must be positive");
  }
  std::stable_sort(channels_.begin(), channels_.end(), [](const Channel& a, const Channel& b) {
    return a.center_frequency_thz < b.center_frequency_thz;
  });
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    const auto& c = channels_[i];
    const std::string where = "channel " + std::to_string(i);
    if (!std::isfinite(c.center_frequency_thz)) throw InputError(where + ": frequency not finite");
    if (!(c.bandwidth_thz > 0.0) || !std::isfinite(c.bandwidth_thz)) {
      throw InputError(where + ": bandwidth must be positive");
    }
    if (!(c.launch_power_w > 0.0) || !std::isfinite(c.launch_power_w)) {
      throw InputError(where + ": launch power must be positive");
    }
    if (!(c.excess_kurtosis >= -2.0 && c.excess_kurtosis <= 0.0)) {
      throw InputError(where + ": excess kurtosis outside [-2, 0]");
    }
    if (i > 0) {
      const auto& prev = channels_[i - 1];
      const double gap = c.center_frequency_thz - prev.center_frequency_thz;
      if (gap + kOverlapSlackThz < 0.5 * (c.bandwidth_thz + prev.bandwidth_thz)) {
        throw InputError("channels " + std::to_string(i - 1) + " and " + std::to_string(i) +
                         " overlap");
      }
    }
    total_power_ += c.launch_power_w;
  }
}

double ChannelPlan::absolute_frequency(std::size_t i) const {
  return reference_frequency_ + channels_.at(i).center_frequency_thz;
}

double ChannelPlan::wavelength_nm(std::size_t i) const {
  return thz_to_wavelength_nm(absolute_frequency(i));
}

ChannelPlan ChannelPlan::scaled_power(double factor) const {
  auto copy = channels_;
  for (auto& c : copy) c.launch_power_w *= factor;
  return ChannelPlan(std::move(copy), reference_frequency_);
}

ChannelPlan ChannelPlan::with_format(const ModulationFormat& format) const {
  auto copy = channels_;
  for (auto& c : copy) c.excess_kurtosis = format.excess_kurtosis;
  return ChannelPlan(std::move(copy), reference_frequency_);
}

ChannelPlan build_channel_plan(const std::vector<BandSegment>& segments,
                               std::optional<double> reference_frequency_thz) {
  if (segments.empty()) throw InputError("no band segments given");
  struct Absolute {
    double frequency;
    Channel channel;
  };
  std::vector<Absolute> expanded;
  for (const auto& seg : segments) {
    const std::string where = "segment '" + seg.name + "'";
    if (seg.channel_count < 1) throw InputError(where + ": channel count must be >= 1");
    if (!(seg.start_frequency_thz > 0.0)) throw InputError(where + ": start frequency must be positive");
    if (!(seg.symbol_rate_thz > 0.0)) throw InputError(where + ": symbol rate must be positive");
    if (seg.channel_count > 1 && !(seg.spacing_thz > 0.0)) {
      throw InputError(where + ": spacing must be positive");
    }
    for (int k = 0; k < seg.channel_count; ++k) {
      const double f = seg.start_frequency_thz + k * seg.spacing_thz;
      expanded.push_back({f, Channel{0.0, seg.symbol_rate_thz, seg.launch_power_w,
                                     seg.format.excess_kurtosis}});
    }
  }
  // Order by absolute frequency so the result does not depend on segment order.
  std::sort(expanded.begin(), expanded.end(),
            [](const Absolute& a, const Absolute& b) { return a.frequency < b.frequency; });
  const double reference =
      reference_frequency_thz.value_or(0.5 * (expanded.front().frequency + expanded.back().frequency));
  std::vector<Channel> channels;
  channels.reserve(expanded.size());
  for (auto& e : expanded) {
    e.channel.center_frequency_thz = e.frequency - reference;
    channels.push_back(e.channel);
  }
  return ChannelPlan(std::move(channels), reference);
}

}  // namespace isrsgn
