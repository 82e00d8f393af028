#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isrsgn/modulation.hpp"

namespace isrsgn {

struct Channel {
  double center_frequency_thz;  // relative to the plan reference
  double bandwidth_thz;
  double launch_power_w;
  double excess_kurtosis;
};

/// Sorted, pairwise non-overlapping WDM channels. Total power is the sum of
/// launch powers, recomputed on construction.
class ChannelPlan {
public:
  /// Sorts the channels by frequency and validates bandwidth > 0, power > 0,
  /// kurtosis in [-2, 0] and |f_k - f_i| >= (B_i + B_k)/2. Throws InputError.
  ChannelPlan(std::vector<Channel> channels, double reference_frequency_thz);

  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  const Channel& operator[](std::size_t i) const { return channels_[i]; }

  double reference_frequency() const { return reference_frequency_; }
  double total_power() const { return total_power_; }
  double absolute_frequency(std::size_t i) const;
  double wavelength_nm(std::size_t i) const;

  /// Same channels with every launch power multiplied by factor.
  ChannelPlan scaled_power(double factor) const;
  /// Same channels with every channel's excess kurtosis replaced.
  ChannelPlan with_format(const ModulationFormat& format) const;

private:
  std::vector<Channel> channels_;
  double reference_frequency_;
  double total_power_;
};

/// A contiguous block of identical channels. Frequencies are absolute; the
/// first channel sits at start_frequency_thz and the rest follow upward at
/// spacing_thz.
struct BandSegment {
  std::string name;
  double start_frequency_thz;
  int channel_count;
  double symbol_rate_thz;  // channel bandwidth B
  double spacing_thz;
  double launch_power_w;
  ModulationFormat format;
};

/// Expands segments into a ChannelPlan. The reference frequency defaults to
/// the midpoint of the lowest and highest channel frequencies. Throws
/// InputError on overlap or malformed segments.
ChannelPlan build_channel_plan(const std::vector<BandSegment>& segments,
                               std::optional<double> reference_frequency_thz = std::nullopt);

}  // namespace isrsgn
