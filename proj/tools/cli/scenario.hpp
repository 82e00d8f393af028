#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isrsgn/channel_plan.hpp"
#include "isrsgn/link_engine.hpp"
#include "isrsgn/link_spec.hpp"

namespace isrsgn::cli {

/// A fully loaded scenario: every referenced file has been read and
/// validated.
struct Scenario {
  std::string name;
  std::filesystem::path attenuation_path;
  std::filesystem::path raman_path;
  FiberProfile fiber;
  std::vector<BandSegment> segments{};
  std::optional<double> reference_frequency_thz{};
  int span_count = 1;
  double coherence_epsilon = 0.0;
  std::optional<SnrContribution> snr_ase_db{};
  std::optional<SnrContribution> snr_trx_db{};
  ZGrid grid{};
  std::filesystem::path output_dir = "out";
  bool plot = false;
  bool dump_fits = false;

  ChannelPlan plan() const { return build_channel_plan(segments, reference_frequency_thz); }
  LinkSpec link() const;
};

/// Parses scenario JSON. Relative file paths resolve against base_dir.
/// Throws InputError (naming the key or path) on any problem.
Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

/// A named format (gaussian, qpsk, 16qam, 64qam, 256qam) or the path of a
/// constellation CSV with columns re,im and optional probability.
ModulationFormat resolve_format(const std::string& spec, const std::filesystem::path& base_dir);

/// Constellation CSV: header "re,im" or "re,im,probability". Missing
/// probabilities mean equiprobable points.
std::vector<ConstellationPoint> parse_constellation_csv(const std::string& text,
                                                        const std::string& source);

}  // namespace isrsgn::cli
