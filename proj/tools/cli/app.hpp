#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace isrsgn::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kNumericalFailure = 2 };

struct RunOptions {
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::string> format;
  std::optional<int> spans;
  std::optional<double> epsilon;
  bool plot = false;
  bool dump_fits = false;
  std::optional<std::filesystem::path> overlay;  // second results CSV drawn on the plot
};

/// Loads the scenario, evaluates the link and writes results.csv,
/// manifest.json and optionally snr.svg and fits.csv into the output
/// directory. Errors are reported on err with their stage.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace isrsgn::cli
