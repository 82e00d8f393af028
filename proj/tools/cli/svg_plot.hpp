#pragma once

#include <string>
#include <vector>

#include "cli/results.hpp"

namespace isrsgn::cli {

/// Static SVG of SNR_NLI against wavelength, one marker series per entry.
/// Throws InputError when no series has points.
std::string render_snr_plot(const std::vector<ResultSeries>& series, const std::string& title);

}  // namespace isrsgn::cli
