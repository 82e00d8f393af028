#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace isrsgn {

struct ConstellationPoint {
  std::complex<double> symbol;
  double probability;
};

/// Excess kurtosis E|x|^4 / (E|x|^2)^2 - 2 of a discrete complex
/// constellation. Probabilities are renormalized when they sum to one within
/// 1e-6; otherwise, or for an empty or all-zero constellation, InputError.
double excess_kurtosis(const std::vector<ConstellationPoint>& constellation);

/// Equiprobable points.
std::vector<ConstellationPoint> uniform_constellation(
    const std::vector<std::complex<double>>& symbols);

/// Square M-QAM on the odd-integer lattice, M a power of four (4 is QPSK).
std::vector<ConstellationPoint> square_qam(int order);

/// A modulation format as consumed by the closed-form model: a label and its
/// excess kurtosis.
struct ModulationFormat {
  std::string name;
  double excess_kurtosis = 0.0;

  static ModulationFormat gaussian();
  /// Derived from a point list via excess_kurtosis().
  static ModulationFormat from_constellation(std::string name,
                                             const std::vector<ConstellationPoint>& points);
};

/// Named formats: gaussian, qpsk, 16qam, 64qam, 256qam (case-insensitive,
/// "-" and "_" ignored). Throws InputError for an unknown name.
ModulationFormat named_format(std::string_view name);

}  // namespace isrsgn
