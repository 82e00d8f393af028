#include "isrsgn/modulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "isrsgn/error.hpp"

namespace isrsgn {

double excess_kurtosis(const std::vector<ConstellationPoint>& constellation) {
  if (constellation.empty()) throw InputError("excess_kurtosis: empty constellation");
  double total_probability = 0.0;
  for (const auto& p : constellation) {
    if (!(p.probability >= 0.0) || !std::isfinite(std::abs(p.symbol))) {
      throw InputError("excess_kurtosis: invalid point or probability");
    }
    total_probability += p.probability;
  }
  if (std::abs(total_probability - 1.0) > 1e-6) {
    throw InputError("excess_kurtosis: probabilities must sum to one");
  }
  double m2 = 0.0;
  double m4 = 0.0;
  for (const auto& p : constellation) {
    const double w = p.probability / total_probability;
    const double e = std::norm(p.symbol);
    m2 += w * e;
    m4 += w * e * e;
  }
  if (!(m2 > 0.0)) throw InputError("excess_kurtosis: constellation has zero power");
  return m4 / (m2 * m2) - 2.0;
}

std::vector<ConstellationPoint> uniform_constellation(
    const std::vector<std::complex<double>>& symbols) {
  std::vector<ConstellationPoint> out;
  out.reserve(symbols.size());
  const double p = symbols.empty() ? 0.0 : 1.0 / static_cast<double>(symbols.size());
  for (const auto& s : symbols) out.push_back({s, p});
  return out;
}

std::vector<ConstellationPoint> square_qam(int order) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
  if (order < 4 || side * side != order || (side & (side - 1)) != 0) {
    throw InputError("square_qam: order must be a power of four");
  }
  std::vector<std::complex<double>> symbols;
  symbols.reserve(static_cast<std::size_t>(order));
  for (int i = 0; i < side; ++i) {
    for (int q = 0; q < side; ++q) {
      symbols.emplace_back(2.0 * i - (side - 1), 2.0 * q - (side - 1));
    }
  }
  return uniform_constellation(symbols);
}

ModulationFormat ModulationFormat::gaussian() { return {"gaussian", 0.0}; }

ModulationFormat ModulationFormat::from_constellation(
    std::string name, const std::vector<ConstellationPoint>& points) {
  return {std::move(name), ::isrsgn::excess_kurtosis(points)};
}

ModulationFormat named_format(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "gaussian" || key == "gauss") return ModulationFormat::gaussian();
  if (key == "qpsk" || key == "4qam") return ModulationFormat::from_constellation("qpsk", square_qam(4));
  if (key == "16qam") return ModulationFormat::from_constellation("16qam", square_qam(16));
  if (key == "64qam") return ModulationFormat::from_constellation("64qam", square_qam(64));
  if (key == "256qam") return ModulationFormat::from_constellation("256qam", square_qam(256));
  throw InputError("unknown modulation format '" + std::string(name) + "'");
}

}  // namespace isrsgn
