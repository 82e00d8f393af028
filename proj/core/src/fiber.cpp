#include "isrsgn/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isrsgn/error.hpp"

namespace isrsgn {
namespace {

// Relative slack on the attenuation table range so that channels computed
// from rounded wavelengths still hit the edge rows.
constexpr double kRangeSlack = 1e-9;

void validate_attenuation(const std::vector<AttenuationSample>& table) {
  if (table.empty()) throw InputError("attenuation table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& s = table[i];
    if (!std::isfinite(s.frequency_thz) || !(s.frequency_thz > 0.0)) {
      throw InputError("attenuation table row " + std::to_string(i) + ": invalid frequency");
    }
    if (!std::isfinite(s.loss_per_km) || !(s.loss_per_km > 0.0)) {
      throw InputError("attenuation table row " + std::to_string(i) + ": loss must be positive");
    }
    if (i > 0 && !(s.frequency_thz > table[i - 1].frequency_thz)) {
      throw InputError("attenuation table row " + std::to_string(i) +
                       ": frequencies must be strictly increasing");
    }
  }
}

std::vector<RamanGainSample> normalize_raman(std::vector<RamanGainSample> table) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& s = table[i];
    if (!std::isfinite(s.shift_thz) || s.shift_thz < 0.0) {
      throw InputError("raman table row " + std::to_string(i) + ": shift must be >= 0");
    }
    if (!std::isfinite(s.gain_per_w_km)) {
      throw InputError("raman table row " + std::to_string(i) + ": gain is not finite");
    }
    if (i > 0 && !(s.shift_thz > table[i - 1].shift_thz)) {
      throw InputError("raman table row " + std::to_string(i) +
                       ": shifts must be strictly increasing");
    }
  }
  if (table.empty() || table.front().shift_thz > 0.0) {
    table.insert(table.begin(), RamanGainSample{0.0, 0.0});
  } else if (table.front().gain_per_w_km != 0.0) {
    throw InputError("raman table: gain at zero shift must be zero");
  }
  return table;
}

}  // namespace

FiberProfile::FiberProfile(std::vector<AttenuationSample> attenuation,
                           std::vector<RamanGainSample> raman_gain, Dispersion dispersion,
                           double gamma_per_w_km, double span_length_km)
    : attenuation_(std::move(attenuation)),
      raman_gain_(normalize_raman(std::move(raman_gain))),
      dispersion_(dispersion),
      gamma_(gamma_per_w_km),
      span_length_(span_length_km) {
  validate_attenuation(attenuation_);
  if (!std::isfinite(span_length_) || !(span_length_ > 0.0)) {
    throw InputError("span length must be positive");
  }
  if (!std::isfinite(gamma_) || gamma_ < 0.0) {
    throw InputError("nonlinear coefficient must be non-negative");
  }
  if (!std::isfinite(dispersion_.coefficients.beta2) ||
      !std::isfinite(dispersion_.coefficients.beta3) ||
      !std::isfinite(dispersion_.reference_frequency_thz)) {
    throw InputError("dispersion parameters must be finite");
  }
}

bool FiberProfile::covers(double f) const {
  if (attenuation_.size() == 1) return true;
  const double lo = attenuation_.front().frequency_thz;
  const double hi = attenuation_.back().frequency_thz;
  const double slack = kRangeSlack * hi;
  return f >= lo - slack && f <= hi + slack;
}

double FiberProfile::attenuation(double f) const {
  if (attenuation_.size() == 1) return attenuation_.front().loss_per_km;
  if (!covers(f)) {
    throw InputError("frequency " + std::to_string(f) +
                     " THz lies outside the attenuation table");
  }
  auto upper = std::upper_bound(attenuation_.begin(), attenuation_.end(), f,
                                [](double x, const AttenuationSample& s) { return x < s.frequency_thz; });
  if (upper == attenuation_.begin()) return attenuation_.front().loss_per_km;
  if (upper == attenuation_.end()) return attenuation_.back().loss_per_km;
  const auto& a = *(upper - 1);
  const auto& b = *upper;
  const double t = (f - a.frequency_thz) / (b.frequency_thz - a.frequency_thz);
  return a.loss_per_km + t * (b.loss_per_km - a.loss_per_km);
}

double FiberProfile::raman_gain(double shift) const {
  const double mag = std::abs(shift);
  if (mag > raman_gain_.back().shift_thz) return 0.0;
  auto upper = std::upper_bound(raman_gain_.begin(), raman_gain_.end(), mag,
                                [](double x, const RamanGainSample& s) { return x < s.shift_thz; });
  double g;
  if (upper == raman_gain_.end()) {
    g = raman_gain_.back().gain_per_w_km;
  } else {
    const auto& a = *(upper - 1);
    const auto& b = *upper;
    const double t = (mag - a.shift_thz) / (b.shift_thz - a.shift_thz);
    g = a.gain_per_w_km + t * (b.gain_per_w_km - a.gain_per_w_km);
  }
  return shift < 0.0 ? -g : g;
}

double FiberProfile::max_raman_gain() const {
  double m = 0.0;
  for (const auto& s : raman_gain_) m = std::max(m, std::abs(s.gain_per_w_km));
  return m;
}

FiberProfile FiberProfile::with_raman_gain(std::vector<RamanGainSample> raman_gain) const {
  return FiberProfile(attenuation_, std::move(raman_gain), dispersion_, gamma_, span_length_);
}

FiberProfile FiberProfile::with_attenuation(std::vector<AttenuationSample> attenuation) const {
  return FiberProfile(std::move(attenuation), raman_gain_, dispersion_, gamma_, span_length_);
}

FiberProfile FiberProfile::with_dispersion(Dispersion dispersion) const {
  return FiberProfile(attenuation_, raman_gain_, dispersion, gamma_, span_length_);
}

FiberProfile FiberProfile::with_span_length(double span_length_km) const {
  return FiberProfile(attenuation_, raman_gain_, dispersion_, gamma_, span_length_km);
}

std::vector<RamanGainSample> zero_raman_gain() { return {{0.0, 0.0}}; }

std::vector<RamanGainSample> triangular_raman_gain(double slope, double peak_shift,
                                                   double cutoff_shift) {
  if (!(peak_shift > 0.0) || cutoff_shift < peak_shift) {
    throw InputError("triangular gain: need 0 < peak_shift <= cutoff_shift");
  }
  std::vector<RamanGainSample> table{{0.0, 0.0}, {peak_shift, slope * peak_shift}};
  if (cutoff_shift > peak_shift) table.push_back({cutoff_shift, 0.0});
  return table;
}

}  // namespace isrsgn
