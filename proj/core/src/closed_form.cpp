#include "isrsgn/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "detail/compensated_sum.hpp"
#include "detail/parallel.hpp"
#include "isrsgn/error.hpp"

namespace isrsgn {

using std::numbers::pi;

namespace terms {

double t_coefficient(const EffectiveParams& p, double total_power_w, double frequency_thz) {
  const double v = p.alpha + p.alpha_bar - total_power_w * p.c_r * frequency_thz;
  return v * v;
}

double a_coefficient(const EffectiveParams& p) { return p.alpha + p.alpha_bar; }

double phi(const DispersionCoefficients& d, double f_i, double f_k, double span_length_km) {
  return -4.0 * pi * pi * (d.beta2 + pi * d.beta3 * (f_i + f_k)) * span_length_km;
}

double phi_self(const DispersionCoefficients& d, double f_i) {
  return 1.5 * pi * pi * (d.beta2 + 2.0 * pi * d.beta3 * f_i);
}

double phi_cross(const DispersionCoefficients& d, double f_i, double f_k) {
  return -2.0 * pi * pi * (f_k - f_i) * (d.beta2 + pi * d.beta3 * (f_i + f_k));
}

int n_tilde(int span_count) { return span_count == 1 ? 0 : span_count; }

}  // namespace terms

std::vector<double> NliResult::snr_nli_db() const {
  std::vector<double> out;
  out.reserve(channels.size());
  for (const auto& c : channels) out.push_back(c.snr_nli_db);
  return out;
}

namespace {

[[noreturn]] void fail_pair(std::size_t i, std::size_t k, const char* what) {
  std::ostringstream msg;
  msg << "closed-form: " << what << " for channel " << i << " with interferer " << k;
  throw NumericalError(msg.str());
}

}  // namespace

NliResult compute_nli(const ChannelPlan& plan, std::span<const EffectiveParams> params,
                      const LinkSpec& link, const NliOptions& options) {
  link.validate();
  const std::size_t n_ch = plan.size();
  if (params.size() != n_ch) {
    throw InputError("compute_nli: " + std::to_string(params.size()) + " parameter sets for " +
                     std::to_string(n_ch) + " channels");
  }
  for (std::size_t i = 0; i < n_ch; ++i) {
    if (!(params[i].alpha > 0.0) || !(params[i].alpha_bar > 0.0)) {
      throw InputError("compute_nli: channel " + std::to_string(i) +
                       " needs positive alpha and alpha_bar");
    }
  }

  const FiberProfile& fiber = link.fiber;
  const DispersionCoefficients disp{fiber.dispersion().beta2_at(plan.reference_frequency()),
                                    fiber.dispersion().coefficients.beta3};
  const double gamma2 = fiber.gamma() * fiber.gamma();
  const double length = fiber.span_length();
  const double p_tot = plan.total_power();
  const int n = link.span_count;
  const double n_spm = std::pow(static_cast<double>(n), 1.0 + link.coherence_epsilon);
  const int n_tilde = terms::n_tilde(n);

  NliResult result;
  result.channels.resize(n_ch);

  detail::parallel_for(n_ch, options.threads, [&](std::size_t i) {
    const Channel& ci = plan[i];
    const EffectiveParams& pi_ = params[i];
    const double fi = ci.center_frequency_thz;
    const double bi = ci.bandwidth_thz;

    // Self-channel term.
    const double a = pi_.alpha;
    const double ab = pi_.alpha_bar;
    const double big_a = terms::a_coefficient(pi_);
    const double t = terms::t_coefficient(pi_, p_tot, fi);
    const double phi_i = terms::phi_self(disp, fi);
    const double spm =
        4.0 / 9.0 * pi * gamma2 * ci.launch_power_w * ci.launch_power_w * n_spm /
        (bi * bi * phi_i * ab * (2.0 * a + ab)) *
        ((t - a * a) / a * std::asinh(phi_i * bi * bi / (pi * a)) +
         (big_a * big_a - t) / big_a * std::asinh(phi_i * bi * bi / (pi * big_a)));
    if (!std::isfinite(spm) || !(spm > 0.0)) fail_pair(i, i, "self-channel term is not positive and finite");

    detail::CompensatedSum xpm;
    detail::CompensatedSum correction;
    for (std::size_t k = 0; k < n_ch; ++k) {
      if (k == i) continue;
      const Channel& ck = plan[k];
      const EffectiveParams& pk = params[k];
      const double fk = ck.center_frequency_thz;
      const double bk = ck.bandwidth_thz;
      const double separation = 2.0 * std::abs(fk - fi);
      if (!(separation > bk)) fail_pair(i, k, "channels overlap");

      const double ak = pk.alpha;
      const double abk = pk.alpha_bar;
      const double big_ak = terms::a_coefficient(pk);
      const double tk = terms::t_coefficient(pk, p_tot, fk);
      const double phi_ik = terms::phi_cross(disp, fi, fk);
      const double scale = 32.0 / 27.0 * gamma2 * ck.launch_power_w * ck.launch_power_w / bk;

      const double bracket = (tk - ak * ak) / ak * std::atan(phi_ik * bi / ak) +
                             (big_ak * big_ak - tk) / big_ak * std::atan(phi_ik * bi / big_ak);
      const double base = scale * bracket / (phi_ik * abk * (2.0 * ak + abk));
      if (!std::isfinite(base)) fail_pair(i, k, "non-finite cross-channel term");

      const double phi_k = options.format_correction ? ck.excess_kurtosis : 0.0;
      const double weight = static_cast<double>(n) + 5.0 / 6.0 * phi_k;
      if (!(base > 0.0) || !(weight * base > 0.0)) {
        fail_pair(i, k, "cross-channel contribution is not positive");
      }
      xpm += static_cast<double>(n) * base;

      if (!options.format_correction) continue;
      double corr = 5.0 / 6.0 * phi_k * base;
      if (n_tilde != 0 && phi_k != 0.0) {
        const double phi_abs = std::abs(terms::phi(disp, fi, fk, length));
        const double log_bracket =
            (separation - bk) * std::log1p(-2.0 * bk / (separation + bk)) + 2.0 * bk;
        corr += scale * 5.0 / 3.0 * phi_k * pi * n_tilde * tk /
                (phi_abs * bk * bk * ak * ak * big_ak * big_ak) * log_bracket;
      }
      if (!std::isfinite(corr)) fail_pair(i, k, "non-finite kurtosis correction");
      correction += corr;
    }

    NliChannel& out = result.channels[i];
    out.spm_inverse = spm;
    out.xpm_inverse = xpm.value();
    out.kurtosis_correction_inverse = correction.value();
    const double total = out.total_inverse();
    if (!(total > 0.0) || !std::isfinite(total)) fail_pair(i, i, "total NLI is not positive");
    out.snr_nli_db = -10.0 * std::log10(total);
  });
  return result;
}

std::vector<double> total_snr(const NliResult& nli, const LinkSpec& link) {
  const std::size_t n_ch = nli.channels.size();
  std::vector<double> out(n_ch);
  for (std::size_t i = 0; i < n_ch; ++i) {
    double inverse = nli.channels[i].total_inverse();
    if (link.snr_ase_db) inverse += std::pow(10.0, -link.snr_ase_db->at(i, n_ch) / 10.0);
    if (link.snr_trx_db) inverse += std::pow(10.0, -link.snr_trx_db->at(i, n_ch) / 10.0);
    out[i] = -10.0 * std::log10(inverse);
  }
  return out;
}

}  // namespace isrsgn
