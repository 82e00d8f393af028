#include "isrsgn/link_engine.hpp"

#include <chrono>

#include "isrsgn/error.hpp"

namespace isrsgn {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError& e) {
    throw StageError(stage, e.what(), false);
  } catch (const NumericalError& e) {
    throw StageError(stage, e.what(), true);
  }
}

struct Fitted {
  std::vector<EffectiveParams> params;
  std::optional<PowerEvolution> evolution;
};

Fitted solve_and_fit(const ChannelPlan& plan, const LinkSpec& link, const LinkOptions& options,
                     LinkResult& result) {
  auto t0 = Clock::now();
  auto evolution = run_stage("raman", [&] { return solve_raman(plan, link.fiber, options.grid); });
  result.timings.raman_ms = elapsed_ms(t0);
  ++result.raman_solves;

  t0 = Clock::now();
  auto params = run_stage("fit", [&] { return fit_all(evolution, plan, &link.fiber, options.fit); });
  result.timings.fit_ms = elapsed_ms(t0);
  ++result.fit_passes;

  Fitted out{std::move(params), std::nullopt};
  if (options.keep_evolution) out.evolution = std::move(evolution);
  return out;
}

void finish(const ChannelPlan& plan, const LinkSpec& link, const LinkOptions& options,
            const std::vector<EffectiveParams>& params, LinkResult& result) {
  const auto t0 = Clock::now();
  const auto nli = run_stage("closed-form", [&] { return compute_nli(plan, params, link, options.nli); });
  const bool has_noise = link.snr_ase_db.has_value() || link.snr_trx_db.has_value();
  std::vector<double> tot;
  if (has_noise) tot = run_stage("closed-form", [&] { return total_snr(nli, link); });
  result.timings.closed_form_ms = elapsed_ms(t0);

  result.channels.reserve(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    ChannelResult c{plan.absolute_frequency(i), plan.wavelength_nm(i), nli.channels[i].snr_nli_db,
                    std::nullopt, nli.channels[i], params[i]};
    if (has_noise) c.snr_tot_db = tot[i];
    result.channels.push_back(c);
  }
}

}  // namespace

LinkResult evaluate_link(const ChannelPlan& plan, const LinkSpec& link, const LinkOptions& options) {
  const auto start = Clock::now();
  run_stage("config", [&] { link.validate(); });
  LinkResult result;
  auto fitted = solve_and_fit(plan, link, options, result);
  finish(plan, link, options, fitted.params, result);
  result.evolution = std::move(fitted.evolution);
  result.timings.total_ms = elapsed_ms(start);
  return result;
}

struct LinkEngine::Entry {
  std::vector<double> frequencies;
  std::vector<double> bandwidths;
  std::vector<double> powers;
  double reference;
  std::vector<AttenuationSample> attenuation;
  std::vector<RamanGainSample> raman;
  double span_length;
  std::vector<EffectiveParams> params;

  static Entry key(const ChannelPlan& plan, const FiberProfile& fiber) {
    Entry e;
    for (const auto& c : plan.channels()) {
      e.frequencies.push_back(c.center_frequency_thz);
      e.bandwidths.push_back(c.bandwidth_thz);
      e.powers.push_back(c.launch_power_w);
    }
    e.reference = plan.reference_frequency();
    const auto att = fiber.attenuation_table();
    const auto ram = fiber.raman_gain_table();
    e.attenuation.assign(att.begin(), att.end());
    e.raman.assign(ram.begin(), ram.end());
    e.span_length = fiber.span_length();
    return e;
  }

  bool matches(const Entry& other) const {
    return frequencies == other.frequencies && bandwidths == other.bandwidths &&
           powers == other.powers && reference == other.reference &&
           attenuation == other.attenuation && raman == other.raman &&
           span_length == other.span_length;
  }
};

LinkEngine::LinkEngine(LinkOptions options) : options_(std::move(options)) {}

LinkResult LinkEngine::evaluate(const ChannelPlan& plan, const LinkSpec& link) {
  const auto start = Clock::now();
  run_stage("config", [&] { link.validate(); });
  Entry probe = Entry::key(plan, link.fiber);

  std::shared_ptr<const Entry> hit;
  {
    std::lock_guard lock(mutex_);
    for (const auto& e : cache_) {
      if (e->matches(probe)) {
        hit = e;
        break;
      }
    }
  }

  LinkResult result;
  if (!hit) {
    auto fitted = solve_and_fit(plan, link, options_, result);
    probe.params = std::move(fitted.params);
    result.evolution = std::move(fitted.evolution);
    auto entry = std::make_shared<const Entry>(std::move(probe));
    {
      std::lock_guard lock(mutex_);
      cache_.push_back(entry);
    }
    hit = entry;
  }
  finish(plan, link, options_, hit->params, result);
  result.timings.total_ms = elapsed_ms(start);
  return result;
}

std::size_t LinkEngine::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

void LinkEngine::clear_cache() {
  std::lock_guard lock(mutex_);
  cache_.clear();
}

}  // namespace isrsgn
