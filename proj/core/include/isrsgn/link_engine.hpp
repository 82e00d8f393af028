#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "isrsgn/channel_plan.hpp"
#include "isrsgn/closed_form.hpp"
#include "isrsgn/link_spec.hpp"
#include "isrsgn/profile_fit.hpp"
#include "isrsgn/raman_solver.hpp"

namespace isrsgn {

struct LinkOptions {
  ZGrid grid;
  FitOptions fit;
  NliOptions nli;
  /// Keep the span-1 power evolution in the result (for fit dumps).
  bool keep_evolution = false;
};

struct StageTimings {
  double raman_ms = 0.0;
  double fit_ms = 0.0;
  double closed_form_ms = 0.0;
  double total_ms = 0.0;
};

struct ChannelResult {
  double frequency_thz;  // absolute
  double wavelength_nm;
  double snr_nli_db;
  std::optional<double> snr_tot_db;
  NliChannel nli;
  EffectiveParams params;
};

struct LinkResult {
  std::vector<ChannelResult> channels;
  StageTimings timings;
  /// Number of Raman solves and fit passes performed by this evaluation
  /// (zero when served from the cache).
  int raman_solves = 0;
  int fit_passes = 0;
  std::optional<PowerEvolution> evolution;
};

/// Raised by evaluate_link; prefixes the failing stage ("raman", "fit",
/// "closed-form") to the message and keeps the original category.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string& what, bool numerical)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), numerical_(numerical) {}
  const std::string& stage() const { return stage_; }
  bool numerical() const { return numerical_; }

private:
  std::string stage_;
  bool numerical_;
};

/// Runs Raman solve (span 1), per-channel fit, closed-form NLI over all spans
/// and the total-SNR combination.
LinkResult evaluate_link(const ChannelPlan& plan, const LinkSpec& link,
                         const LinkOptions& options = {});

/// evaluate_link with the fitted parameters memoized on (plan frequencies,
/// bandwidths, powers, fiber, grid, fit options), so sweeps over format, span
/// count or epsilon skip the Raman and fit stages. Thread-safe.
class LinkEngine {
public:
  explicit LinkEngine(LinkOptions options = {});

  LinkResult evaluate(const ChannelPlan& plan, const LinkSpec& link);

  std::size_t cache_size() const;
  void clear_cache();

private:
  struct Entry;
  LinkOptions options_;
  mutable std::mutex mutex_;
  std::vector<std::shared_ptr<const Entry>> cache_;
};

}  // namespace isrsgn
