#pragma once

#include <string>
#include <vector>

#include "cli/scenario.hpp"
#include "isrsgn/link_engine.hpp"

namespace isrsgn::cli {

/// Per-channel CSV, ascending frequency:
/// wavelength_nm,frequency_THz,snr_nli_dB,snr_tot_dB,alpha,alpha_bar,c_r,fit_residual
/// snr_tot_dB equals snr_nli_dB when no ASE/TRX contribution is configured.
std::string results_csv(const LinkResult& result);

/// Long-format fit dump: channel,frequency_THz,z_km,measured,fitted.
std::string fit_dump_csv(const LinkResult& result);

struct ResultSeries {
  std::string label;
  std::vector<double> wavelength_nm;
  std::vector<double> snr_nli_db;
};

/// Reads wavelength_nm and snr_nli_dB back from a results CSV.
ResultSeries parse_results_csv(const std::string& text, const std::string& label);

/// SHA-256 (hex) over a canonical serialization of every input that affects
/// the numbers: fiber tables and parameters, channel plan, link settings and
/// solver grid. Output paths and plotting flags are excluded.
std::string inputs_hash(const Scenario& scenario);

/// Run manifest as JSON text.
std::string manifest_json(const Scenario& scenario, const LinkResult& result,
                          const std::vector<std::string>& artifacts);

}  // namespace isrsgn::cli
