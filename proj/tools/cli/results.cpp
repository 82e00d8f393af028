#include "cli/results.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <json.hpp>

#include "cli/csv.hpp"
#include "isrsgn/error.hpp"
#include "isrsgn/version.hpp"

namespace isrsgn::cli {

using nlohmann::ordered_json;

std::string results_csv(const LinkResult& result) {
  std::string out = "wavelength_nm,frequency_THz,snr_nli_dB,snr_tot_dB,alpha,alpha_bar,c_r,fit_residual\n";
  for (const auto& c : result.channels) {
    const double tot = c.snr_tot_db.value_or(c.snr_nli_db);
    out += format_number(c.wavelength_nm) + ',' + format_number(c.frequency_thz) + ',' +
           format_number(c.snr_nli_db) + ',' + format_number(tot) + ',' +
           format_number(c.params.alpha) + ',' + format_number(c.params.alpha_bar) + ',' +
           format_number(c.params.c_r) + ',' + format_number(c.params.fit_residual) + '\n';
  }
  return out;
}

std::string fit_dump_csv(const LinkResult& result) {
  if (!result.evolution) throw InputError("fit dump requested but the power evolution was not kept");
  const auto& ev = *result.evolution;
  std::string out = "channel,frequency_THz,z_km,measured,fitted\n";
  for (std::size_t i = 0; i < ev.channel_count(); ++i) {
    const auto y = ev.normalized(i);
    const auto& c = result.channels[i];
    for (std::size_t s = 0; s < ev.sample_count(); ++s) {
      out += std::to_string(i) + ',' + format_number(c.frequency_thz) + ',' + format_number(ev.z()[s]) +
             ',' + format_number(y[s]) + ',' +
             format_number(eval_first_order_profile(c.params, ev.z()[s])) + '\n';
    }
  }
  return out;
}

ResultSeries parse_results_csv(const std::string& text, const std::string& label) {
  const auto table = parse_csv(text, label);
  const auto wl = table.column("wavelength_nm");
  const auto snr = table.column("snr_nli_db");
  if (wl == std::string::npos || snr == std::string::npos) {
    throw InputError(label + ": not a results file (need wavelength_nm and snr_nli_dB)");
  }
  ResultSeries s{label, {}, {}};
  for (const auto& row : table.rows) {
    s.wavelength_nm.push_back(parse_number(row.cells[wl], label, row.line));
    s.snr_nli_db.push_back(parse_number(row.cells[snr], label, row.line));
  }
  return s;
}

namespace {

ordered_json canonical_inputs(const Scenario& scenario) {
  ordered_json j;
  const auto& fiber = scenario.fiber;
  ordered_json att = ordered_json::array();
  for (const auto& s : fiber.attenuation_table()) att.push_back({s.frequency_thz, s.loss_per_km});
  ordered_json ram = ordered_json::array();
  for (const auto& s : fiber.raman_gain_table()) ram.push_back({s.shift_thz, s.gain_per_w_km});
  j["attenuation"] = att;
  j["raman"] = ram;
  j["beta2"] = fiber.dispersion().coefficients.beta2;
  j["beta3"] = fiber.dispersion().coefficients.beta3;
  j["dispersion_reference_thz"] = fiber.dispersion().reference_frequency_thz;
  j["gamma"] = fiber.gamma();
  j["span_length"] = fiber.span_length();

  const auto plan = scenario.plan();
  j["reference_thz"] = plan.reference_frequency();
  ordered_json ch = ordered_json::array();
  for (const auto& c : plan.channels()) {
    ch.push_back({c.center_frequency_thz, c.bandwidth_thz, c.launch_power_w, c.excess_kurtosis});
  }
  j["channels"] = ch;
  j["spans"] = scenario.span_count;
  j["epsilon"] = scenario.coherence_epsilon;
  j["snr_ase_db"] = scenario.snr_ase_db ? ordered_json(scenario.snr_ase_db->values_db) : ordered_json();
  j["snr_trx_db"] = scenario.snr_trx_db ? ordered_json(scenario.snr_trx_db->values_db) : ordered_json();
  j["step_km"] = scenario.grid.step_km;
  j["output_samples"] = scenario.grid.output_samples;
  return j;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace

std::string inputs_hash(const Scenario& scenario) {
  return sha256_hex(canonical_inputs(scenario).dump());
}

std::string manifest_json(const Scenario& scenario, const LinkResult& result,
                          const std::vector<std::string>& artifacts) {
  ordered_json j;
  j["scenario"] = scenario.name;
  j["inputs_sha256"] = inputs_hash(scenario);
  j["inputs"] = {{"attenuation_csv", scenario.attenuation_path.string()},
                 {"raman_csv", scenario.raman_path.string()},
                 {"spans", scenario.span_count},
                 {"epsilon", scenario.coherence_epsilon},
                 {"channels", result.channels.size()}};
  j["versions"] = {{"isrsgn", std::string(kVersion)},
                   {"compiler", std::string(__VERSION__)},
                   {"cxx_standard", static_cast<long>(__cplusplus)}};
  j["timings_ms"] = {{"raman", result.timings.raman_ms},
                     {"fit", result.timings.fit_ms},
                     {"closed_form", result.timings.closed_form_ms},
                     {"total", result.timings.total_ms}};
  j["stage_counts"] = {{"raman_solves", result.raman_solves}, {"fit_passes", result.fit_passes}};
  j["artifacts"] = artifacts;
  return j.dump(2) + "\n";
}

}  // namespace isrsgn::cli
