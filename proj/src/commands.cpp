#include "rydcat/commands.hpp"

#include <cmath>
#include <cstdio>

#include "rydcat/error.hpp"
#include "rydcat/perturbation.hpp"

namespace rydcat {

using nlohmann::json;

namespace {

json budget_json(const ErrorBudget& b) {
  return {{"e_se", b.e_se}, {"e_bl", b.e_bl}, {"e_tr", b.e_tr}, {"total", b.total}};
}

} // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_finite(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) throw NumericalFault("non-finite value in output");
  if (j.is_structured()) {
    for (const auto& item : j) require_finite(item);
  }
}

json make_record(const std::string& command, const json& config_echo, const json& payload, double wall_time_s) {
  require_finite(payload);
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"software_version", kVersion},
          {"config", config_echo},
          {"payload", payload},
          {"wall_time_s", wall_time_s}};
}

json cmd_coefficients(Geometry geometry, int exponent, Mode mode) {
  const auto r = extract_coefficient(geometry, exponent, mode);
  json j = {{"value", r.value},
            {"geometry", std::string(to_string(r.geometry))},
            {"exponent", r.exponent},
            {"mode", std::string(to_string(r.mode))},
            {"atom_count", r.atom_count},
            {"normalisation", mode == Mode::resonant ? "delta_pp^2/omega^2" : "delta_pp^2/delta0^2"}};
  if (auto pub = published_coefficient(geometry, exponent, mode)) {
    const double dev = (r.value - *pub) / *pub;
    j["golden"] = true;
    j["published"] = *pub;
    j["relative_deviation"] = dev;
    j["within_3_percent"] = std::abs(dev) <= 0.03;
  } else {
    j["golden"] = false;
    j["published"] = nullptr;
  }
  return j;
}

json cmd_budget(const ScenarioConfig& cfg) {
  const BudgetInputs in = budget_inputs_of(cfg);
  const ErrorBudget b = error_budget(in);
  json j = budget_json(b);
  j["atoms"] = in.atoms;
  j["mode"] = std::string(to_string(in.mode));
  j["free_frequency_mhz"] = in.free_frequency().mhz();
  j["pair_factor"] = in.blockade_pair_factor;
  j["pair_factor_definition"] = "mean over unordered pairs of (R/d)^(2*gamma_sp)";
  j["coefficient"] = in.coefficient;
  j["coefficient_source"] = cfg.transfer.coefficient ? "config" : "computed";
  return j;
}

SweepResult cmd_sweep(const ScenarioConfig& cfg, double omega_min_mhz, double omega_max_mhz, std::size_t points) {
  if (points < 2) throw InvalidInput("--points must be at least 2");
  if (!(omega_min_mhz > 0) || !(omega_max_mhz > omega_min_mhz)) {
    throw InvalidInput("sweep range must satisfy 0 < omega_min < omega_max");
  }
  const BudgetInputs in = budget_inputs_of(cfg);
  SweepResult out;
  out.csv = std::string(kSweepHeader) + "\n";
  json rows = json::array();
  std::size_t best = 0;
  double best_total = 0.0;
  const auto grid = log_grid(omega_min_mhz, omega_max_mhz, points);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const ErrorBudget b = error_budget(in.with_free_frequency(Frequency::from_mhz(grid[k])));
    for (double v : {grid[k], b.e_se, b.e_bl, b.e_tr, b.total}) {
      if (!std::isfinite(v)) throw NumericalFault("non-finite budget value in sweep");
    }
    out.csv += format_number(grid[k]) + "," + format_number(b.e_se) + "," + format_number(b.e_bl) + "," +
               format_number(b.e_tr) + "," + format_number(b.total) + "\n";
    json row = budget_json(b);
    row["omega_mhz"] = grid[k];
    rows.push_back(row);
    if (k == 0 || b.total < best_total) {
      best = k;
      best_total = b.total;
    }
  }
  out.payload["rows"] = rows;
  out.payload["free_frequency"] = in.mode == Mode::resonant ? "omega" : "delta0";
  if (best > 0 && best + 1 < grid.size()) {
    const auto opt = optimize_rabi(in, omega_min_mhz, omega_max_mhz);
    out.payload["minimum"] = {{"grid_omega_mhz", grid[best]},
                              {"grid_e_total", best_total},
                              {"omega_mhz", opt.optimum.mhz()},
                              {"e_total", opt.e_min}};
  } else {
    out.payload["minimum"] = nullptr;
  }
  return out;
}

json cmd_simulate(const ScenarioConfig& cfg) {
  const ProtocolSpec spec = protocol_of(cfg);
  if (spec.lattice.size() > spec.max_atoms) {
    throw InvalidInput("/geometry: simulate supports at most 8 atoms, lattice has " +
                       std::to_string(spec.lattice.size()));
  }
  const ProtocolResult r = run_protocol(spec);
  json j = {{"atoms", spec.lattice.size()},
            {"fidelity", r.fidelity},
            {"infidelity", 1.0 - r.fidelity},
            {"norm_loss", r.norm_loss},
            {"t1_us", r.timings.t1_us},
            {"t2_us", r.timings.t2_us}};
  if (spec.lattice.size() >= 2) {
    j["budget_prediction"] = budget_json(error_budget(budget_inputs_of(cfg)));
  } else {
    j["budget_prediction"] = nullptr;
  }
  return j;
}

} // namespace rydcat
