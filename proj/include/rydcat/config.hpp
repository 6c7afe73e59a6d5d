#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rydcat/budget.hpp"
#include "rydcat/dynamics.hpp"
#include "rydcat/model.hpp"

namespace rydcat {

inline constexpr int kSchemaVersion = 1;

/// Parsed scenario. Frequencies are cyclic MHz, times us, lengths um, as in
/// the JSON document.
struct ScenarioConfig {
  struct GeometrySection {
    Geometry kind = Geometry::cube8;
    double d_um = 3.0;
    std::optional<double> r0;
  } geometry;

  struct InteractionSection {
    double delta_sp_at_d_mhz = 14.4;
    double delta_pp_at_d_mhz = 0.019;
    double delta_ss_at_d_mhz = 3.7;
    int gamma_sp = 3;
    int gamma_pp = 6;
    int gamma_ss = 6;
  } interactions;

  struct DriveSection {
    double omega_s_mhz = 1.0;
    double omega_p_mhz = 0.3 * 1.4142135623730951; // Omega/2pi = 0.30 MHz
    double delta0_mhz = 0.0;
    Mode mode = Mode::resonant;
  } drive;

  struct DecaySection {
    std::optional<double> tau_p_us = 57.0; // null: no p decay
    std::optional<double> tau_s_us;        // null: no s decay
    bool enabled = true;
  } decay;

  struct SimulationSection {
    double tolerance = 1e-10;
    BlockadeMode blockade_mode = BlockadeMode::ideal;
    BlockadeMode sp_blockade = BlockadeMode::finite;
  } simulation;

  struct TransferSection {
    /// alpha_N / beta_N; null computes it for the configured lattice.
    std::optional<double> coefficient = 9.39;
  } transfer;

  struct OutputSection {
    std::string format = "json";
    std::optional<std::string> path;
  } outputs;
};

/// Paper-default scenario: N=8 cube at d = 3 um, Fig. 3 parameters.
ScenarioConfig default_config();

/// Parse and validate a JSON document. Missing keys take defaults; unknown
/// keys and bad values throw InvalidInput naming the key path.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Normalised JSON form (every key present, schema_version set).
nlohmann::json to_json(const ScenarioConfig& cfg);

Lattice lattice_of(const ScenarioConfig& cfg);
InteractionSet interactions_of(const ScenarioConfig& cfg);

/// Budget inputs for the configured scenario. When the coefficient is null
/// it is extracted for the lattice with exponent gamma_pp.
BudgetInputs budget_inputs_of(const ScenarioConfig& cfg);

/// Protocol spec for the configured scenario.
ProtocolSpec protocol_of(const ScenarioConfig& cfg);

} // namespace rydcat
