#pragma once

#include <string>

#include <json.hpp>

#include "rydcat/config.hpp"
#include "rydcat/model.hpp"

namespace rydcat {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kSweepHeader = "omega_mhz,e_se,e_bl,e_tr,e_total";

/// Payloads of the CLI commands. Each returns the "payload" object of a
/// result record; make_record wraps it with the command name, config echo,
/// version and wall time.
nlohmann::json cmd_coefficients(Geometry geometry, int exponent, Mode mode);
nlohmann::json cmd_budget(const ScenarioConfig& cfg);
nlohmann::json cmd_simulate(const ScenarioConfig& cfg);

struct SweepResult {
  std::string csv;       // header plus one row per grid point
  nlohmann::json payload; // rows and the bracketed minimum (if any)
};
SweepResult cmd_sweep(const ScenarioConfig& cfg, double omega_min_mhz, double omega_max_mhz, std::size_t points);

nlohmann::json make_record(const std::string& command, const nlohmann::json& config_echo,
                           const nlohmann::json& payload, double wall_time_s);

/// Throws NumericalFault if any number inside `j` is not finite.
void require_finite(const nlohmann::json& j);

/// %.17g formatting used for CSV cells.
std::string format_number(double v);

} // namespace rydcat
