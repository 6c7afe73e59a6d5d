// rydcat: command-line front end for the cat-state error model.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rydcat/acceptance.hpp"
#include "rydcat/commands.hpp"
#include "rydcat/config.hpp"
#include "rydcat/error.hpp"

using namespace rydcat;
using nlohmann::json;

namespace {

struct Shared {
  std::string config_path;
  std::string format;
  std::string out_path;
};

ScenarioConfig load(const Shared& s) {
  ScenarioConfig cfg = s.config_path.empty() ? default_config() : load_config(s.config_path);
  if (!s.format.empty()) cfg.outputs.format = s.format;
  if (!s.out_path.empty()) cfg.outputs.path = s.out_path;
  return cfg;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file '" + *path + "'");
  f << text;
  if (!f) throw NumericalFault("failed writing '" + *path + "'");
}

// Flat key,value CSV for record-shaped payloads.
std::string payload_csv(const json& payload) {
  std::string out = "key,value\n";
  for (auto it = payload.begin(); it != payload.end(); ++it) {
    if (it->is_structured()) {
      for (auto jt = it->begin(); jt != it->end(); ++jt) {
        if (jt->is_structured()) continue;
        out += it.key() + "." + jt.key() + "," + (jt->is_number_float() ? format_number(jt->get<double>()) : jt->dump()) + "\n";
      }
    } else {
      out += it.key() + "," + (it->is_number_float() ? format_number(it->get<double>()) : it->dump()) + "\n";
    }
  }
  return out;
}

void emit_record(const std::string& command, const json& echo, const json& payload, const std::string& format,
                 const std::optional<std::string>& path, std::chrono::steady_clock::time_point start) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json record = make_record(command, echo, payload, wall);
  emit(format == "csv" ? payload_csv(payload) : record.dump(2) + "\n", path);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg cat-state preparation: error budgets, transfer coefficients and protocol simulation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Shared shared;
  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--config", shared.config_path, "Scenario JSON document")->check(CLI::ExistingFile);
    sub->add_option("--format", shared.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", shared.out_path, "Write output to this file instead of stdout");
  };

  auto* coeff = app.add_subcommand("coefficients", "Extract a transfer-error coefficient for a fixed geometry");
  std::string geom_name = "cube8";
  int exponent = 6;
  std::string mode_name = "resonant";
  coeff->add_option("--geometry", geom_name, "pair | square4 | cube8")->check(CLI::IsMember({"pair", "square4", "cube8"}));
  coeff->add_option("--exponent", exponent, "Interaction power law exponent (0 or 6)")->check(CLI::IsMember({0, 6}));
  coeff->add_option("--mode", mode_name, "resonant | nonresonant")->check(CLI::IsMember({"resonant", "nonresonant"}));
  add_shared(coeff);

  auto* budget = app.add_subcommand("budget", "Evaluate the error budget for a scenario");
  add_shared(budget);

  auto* sweep = app.add_subcommand("sweep", "Error budget on a logarithmic grid of the free frequency");
  double omega_min = 0.05, omega_max = 3.0;
  std::size_t points = 200;
  sweep->add_option("--omega-min", omega_min, "Lower end of the grid, MHz");
  sweep->add_option("--omega-max", omega_max, "Upper end of the grid, MHz");
  sweep->add_option("--points", points, "Number of grid points (>= 2)");
  add_shared(sweep);

  auto* simulate = app.add_subcommand("simulate", "Run the three-step protocol on the full state space (N <= 8)");
  add_shared(simulate);

  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  bool perturb_golden = false;
  int only = 0;
  validate->add_flag("--perturb-golden", perturb_golden, "Test hook: corrupt the published coefficient table");
  validate->add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*coeff) {
      const std::string format = shared.format.empty() ? "json" : shared.format;
      const json echo = {{"geometry", geom_name}, {"exponent", exponent}, {"mode", mode_name}};
      const json payload = cmd_coefficients(parse_geometry(geom_name), exponent, parse_mode(mode_name));
      emit_record("coefficients", echo, payload, format,
                  shared.out_path.empty() ? std::nullopt : std::optional(shared.out_path), start);
    } else if (*budget) {
      const ScenarioConfig cfg = load(shared);
      emit_record("budget", to_json(cfg), cmd_budget(cfg), cfg.outputs.format, cfg.outputs.path, start);
    } else if (*sweep) {
      const ScenarioConfig cfg = load(shared);
      const SweepResult r = cmd_sweep(cfg, omega_min, omega_max, points);
      if (cfg.outputs.format == "csv") {
        require_finite(r.payload);
        emit(r.csv, cfg.outputs.path);
        std::cerr << "minimum: " << r.payload["minimum"].dump() << "\n";
      } else {
        json echo = to_json(cfg);
        echo["sweep"] = {{"omega_min_mhz", omega_min}, {"omega_max_mhz", omega_max}, {"points", points}};
        emit_record("sweep", echo, r.payload, "json", cfg.outputs.path, start);
      }
    } else if (*simulate) {
      const ScenarioConfig cfg = load(shared);
      emit_record("simulate", to_json(cfg), cmd_simulate(cfg), cfg.outputs.format, cfg.outputs.path, start);
    } else if (*validate) {
      AcceptanceOptions opts;
      opts.perturb_golden = perturb_golden;
      opts.only = only;
      const auto results = run_acceptance(opts);
      std::cout << format_report(results);
      return all_passed(results) ? 0 : 1;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFault& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
