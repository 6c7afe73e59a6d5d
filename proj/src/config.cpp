#include "rydcat/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "rydcat/error.hpp"
#include "rydcat/perturbation.hpp"

namespace rydcat {

using nlohmann::json;

ScenarioConfig default_config() { return ScenarioConfig{}; }

namespace {

// Walks one JSON object, remembering the key path for error messages.
class Section {
public:
  Section(const json& doc, std::string path, std::set<std::string> known)
      : doc_(doc), path_(std::move(path)), known_(std::move(known)) {
    if (!doc_.is_object()) fail(path_.empty() ? "/" : path_, "must be an object");
    for (const auto& [key, value] : doc_.items()) {
      if (!known_.count(key)) fail(path_ + "/" + key, "unknown key");
    }
  }

  bool has(const std::string& key) const { return doc_.contains(key); }
  const json* find(const std::string& key) const { return has(key) ? &doc_.at(key) : nullptr; }
  std::string key_path(const std::string& key) const { return path_ + "/" + key; }

  double number(const std::string& key, double fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    return as_number(*v, key);
  }

  std::optional<double> optional_number(const std::string& key, std::optional<double> fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_null()) return std::nullopt;
    return as_number(*v, key);
  }

  int integer(const std::string& key, int fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(key_path(key), "must be an integer");
    return v->get<int>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key_path(key), "must be a boolean");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key_path(key), "must be a string");
    return v->get<std::string>();
  }

  std::optional<std::string> optional_string(const std::string& key) const {
    const json* v = find(key);
    if (!v || v->is_null()) return std::nullopt;
    if (!v->is_string()) fail(key_path(key), "must be a string or null");
    return v->get<std::string>();
  }

  Section child(const std::string& key, std::set<std::string> known) const {
    static const json empty = json::object();
    const json* v = find(key);
    return Section(v ? *v : empty, key_path(key), std::move(known));
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw InvalidInput(path + ": " + what);
  }

  template <class F> auto guarded(const std::string& key, F&& f) const {
    try {
      return f();
    } catch (const InvalidInput& e) {
      fail(key_path(key), e.what());
    }
  }

private:
  double as_number(const json& v, const std::string& key) const {
    if (!v.is_number()) fail(key_path(key), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key_path(key), "must be finite");
    return x;
  }

  const json& doc_;
  std::string path_;
  std::set<std::string> known_;
};

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) Section::fail(path, what);
}

} // namespace

ScenarioConfig parse_config(const json& doc) {
  ScenarioConfig cfg;
  const Section root(doc, "",
                     {"schema_version", "geometry", "interactions", "drive", "decay", "simulation", "transfer", "outputs"});
  if (root.has("schema_version")) {
    require(root.integer("schema_version", kSchemaVersion) == kSchemaVersion, "/schema_version",
            "unsupported schema version");
  }

  const auto geo = root.child("geometry", {"kind", "d_um", "R0"});
  cfg.geometry.kind = geo.guarded("kind", [&] { return parse_geometry(geo.string("kind", "cube8")); });
  cfg.geometry.d_um = geo.number("d_um", cfg.geometry.d_um);
  require(cfg.geometry.d_um > 0, geo.key_path("d_um"), "must be positive");
  cfg.geometry.r0 = geo.optional_number("R0", std::nullopt);
  if (cfg.geometry.kind == Geometry::sphere_cut) {
    require(cfg.geometry.r0.has_value(), geo.key_path("R0"), "required for sphere_cut");
    require(*cfg.geometry.r0 > 0, geo.key_path("R0"), "must be positive");
  }

  const auto in = root.child("interactions", {"delta_sp_at_d_mhz", "delta_pp_at_d_mhz", "delta_ss_at_d_mhz",
                                              "gamma_sp", "gamma_pp", "gamma_ss"});
  auto& ic = cfg.interactions;
  ic.delta_sp_at_d_mhz = in.number("delta_sp_at_d_mhz", ic.delta_sp_at_d_mhz);
  ic.delta_pp_at_d_mhz = in.number("delta_pp_at_d_mhz", ic.delta_pp_at_d_mhz);
  ic.delta_ss_at_d_mhz = in.number("delta_ss_at_d_mhz", ic.delta_ss_at_d_mhz);
  for (const char* key : {"delta_sp_at_d_mhz", "delta_pp_at_d_mhz", "delta_ss_at_d_mhz"}) {
    require(in.number(key, 0.0) >= 0, in.key_path(key), "must be non-negative");
  }
  ic.gamma_sp = in.integer("gamma_sp", ic.gamma_sp);
  ic.gamma_pp = in.integer("gamma_pp", ic.gamma_pp);
  ic.gamma_ss = in.integer("gamma_ss", ic.gamma_ss);
  for (const char* key : {"gamma_sp", "gamma_pp", "gamma_ss"}) {
    const int g = in.integer(key, 0);
    require(g == 0 || g == 3 || g == 6, in.key_path(key), "must be one of 0, 3, 6");
  }

  const auto dr = root.child("drive", {"omega_s_mhz", "omega_p_mhz", "delta0_mhz", "mode"});
  auto& dc = cfg.drive;
  dc.omega_s_mhz = dr.number("omega_s_mhz", dc.omega_s_mhz);
  dc.omega_p_mhz = dr.number("omega_p_mhz", dc.omega_p_mhz);
  dc.delta0_mhz = dr.number("delta0_mhz", dc.delta0_mhz);
  dc.mode = dr.guarded("mode", [&] { return parse_mode(dr.string("mode", "resonant")); });
  require(dc.omega_s_mhz > 0, dr.key_path("omega_s_mhz"), "must be positive");
  require(dc.omega_p_mhz > 0, dr.key_path("omega_p_mhz"), "must be positive");
  if (dc.mode == Mode::nonresonant) require(dc.delta0_mhz > 0, dr.key_path("delta0_mhz"), "must be positive when nonresonant");

  const auto de = root.child("decay", {"tau_p_us", "tau_s_us", "enabled"});
  cfg.decay.tau_p_us = de.optional_number("tau_p_us", cfg.decay.tau_p_us);
  cfg.decay.tau_s_us = de.optional_number("tau_s_us", cfg.decay.tau_s_us);
  cfg.decay.enabled = de.boolean("enabled", cfg.decay.enabled);
  if (cfg.decay.tau_p_us) require(*cfg.decay.tau_p_us > 0, de.key_path("tau_p_us"), "must be positive");
  if (cfg.decay.tau_s_us) require(*cfg.decay.tau_s_us > 0, de.key_path("tau_s_us"), "must be positive");

  const auto si = root.child("simulation", {"tolerance", "blockade_mode", "sp_blockade"});
  cfg.simulation.tolerance = si.number("tolerance", cfg.simulation.tolerance);
  require(cfg.simulation.tolerance > 0, si.key_path("tolerance"), "must be positive");
  cfg.simulation.blockade_mode =
      si.guarded("blockade_mode", [&] { return parse_blockade_mode(si.string("blockade_mode", "ideal")); });
  cfg.simulation.sp_blockade =
      si.guarded("sp_blockade", [&] { return parse_blockade_mode(si.string("sp_blockade", "finite")); });

  const auto tr = root.child("transfer", {"coefficient"});
  cfg.transfer.coefficient = tr.optional_number("coefficient", cfg.transfer.coefficient);
  if (cfg.transfer.coefficient) require(*cfg.transfer.coefficient >= 0, tr.key_path("coefficient"), "must be non-negative");

  const auto out = root.child("outputs", {"format", "path"});
  cfg.outputs.format = out.string("format", cfg.outputs.format);
  require(cfg.outputs.format == "json" || cfg.outputs.format == "csv", out.key_path("format"),
          "must be 'json' or 'csv'");
  cfg.outputs.path = out.optional_string("path");
  return cfg;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("/: invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

json to_json(const ScenarioConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["geometry"] = {{"kind", std::string(to_string(cfg.geometry.kind))},
                   {"d_um", cfg.geometry.d_um},
                   {"R0", opt(cfg.geometry.r0)}};
  const auto& ic = cfg.interactions;
  j["interactions"] = {{"delta_sp_at_d_mhz", ic.delta_sp_at_d_mhz}, {"delta_pp_at_d_mhz", ic.delta_pp_at_d_mhz},
                       {"delta_ss_at_d_mhz", ic.delta_ss_at_d_mhz}, {"gamma_sp", ic.gamma_sp},
                       {"gamma_pp", ic.gamma_pp},                   {"gamma_ss", ic.gamma_ss}};
  j["drive"] = {{"omega_s_mhz", cfg.drive.omega_s_mhz},
                {"omega_p_mhz", cfg.drive.omega_p_mhz},
                {"delta0_mhz", cfg.drive.delta0_mhz},
                {"mode", std::string(to_string(cfg.drive.mode))}};
  j["decay"] = {{"tau_p_us", opt(cfg.decay.tau_p_us)}, {"tau_s_us", opt(cfg.decay.tau_s_us)}, {"enabled", cfg.decay.enabled}};
  j["simulation"] = {{"tolerance", cfg.simulation.tolerance},
                     {"blockade_mode", std::string(to_string(cfg.simulation.blockade_mode))},
                     {"sp_blockade", std::string(to_string(cfg.simulation.sp_blockade))}};
  j["transfer"] = {{"coefficient", opt(cfg.transfer.coefficient)}};
  j["outputs"] = {{"format", cfg.outputs.format},
                  {"path", cfg.outputs.path ? json(*cfg.outputs.path) : json(nullptr)}};
  return j;
}

Lattice lattice_of(const ScenarioConfig& cfg) { return build_lattice(cfg.geometry.kind, cfg.geometry.d_um, cfg.geometry.r0); }

InteractionSet interactions_of(const ScenarioConfig& cfg) {
  const auto& ic = cfg.interactions;
  InteractionSet s;
  s.delta_sp_at_d = Frequency::from_mhz(ic.delta_sp_at_d_mhz);
  s.delta_pp_at_d = Frequency::from_mhz(ic.delta_pp_at_d_mhz);
  s.delta_ss_at_d = Frequency::from_mhz(ic.delta_ss_at_d_mhz);
  s.gamma_sp = ic.gamma_sp;
  s.gamma_pp = ic.gamma_pp;
  s.gamma_ss = ic.gamma_ss;
  return s;
}

BudgetInputs budget_inputs_of(const ScenarioConfig& cfg) {
  const Lattice lattice = lattice_of(cfg);
  constexpr double inf = std::numeric_limits<double>::infinity();
  BudgetInputs b;
  b.atoms = lattice.size();
  b.mode = cfg.drive.mode;
  b.omega = Frequency::from_mhz(cfg.drive.omega_p_mhz / std::numbers::sqrt2);
  b.delta0 = Frequency::from_mhz(cfg.drive.delta0_mhz);
  b.tau_p_us = cfg.decay.enabled && cfg.decay.tau_p_us ? *cfg.decay.tau_p_us : inf;
  // zero delta_sp switches the blockade-leakage term off
  b.delta_sp_at_d = cfg.interactions.delta_sp_at_d_mhz > 0 ? Frequency::from_mhz(cfg.interactions.delta_sp_at_d_mhz)
                                                             : Frequency::from_mhz(inf);
  b.delta_pp_at_d = Frequency::from_mhz(cfg.interactions.delta_pp_at_d_mhz);
  b.blockade_pair_factor = lattice.size() >= 2 ? pair_average_power(lattice, 2 * cfg.interactions.gamma_sp) : 1.0;
  if (cfg.transfer.coefficient) {
    b.coefficient = *cfg.transfer.coefficient;
  } else if (lattice.size() < 2) {
    b.coefficient = 0.0;
  } else {
    b.coefficient = extract_coefficient(lattice, cfg.interactions.gamma_pp, cfg.drive.mode).value;
  }
  return b;
}

ProtocolSpec protocol_of(const ScenarioConfig& cfg) {
  ProtocolSpec p;
  p.lattice = lattice_of(cfg);
  p.interactions = interactions_of(cfg);
  p.omega_s = Frequency::from_mhz(cfg.drive.omega_s_mhz);
  p.omega_p = Frequency::from_mhz(cfg.drive.omega_p_mhz);
  p.delta0 = Frequency::from_mhz(cfg.drive.delta0_mhz);
  p.mode = cfg.drive.mode;
  p.ss_blockade = cfg.simulation.blockade_mode;
  p.sp_blockade = cfg.simulation.sp_blockade;
  p.tolerance = cfg.simulation.tolerance;
  if (cfg.decay.enabled && (cfg.decay.tau_p_us || cfg.decay.tau_s_us)) {
    Decay d;
    d.tau_p_us = cfg.decay.tau_p_us.value_or(std::numeric_limits<double>::infinity());
    d.tau_s_us = cfg.decay.tau_s_us;
    p.decay = d;
  }
  return p;
}

} // namespace rydcat
