#include "rydcat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rydcat/error.hpp"
#include "rydcat/kernels.hpp"

namespace rydcat {

std::string_view to_string(BlockadeMode m) { return m == BlockadeMode::ideal ? "ideal" : "finite"; }
std::string_view to_string(Mode m) { return m == Mode::resonant ? "resonant" : "nonresonant"; }

BlockadeMode parse_blockade_mode(std::string_view s) {
  if (s == "ideal") return BlockadeMode::ideal;
  if (s == "finite") return BlockadeMode::finite;
  throw InvalidInput("blockade mode must be 'ideal' or 'finite', got '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
  if (s == "resonant") return Mode::resonant;
  if (s == "nonresonant") return Mode::nonresonant;
  throw InvalidInput("mode must be 'resonant' or 'nonresonant', got '" + std::string(s) + "'");
}

Hamiltonian::Hamiltonian(const HamiltonianSpec& spec) : atoms_(spec.pairs.atom_count) {
  const std::size_t dim = product_dimension(atoms_);
  diag_.assign(dim, cplx{});

  const auto lvl = [](Level l) { return static_cast<unsigned>(l); };
  if (spec.step == Step::one) {
    drives_.push_back({lvl(Level::zero), lvl(Level::s), spec.drive_sign * spec.omega_s.angular() / 2});
  } else {
    drives_.push_back({lvl(Level::zero), lvl(Level::p), spec.drive_sign * spec.omega_p0.angular() / 2});
    drives_.push_back({lvl(Level::one), lvl(Level::p), spec.drive_sign * spec.omega_p1.angular() / 2});
  }
  std::erase_if(drives_, [](const Drive& d) { return d.coupling == 0.0; });

  const double detuning = spec.step == Step::two ? spec.detuning.angular() : 0.0;
  double loss_p = 0.0, loss_s = 0.0;
  if (spec.decay) {
    if (!(spec.decay->tau_p_us > 0)) throw InvalidInput("tau_p must be positive");
    if (std::isfinite(spec.decay->tau_p_us)) loss_p = 0.5 / spec.decay->tau_p_us;
    if (spec.decay->tau_s_us) {
      if (!(*spec.decay->tau_s_us > 0)) throw InvalidInput("tau_s must be positive");
      if (std::isfinite(*spec.decay->tau_s_us)) loss_s = 0.5 / *spec.decay->tau_s_us;
    }
    hermitian_ = loss_p == 0.0 && loss_s == 0.0;
  }

  const bool ss_ideal = spec.ss_blockade == BlockadeMode::ideal;
  const bool sp_ideal = spec.sp_blockade == BlockadeMode::ideal;
  if (ss_ideal || sp_ideal) mask_.assign(dim, 1.0);

  // Per-level coupling weight for the Gershgorin row sum.
  double level_weight[kLevels] = {0, 0, 0, 0};
  for (const auto& d : drives_) {
    level_weight[d.from] += std::abs(d.coupling);
    level_weight[d.to] += std::abs(d.coupling);
  }

  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t n_s = 0, n_p = 0;
    double row = 0.0;
    for (std::size_t k = 0; k < atoms_; ++k) {
      const Level l = level_of(idx, k);
      n_s += l == Level::s;
      n_p += l == Level::p;
      row += level_weight[static_cast<unsigned>(l)];
    }
    if (!mask_.empty() && ((ss_ideal && n_s >= 2) || (sp_ideal && n_s >= 1 && n_p >= 1))) {
      mask_[idx] = 0.0;
      continue;
    }
    double energy = detuning * static_cast<double>(n_p);
    if (n_s + n_p >= 2) {
      for (const auto& e : spec.pairs.entries) {
        const Level a = level_of(idx, e.i);
        const Level b = level_of(idx, e.j);
        if (a == Level::p && b == Level::p) {
          energy += e.delta_pp.angular();
        } else if ((a == Level::s && b == Level::p) || (a == Level::p && b == Level::s)) {
          energy += e.delta_sp.angular();
        } else if (a == Level::s && b == Level::s) {
          energy += e.delta_ss.angular();
        }
      }
    }
    const double gamma = loss_p * static_cast<double>(n_p) + loss_s * static_cast<double>(n_s);
    diag_[idx] = {energy, -gamma};
    bound_ = std::max(bound_, std::abs(diag_[idx]) + row);
  }
}

void Hamiltonian::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t dim = dimension();
  if (in.size() != dim || out.size() != dim) throw InvalidInput("state dimension does not match Hamiltonian");
  const auto& k = kernels::active();
  k.diag_mul(diag_.data(), in.data(), out.data(), dim);

  for (std::size_t atom = 0; atom < atoms_; ++atom) {
    const std::size_t stride = std::size_t{1} << (2 * atom);
    const std::size_t block = stride * kLevels;
    for (const auto& d : drives_) {
      const std::size_t off_from = d.from * stride;
      const std::size_t off_to = d.to * stride;
      for (std::size_t base = 0; base < dim; base += block) {
        const cplx* src_from = in.data() + base + off_from;
        const cplx* src_to = in.data() + base + off_to;
        cplx* dst_from = out.data() + base + off_from;
        cplx* dst_to = out.data() + base + off_to;
        if (stride == 1) {
          *dst_to += d.coupling * *src_from;
          *dst_from += d.coupling * *src_to;
        } else {
          k.axpy_real(d.coupling, src_from, dst_to, stride);
          k.axpy_real(d.coupling, src_to, dst_from, stride);
        }
      }
    }
  }
  if (!mask_.empty()) k.scale_by(mask_.data(), out.data(), dim);
}

void Hamiltonian::project(std::span<cplx> amps) const {
  if (mask_.empty()) return;
  kernels::active().scale_by(mask_.data(), amps.data(), amps.size());
}

StateVector apply_hamiltonian(const HamiltonianSpec& spec, const StateVector& state) {
  Hamiltonian h(spec);
  if (state.atoms() != h.atoms()) throw InvalidInput("state atom count does not match Hamiltonian");
  StateVector out(state.atoms());
  h.apply(state.amplitudes(), out.amplitudes());
  return out;
}

StateVector evolve(const Hamiltonian& h, const StateVector& state, double duration_us, const EvolveOptions& opts) {
  if (!(duration_us >= 0)) throw InvalidInput("evolution duration must be non-negative");
  if (!(opts.tolerance > 0)) throw InvalidInput("tolerance must be positive");
  if (state.atoms() != h.atoms()) throw InvalidInput("state atom count does not match Hamiltonian");

  StateVector psi = state;
  h.project(psi.amplitudes());
  if (duration_us == 0.0 || h.norm_bound() == 0.0) return psi;

  constexpr double kStepNorm = 2.0; // |H| h per step
  constexpr int kMaxTerms = 48;
  const std::size_t dim = psi.dimension();
  const auto& k = kernels::active();
  std::vector<cplx> term(dim), work(dim), acc(dim);

  double remaining = duration_us;
  double h_max = kStepNorm / h.norm_bound();
  std::size_t steps = 0;
  while (remaining > 0.0) {
    if (++steps > opts.max_steps) throw NumericalFault("evolve: step cap reached before end of interval");
    double dt = std::min(remaining, h_max);
    bool converged = false;
    for (int attempt = 0; attempt < 8 && !converged; ++attempt) {
      std::copy(psi.amplitudes().begin(), psi.amplitudes().end(), term.begin());
      std::copy(term.begin(), term.end(), acc.begin());
      const double scale = std::sqrt(k.norm_sq(acc.data(), dim));
      for (int n = 1; n <= kMaxTerms; ++n) {
        h.apply(term, work);
        const cplx coef(0.0, -dt / n);
        for (std::size_t i = 0; i < dim; ++i) term[i] = coef * work[i];
        k.axpy(1.0, term.data(), acc.data(), dim);
        const double tn = std::sqrt(k.norm_sq(term.data(), dim));
        if (!std::isfinite(tn)) throw NumericalFault("evolve: non-finite amplitude");
        if (tn <= opts.tolerance * std::max(scale, 1e-300)) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        dt *= 0.5;
        h_max = dt;
      }
    }
    if (!converged) throw NumericalFault("evolve: Taylor step failed to meet tolerance");
    std::copy(acc.begin(), acc.end(), psi.amplitudes().begin());
    remaining -= dt;
    if (remaining < 1e-15 * duration_us) remaining = 0.0;
  }
  return psi;
}

StateVector evolve(const HamiltonianSpec& spec, const StateVector& state, double duration_us, double tolerance) {
  return evolve(Hamiltonian(spec), state, duration_us, EvolveOptions{tolerance});
}

Timings protocol_timings(const ProtocolSpec& spec) {
  const double n = static_cast<double>(spec.lattice.size());
  const double omega_s = spec.omega_s.angular();
  const double omega_p = spec.omega_p.angular();
  Timings t;
  if (spec.t1_us) {
    t.t1_us = *spec.t1_us;
  } else {
    if (!(omega_s > 0)) throw InvalidInput("omega_s must be positive");
    t.t1_us = std::numbers::pi / (2.0 * std::sqrt(n) * omega_s);
  }
  if (spec.t2_us) {
    t.t2_us = *spec.t2_us;
  } else {
    if (!(omega_p > 0)) throw InvalidInput("omega_p must be positive");
    if (spec.mode == Mode::resonant) {
      t.t2_us = std::numbers::sqrt2 * std::numbers::pi / omega_p;
    } else {
      if (!(spec.delta0.angular() > 0)) throw InvalidInput("nonresonant mode needs delta0 > 0");
      t.t2_us = 2.0 * std::numbers::pi * spec.delta0.angular() / (omega_p * omega_p);
    }
  }
  if (t.t1_us < 0 || t.t2_us < 0) throw InvalidInput("pulse durations must be non-negative");
  return t;
}

HamiltonianSpec step_hamiltonian(const ProtocolSpec& spec, Step step, double drive_sign) {
  HamiltonianSpec h;
  h.step = step;
  h.omega_s = spec.omega_s;
  h.omega_p0 = spec.omega_p;
  h.omega_p1 = spec.omega_p;
  h.detuning = spec.mode == Mode::resonant ? Frequency{} : spec.delta0;
  h.drive_sign = drive_sign;
  h.pairs = build_pair_table(spec.lattice, spec.interactions);
  h.ss_blockade = spec.ss_blockade;
  h.sp_blockade = spec.sp_blockade;
  h.decay = spec.decay;
  return h;
}

StateVector evolve_protocol(const ProtocolSpec& spec) {
  const auto n = spec.lattice.size();
  if (n == 0) throw InvalidInput("lattice has no atoms");
  if (n > spec.max_atoms) {
    throw InvalidInput("protocol simulation capped at " + std::to_string(spec.max_atoms) + " atoms, lattice has " +
                       std::to_string(n));
  }
  const Timings t = protocol_timings(spec);
  const EvolveOptions opts{spec.tolerance};
  StateVector psi = StateVector::uniform(n, Level::zero);
  if (spec.stage == ProtocolStage::transfer_only) {
    return evolve(Hamiltonian(step_hamiltonian(spec, Step::two)), psi, t.t2_us, opts);
  }
  psi = evolve(Hamiltonian(step_hamiltonian(spec, Step::one, +1.0)), psi, t.t1_us, opts);
  psi = evolve(Hamiltonian(step_hamiltonian(spec, Step::two)), psi, t.t2_us, opts);
  psi = evolve(Hamiltonian(step_hamiltonian(spec, Step::one, -1.0)), psi, 2.0 * t.t1_us, opts);
  return psi;
}

StateVector ideal_target(const ProtocolSpec& spec) {
  ProtocolSpec ideal = spec;
  ideal.interactions.delta_pp_at_d = Frequency{};
  ideal.ss_blockade = BlockadeMode::ideal;
  ideal.sp_blockade = BlockadeMode::ideal;
  ideal.decay.reset();
  ideal.tolerance = 1e-14;
  return evolve_protocol(ideal);
}

StateVector ideal_target(std::size_t atoms, Mode mode) {
  if (atoms < 1) throw InvalidInput("ideal target needs at least one atom");
  ProtocolSpec spec;
  spec.lattice.kind = Geometry::sphere_cut;
  spec.lattice.spacing_um = 1.0;
  for (std::size_t k = 0; k < atoms; ++k) spec.lattice.positions.push_back({double(k), 0.0, 0.0});
  spec.mode = mode;
  spec.max_atoms = std::max<std::size_t>(spec.max_atoms, atoms);
  if (mode == Mode::nonresonant) spec.delta0 = spec.omega_p * 100.0;
  return ideal_target(spec);
}

ProtocolResult run_protocol(const ProtocolSpec& spec) {
  ProtocolResult r;
  r.timings = protocol_timings(spec);
  r.final_state = evolve_protocol(spec);
  const StateVector target = ideal_target(spec);
  r.fidelity = std::min(1.0, fidelity(target, r.final_state));
  r.norm_loss = std::max(0.0, 1.0 - r.final_state.norm_sq());
  r.decay_enabled = spec.decay.has_value();
  if (!std::isfinite(r.fidelity) || !std::isfinite(r.norm_loss)) throw NumericalFault("protocol produced non-finite output");
  return r;
}

double norm_loss_decay(const ProtocolResult& result) {
  if (!result.decay_enabled) throw InvalidInput("norm_loss_decay requires a run with decay enabled");
  return std::max(0.0, 1.0 - result.final_state.norm_sq());
}

} // namespace rydcat
