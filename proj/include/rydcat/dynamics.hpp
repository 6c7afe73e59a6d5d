#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rydcat/model.hpp"
#include "rydcat/state.hpp"
#include "rydcat/units.hpp"

namespace rydcat {

enum class Step { one, two };
enum class BlockadeMode { ideal, finite };
enum class Mode { resonant, nonresonant };
/// full: steps (i)-(iii). transfer_only: step (ii) from |0...0>.
enum class ProtocolStage { full, transfer_only };

std::string_view to_string(BlockadeMode m);
std::string_view to_string(Mode m);
BlockadeMode parse_blockade_mode(std::string_view s);
Mode parse_mode(std::string_view s);

/// Rydberg lifetimes; an absent tau_s means the s level does not decay.
struct Decay {
  double tau_p_us = 0.0;
  std::optional<double> tau_s_us;
};

struct HamiltonianSpec {
  Step step = Step::two;
  Frequency omega_s;
  Frequency omega_p0;
  Frequency omega_p1;
  Frequency detuning; // Delta0 on |p>, signed
  /// -1 for the reversed step (iii) drive. Diagonal terms keep their sign.
  double drive_sign = 1.0;
  PairTable pairs;
  /// ideal: amplitude on states with two or more s excitations is removed.
  BlockadeMode ss_blockade = BlockadeMode::ideal;
  /// ideal: amplitude on states holding both s and p is removed (Delta_sp -> inf).
  BlockadeMode sp_blockade = BlockadeMode::finite;
  std::optional<Decay> decay;
};

/// Precomputed sparse form of a HamiltonianSpec: a complex diagonal, an
/// optional accessibility mask and the single-atom drive couplings. Never
/// materialises the 4^N x 4^N matrix.
class Hamiltonian {
public:
  explicit Hamiltonian(const HamiltonianSpec& spec);

  std::size_t atoms() const { return atoms_; }
  std::size_t dimension() const { return diag_.size(); }

  /// out = H in. Sizes must equal dimension().
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

  /// Gershgorin bound on the spectral radius over accessible states.
  double norm_bound() const { return bound_; }

  bool hermitian() const { return hermitian_; }
  bool accessible(std::size_t index) const { return mask_.empty() || mask_[index] != 0.0; }

  /// Zero the amplitude on inaccessible basis states.
  void project(std::span<cplx> amps) const;

private:
  struct Drive {
    unsigned from;
    unsigned to;
    double coupling; // rad/us, real
  };

  std::size_t atoms_ = 0;
  std::vector<cplx> diag_;
  std::vector<double> mask_;
  std::vector<Drive> drives_;
  double bound_ = 0.0;
  bool hermitian_ = true;
};

StateVector apply_hamiltonian(const HamiltonianSpec& spec, const StateVector& state);

struct EvolveOptions {
  double tolerance = 1e-10;
  std::size_t max_steps = 5'000'000;
};

/// exp(-i H t)|psi> by adaptive-step truncated Taylor series. Local error per
/// step is bounded by tolerance * |psi|. Throws NumericalFault when a step
/// cannot meet the tolerance or the step cap is reached.
StateVector evolve(const Hamiltonian& h, const StateVector& state, double duration_us,
                   const EvolveOptions& opts = {});
StateVector evolve(const HamiltonianSpec& spec, const StateVector& state, double duration_us,
                   double tolerance = 1e-10);

struct ProtocolSpec {
  Lattice lattice;
  InteractionSet interactions;
  Frequency omega_s = Frequency::from_mhz(1.0);
  Frequency omega_p = Frequency::from_mhz(1.0);
  Frequency delta0;
  Mode mode = Mode::resonant;
  std::optional<double> t1_us;
  std::optional<double> t2_us;
  BlockadeMode ss_blockade = BlockadeMode::ideal;
  BlockadeMode sp_blockade = BlockadeMode::finite;
  std::optional<Decay> decay;
  double tolerance = 1e-10;
  ProtocolStage stage = ProtocolStage::full;
  std::size_t max_atoms = 8;
};

struct Timings {
  double t1_us = 0.0;
  double t2_us = 0.0;
};

/// t1 = pi/(2 sqrt(N) Omega_s); t2 = sqrt(2) pi/Omega_p (resonant) or
/// 2 pi Delta0/Omega_p^2 (nonresonant). Overrides in the spec win.
Timings protocol_timings(const ProtocolSpec& spec);

struct ProtocolResult {
  StateVector final_state;
  double fidelity = 0.0;
  double norm_loss = 0.0;
  Timings timings;
  bool decay_enabled = false;
};

/// The three Hamiltonians of the protocol, built from one spec.
HamiltonianSpec step_hamiltonian(const ProtocolSpec& spec, Step step, double drive_sign = 1.0);

/// Evolves the protocol without comparing to a target.
StateVector evolve_protocol(const ProtocolSpec& spec);

/// Final state of the same protocol with Delta_pp = 0, ideal ss and sp
/// blockade, no decay, evolved at tight tolerance.
StateVector ideal_target(const ProtocolSpec& spec);
/// Target for default drive settings (Omega_s/2pi = Omega_p/2pi = 1 MHz,
/// Delta0 = 100 Omega_p when nonresonant).
StateVector ideal_target(std::size_t atoms, Mode mode);

ProtocolResult run_protocol(const ProtocolSpec& spec);

/// 1 - |psi_final|^2: scattering probability of a run with decay enabled.
double norm_loss_decay(const ProtocolResult& result);

} // namespace rydcat
