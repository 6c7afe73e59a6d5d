#pragma once

#include <cstddef>
#include <vector>

#include "rydcat/dynamics.hpp"
#include "rydcat/units.hpp"

namespace rydcat {

/// Effective Rabi frequency Omega = Omega_p/sqrt2 and interaction-induced
/// detuning, both in rad/us.
struct TransferInputs {
  double omega = 0.0;
  double delta = 0.0;

  double omega_prime() const;
};

struct Populations {
  double p0 = 0.0;
  double p1 = 0.0;
  bool regime_warning = false; // nonresonant only: Delta0 < 10 Omega_p
};

/// Closed-form populations of |0>, |1> after the resonant transfer pulse.
Populations transfer_populations(const TransferInputs& in);

/// P0 = cos^2(W t/2), P1 = sin^2(W t/2) with W = Omega_p^2 / (2 (Delta0 + shift)).
Populations nonresonant_populations(Frequency omega_p, Frequency delta0, Frequency delta_sp_shift, double t_us);

struct BudgetInputs {
  std::size_t atoms = 0;
  Mode mode = Mode::resonant;
  Frequency omega;  // effective Rabi frequency (resonant)
  Frequency delta0; // detuning (nonresonant)
  double tau_p_us = 0.0; // +inf disables the spontaneous-emission term
  Frequency delta_sp_at_d; // +inf disables the blockade term
  Frequency delta_pp_at_d;
  double blockade_pair_factor = 1.0; // <(R/d)^6>
  double coefficient = 0.0; // alpha_N or beta_N

  /// The frequency the budget is minimised over: Omega or Delta0.
  Frequency free_frequency() const { return mode == Mode::resonant ? omega : delta0; }
  BudgetInputs with_free_frequency(Frequency f) const;
};

struct ErrorBudget {
  double e_se = 0.0;
  double e_bl = 0.0;
  double e_tr = 0.0;
  double total = 0.0;
};

ErrorBudget error_budget(const BudgetInputs& in);

struct CurvePoint {
  double frequency_mhz = 0.0;
  ErrorBudget budget;
};

struct RabiOptimum {
  Frequency optimum;
  double e_min = 0.0;
  std::vector<CurvePoint> curve;
};

/// Minimises the total budget over the free frequency on [lo, hi] (cyclic
/// MHz) by golden-section search on log frequency. Throws InvalidInput when
/// the minimum is not interior. `curve_points` > 0 also returns the budget
/// on a log-spaced grid.
RabiOptimum optimize_rabi(const BudgetInputs& in, double lo_mhz, double hi_mhz, std::size_t curve_points = 0);

/// Log-spaced grid of `points` values on [lo, hi], endpoints exact.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct GateOptimum {
  double omega = 0.0; // rad/us
  double e_min = 0.0;
};

/// Closed-form minimiser of c_bl W^2/Delta^2 + c_se/(W tau).
GateOptimum two_atom_gate_optimum(double delta, double tau_us, double c_bl, double c_se);

} // namespace rydcat
