#pragma once

#include <array>
#include <optional>

#include "rydcat/dynamics.hpp"
#include "rydcat/model.hpp"

namespace rydcat {

/// Dressed states of the single-atom {|0>,|1>,|p>} transfer Hamiltonian,
/// ordered (dark, plus, minus).
struct Eigensystem {
  static constexpr std::size_t kDark = 0, kPlus = 1, kMinus = 2;

  std::array<double, 3> frequencies{}; // rad/us
  std::array<cplx, 3> rydberg_overlaps{}; // <m|p>
  std::array<cplx, 3> state_overlaps{}; // <m|0>
  double omega_p = 0.0; // rad/us
};

Eigensystem single_atom_eigensystem(Frequency omega_p, Frequency delta0);

/// Squared norm of the first-order error component produced by the pair
/// interaction V = sum_ij Delta_pp^ij |pp><pp| during transfer time t, for
/// all atoms starting in |0>. The projection on the unperturbed evolved
/// state is removed before taking the norm.
double first_order_error(const PairTable& pairs, const Eigensystem& eigen, double t_us);

struct CoefficientOptions {
  /// Delta_pp(d) relative to Omega (resonant) or Delta0 (nonresonant).
  double probe_ratio = 1e-3;
  /// Delta0 / Omega_p for nonresonant extraction.
  double detuning_ratio = 100.0;
};

struct CoefficientResult {
  double value = 0.0;
  Geometry geometry = Geometry::pair;
  int exponent = 6;
  Mode mode = Mode::resonant;
  std::size_t atom_count = 0;
};

/// alpha_N (resonant, normalised by Delta_pp^2/Omega^2) or beta_N
/// (nonresonant, normalised by Delta_pp^2/Delta0^2) for a lattice of up to
/// ten atoms.
CoefficientResult extract_coefficient(const Lattice& lattice, int exponent, Mode mode,
                                      const CoefficientOptions& opts = {});
/// Same for the named golden geometries (pair, square4, cube8).
CoefficientResult extract_coefficient(Geometry geometry, int exponent, Mode mode,
                                      const CoefficientOptions& opts = {});

/// The published table entry for (geometry, exponent, mode), if any.
std::optional<double> published_coefficient(Geometry geometry, int exponent, Mode mode);

struct ExactComparison {
  double perturbative = 0.0;
  double exact = 0.0;
  double relative_gap = 0.0;
};

/// First-order error against the exact step-(ii) infidelity from the
/// dynamics module (N <= 6). Delta_pp(d) = ratio * Omega (resonant) or
/// ratio * Delta0 (nonresonant).
ExactComparison validate_against_exact(Geometry geometry, int exponent, Mode mode, double delta_pp_over_omega,
                                       const CoefficientOptions& opts = {});

} // namespace rydcat
