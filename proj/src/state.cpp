#include "rydcat/state.hpp"

#include <cmath>
#include <string>

#include "rydcat/error.hpp"
#include "rydcat/kernels.hpp"

namespace rydcat {

std::size_t product_dimension(std::size_t atoms) {
  if (atoms > 12) throw InvalidInput("state space too large: " + std::to_string(atoms) + " atoms");
  return std::size_t{1} << (2 * atoms);
}

StateVector::StateVector(std::size_t atoms) : atoms_(atoms), amps_(product_dimension(atoms)) {}

StateVector::StateVector(std::size_t atoms, std::vector<cplx> amplitudes) : atoms_(atoms), amps_(std::move(amplitudes)) {
  if (amps_.size() != product_dimension(atoms)) {
    throw InvalidInput("amplitude count does not match 4^N");
  }
}

StateVector StateVector::uniform(std::size_t atoms, Level level) {
  std::vector<Level> levels(atoms, level);
  return from_levels(levels);
}

StateVector StateVector::basis(std::size_t atoms, std::size_t index) {
  StateVector s(atoms);
  if (index >= s.dimension()) throw InvalidInput("basis index out of range");
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_levels(std::span<const Level> levels) {
  return basis(levels.size(), basis_index(levels));
}

double StateVector::norm_sq() const { return kernels::norm_sq(amps_); }

void StateVector::normalize() {
  const double n = std::sqrt(norm_sq());
  if (n == 0.0) throw NumericalFault("cannot normalize a zero state");
  for (auto& a : amps_) a /= n;
}

std::size_t basis_index(std::span<const Level> levels) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) idx |= static_cast<std::size_t>(levels[k]) << (2 * k);
  return idx;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw InvalidInput("state dimension mismatch");
  return kernels::dot(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

StateVector permute_atoms(const StateVector& state, std::span<const std::size_t> perm) {
  const auto n = state.atoms();
  if (perm.size() != n) throw InvalidInput("permutation size mismatch");
  StateVector out(n);
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    std::size_t target = 0;
    for (std::size_t k = 0; k < n; ++k) {
      target |= static_cast<std::size_t>(level_of(idx, k)) << (2 * perm[k]);
    }
    out[target] = state[idx];
  }
  return out;
}

} // namespace rydcat
