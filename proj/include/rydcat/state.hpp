#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rydcat {

using cplx = std::complex<double>;

/// Per-atom levels in basis order; the value is the base-4 digit.
enum class Level : std::uint8_t { zero = 0, one = 1, s = 2, p = 3 };

inline constexpr std::size_t kLevels = 4;

/// 4^n. Throws for n > 12.
std::size_t product_dimension(std::size_t atoms);

/// Level of `atom` in basis index `index` (atom k is base-4 digit k).
inline Level level_of(std::size_t index, std::size_t atom) {
  return static_cast<Level>((index >> (2 * atom)) & 3u);
}

/// Complex amplitudes over the 4^N product basis.
class StateVector {
public:
  StateVector() = default;
  explicit StateVector(std::size_t atoms);
  StateVector(std::size_t atoms, std::vector<cplx> amplitudes);

  /// All atoms in `level`.
  static StateVector uniform(std::size_t atoms, Level level);
  static StateVector basis(std::size_t atoms, std::size_t index);
  static StateVector from_levels(std::span<const Level> levels);

  std::size_t atoms() const { return atoms_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm_sq() const;
  void normalize();

private:
  std::size_t atoms_ = 0;
  std::vector<cplx> amps_;
};

/// Basis index for a level assignment.
std::size_t basis_index(std::span<const Level> levels);

/// <a|b>
cplx inner(const StateVector& a, const StateVector& b);

/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

/// Relabel atoms: atom k of the input becomes atom perm[k] of the output.
StateVector permute_atoms(const StateVector& state, std::span<const std::size_t> perm);

} // namespace rydcat
