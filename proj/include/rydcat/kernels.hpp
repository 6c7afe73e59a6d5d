#pragma once

// Data-parallel inner loops over complex amplitude arrays. Each kernel has a
// portable scalar reference and, on x86-64, an AVX2/FMA variant selected at
// runtime. The two must agree elementwise to rounding; reductions may differ
// by summation order only.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace rydcat::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  /// y += a * x
  void (*axpy_real)(double a, const cplx* x, cplx* y, std::size_t n);
  /// y += a * x
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  /// y = d .* x
  void (*diag_mul)(const cplx* d, const cplx* x, cplx* y, std::size_t n);
  /// y .*= m  (real mask / weights)
  void (*scale_by)(const double* m, cplx* y, std::size_t n);
  /// sum |x|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
  /// sum conj(a) * b
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the build has no AVX2 variant.
const KernelTable* avx2_table();

bool cpu_has_avx2();

/// The kernel table used by the library. Defaults to the best ISA the CPU
/// supports; RYDCAT_ISA=scalar in the environment forces the reference path.
const KernelTable& active();

/// Override the active table (tests and benchmarks). Returns false when the
/// requested ISA is unavailable on this machine/build.
bool select(Isa isa);

std::string_view to_string(Isa isa);

// Span conveniences over the active table.
inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) { active().axpy(a, x.data(), y.data(), x.size()); }
inline void axpy_real(double a, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy_real(a, x.data(), y.data(), x.size());
}
inline double norm_sq(std::span<const cplx> x) { return active().norm_sq(x.data(), x.size()); }
inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) { return active().dot(a.data(), b.data(), a.size()); }

} // namespace rydcat::kernels
