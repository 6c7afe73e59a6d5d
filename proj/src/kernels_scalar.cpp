#include "rydcat/kernels.hpp"

namespace rydcat::kernels {

namespace {

void axpy_real_scalar(double a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
  }
}

void diag_mul_scalar(const cplx* d, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = d[i].real(), di = d[i].imag();
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {dr * xr - di * xi, dr * xi + di * xr};
  }
}

void scale_by_scalar(const double* m, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= m[i];
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

cplx dot_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

constexpr KernelTable kScalar{Isa::scalar,    axpy_real_scalar, axpy_scalar,  diag_mul_scalar,
                              scale_by_scalar, norm_sq_scalar,  dot_scalar};

} // namespace

const KernelTable& scalar_table() { return kScalar; }

} // namespace rydcat::kernels
