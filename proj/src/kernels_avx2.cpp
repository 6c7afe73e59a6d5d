// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "rydcat/kernels.hpp"

#include <immintrin.h>

namespace rydcat::kernels {

namespace {

// Two complex<double> per __m256d, interleaved (re, im, re, im).

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

void axpy_real_avx2(double a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const std::size_t m = 2 * n;
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vy = _mm256_loadu_pd(yd + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(xd + i), vy);
    _mm256_storeu_pd(yd + i, vy);
  }
  for (; i < m; ++i) yd[i] += a * xd[i];
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    const __m256d swapped = _mm256_permute_pd(vx, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(ar, vx, _mm256_mul_pd(ai, swapped));
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * k), prod));
  }
  for (; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = {y[k].real() + a.real() * xr - a.imag() * xi, y[k].imag() + a.real() * xi + a.imag() * xr};
  }
}

void diag_mul_avx2(const cplx* d, const cplx* x, cplx* y, std::size_t n) {
  const double* dd = as_doubles(d);
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d vd = _mm256_loadu_pd(dd + 2 * k);
    const __m256d vx = _mm256_loadu_pd(xd + 2 * k);
    const __m256d dr = _mm256_movedup_pd(vd);
    const __m256d di = _mm256_permute_pd(vd, 0b1111);
    const __m256d swapped = _mm256_permute_pd(vx, 0b0101);
    _mm256_storeu_pd(yd + 2 * k, _mm256_fmaddsub_pd(dr, vx, _mm256_mul_pd(di, swapped)));
  }
  for (; k < n; ++k) {
    const double dr = d[k].real(), di = d[k].imag();
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = {dr * xr - di * xi, dr * xi + di * xr};
  }
}

void scale_by_avx2(const double* m, cplx* y, std::size_t n) {
  double* yd = as_doubles(y);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m128d pair = _mm_loadu_pd(m + k);
    const __m256d wide = _mm256_permute4x64_pd(_mm256_castpd128_pd256(pair), 0b01010000);
    _mm256_storeu_pd(yd + 2 * k, _mm256_mul_pd(wide, _mm256_loadu_pd(yd + 2 * k)));
  }
  for (; k < n; ++k) y[k] *= m[k];
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  const double* xd = as_doubles(x);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d a = _mm256_loadu_pd(xd + i);
    const __m256d b = _mm256_loadu_pd(xd + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 4 <= m; i += 4) {
    const __m256d a = _mm256_loadu_pd(xd + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) s += xd[i] * xd[i];
  return s;
}

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = as_doubles(a);
  const double* bd = as_doubles(b);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(ad + 2 * k);
    const __m256d vb = _mm256_loadu_pd(bd + 2 * k);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im);
  }
  // acc_im lanes: (ar*bi, ai*br, ...); imaginary part is even minus odd.
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double re = hsum(acc_re);
  double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
  for (; k < n; ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

constexpr KernelTable kAvx2{Isa::avx2,     axpy_real_avx2, axpy_avx2, diag_mul_avx2,
                            scale_by_avx2, norm_sq_avx2,   dot_avx2};

} // namespace

const KernelTable* avx2_table() { return &kAvx2; }

} // namespace rydcat::kernels
