#include "ptqm/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace ptqm::kernels {
namespace {

// Two interleaved complex doubles per __m256d: [re0, im0, re1, im1].
inline __m256d cmul(__m256d a, __m256d b) {
  __m256d ar = _mm256_movedup_pd(a);    // [re0, re0, re1, re1]
  __m256d ai = _mm256_unpackhi_pd(a, a);  // [im0, im0, im1, im1]
  __m256d bs = _mm256_permute_pd(b, 0x5);  // [im0', re0', im1', re1']
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

inline cplx reduce_pairs(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

cplx dot_avx2(cspan a, cspan b) {
  const std::size_t n = a.size();
  const double* pa = dp(a.data());
  const double* pb = dp(b.data());
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
    acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(pa + 2 * i + 4), _mm256_loadu_pd(pb + 2 * i + 4)));
  }
  for (; i + 2 <= n; i += 2)
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  cplx s = reduce_pairs(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

cplx dot3_avx2(cspan w, cspan a, cspan b) {
  const std::size_t n = w.size();
  const double* pw = dp(w.data());
  const double* pa = dp(a.data());
  const double* pb = dp(b.data());
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d t = cmul(_mm256_loadu_pd(pw + 2 * i), _mm256_loadu_pd(pa + 2 * i));
    acc = _mm256_add_pd(acc, cmul(t, _mm256_loadu_pd(pb + 2 * i)));
  }
  cplx s = reduce_pairs(acc);
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

void axpy_avx2(cplx alpha, cspan x, mspan y) {
  const std::size_t n = x.size();
  const double* px = dp(x.data());
  double* py = dp(y.data());
  const __m256d av = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d yi = _mm256_loadu_pd(py + 2 * i);
    yi = _mm256_add_pd(yi, cmul(av, _mm256_loadu_pd(px + 2 * i)));
    _mm256_storeu_pd(py + 2 * i, yi);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_avx2(cspan A, std::size_t rows, std::size_t cols, cspan x, mspan y) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dot_avx2(A.subspan(r * cols, cols), x);
}

void hadamard_avx2(cspan a, cspan b, mspan out) {
  const std::size_t n = a.size();
  const double* pa = dp(a.data());
  const double* pb = dp(b.data());
  double* po = dp(out.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(po + 2 * i, cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

double sum_abs2_avx2(cspan a) {
  const std::size_t n = a.size();
  const double* pa = dp(a.data());
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double out[4];
  _mm256_store_pd(out, acc);
  double s = out[0] + out[1] + out[2] + out[3];
  for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

}  // namespace

const Backend* avx2_backend() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
  static const Backend backend{
      "avx2",       dot_avx2,    dot3_avx2,     axpy_avx2,
      matvec_avx2,  hadamard_avx2, sum_abs2_avx2,
  };
  return &backend;
}

}  // namespace ptqm::kernels

#else

namespace ptqm::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace ptqm::kernels

#endif
