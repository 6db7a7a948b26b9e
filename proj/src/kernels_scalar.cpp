#include "ptqm/kernels.hpp"

namespace ptqm::kernels {
namespace {

cplx dot_scalar(cspan a, cspan b) {
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

cplx dot3_scalar(cspan w, cspan a, cspan b) {
  cplx s{};
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

void axpy_scalar(cplx alpha, cspan x, mspan y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void matvec_scalar(cspan A, std::size_t rows, std::size_t cols, cspan x, mspan y) {
  for (std::size_t r = 0; r < rows; ++r) {
    cplx s{};
    const cplx* row = A.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

void hadamard_scalar(cspan a, cspan b, mspan out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

double sum_abs2_scalar(cspan a) {
  double s = 0.0;
  for (const cplx& z : a) s += z.real() * z.real() + z.imag() * z.imag();
  return s;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar",         dot_scalar,      dot3_scalar,
      axpy_scalar,      matvec_scalar,   hadamard_scalar,
      sum_abs2_scalar,
  };
  return backend;
}

}  // namespace ptqm::kernels
