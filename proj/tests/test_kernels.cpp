#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ptqm/kernels.hpp"

using namespace ptqm;

namespace {

cvec random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  cvec v(n);
  for (cplx& z : v) z = cplx(dist(rng), dist(rng));
  return v;
}

double scale_of(cspan v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::abs(z);
  return s;
}

}  // namespace

TEST_CASE("scalar and simd backends agree on every operation") {
  const kernels::Backend& ref = kernels::scalar_backend();
  const kernels::Backend* simd = kernels::avx2_backend();
  if (simd == nullptr) {
    MESSAGE("no SIMD backend on this host; scalar-only");
    return;
  }

  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{7},
                        std::size_t{8}, std::size_t{64}, std::size_t{1001}}) {
    CAPTURE(n);
    const cvec a = random_vec(n, 11 * n + 1);
    const cvec b = random_vec(n, 13 * n + 2);
    const cvec w = random_vec(n, 17 * n + 3);
    const double tol = 1e-12 * (scale_of(a) + scale_of(b) + scale_of(w) + 1.0);

    CHECK(std::abs(ref.dot(a, b) - simd->dot(a, b)) < tol);
    CHECK(std::abs(ref.dot3(w, a, b) - simd->dot3(w, a, b)) < tol);
    CHECK(ref.sum_abs2(a) == doctest::Approx(simd->sum_abs2(a)).epsilon(1e-13));

    cvec y1 = b, y2 = b;
    const cplx alpha(0.7, -1.3);
    ref.axpy(alpha, a, y1);
    simd->axpy(alpha, a, y2);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < tol);

    cvec h1(n), h2(n);
    ref.hadamard(a, b, h1);
    simd->hadamard(a, b, h2);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(h1[i] - h2[i]) < tol);
  }
}

TEST_CASE("matvec backends agree on a rectangular matrix") {
  const kernels::Backend& ref = kernels::scalar_backend();
  const kernels::Backend* simd = kernels::avx2_backend();
  if (simd == nullptr) return;

  const std::size_t rows = 37, cols = 53;
  const cvec A = random_vec(rows * cols, 5);
  const cvec x = random_vec(cols, 6);
  cvec y1(rows), y2(rows);
  ref.matvec(A, rows, cols, x, y1);
  simd->matvec(A, rows, cols, x, y2);
  for (std::size_t i = 0; i < rows; ++i)
    CHECK(std::abs(y1[i] - y2[i]) < 1e-12 * (scale_of(x) + 1.0));
}

TEST_CASE("dot is bilinear and symmetric") {
  const kernels::Backend& k = kernels::active();
  const cvec a = random_vec(100, 1);
  const cvec b = random_vec(100, 2);
  const cvec c = random_vec(100, 3);
  const cplx alpha(0.3, 0.9);

  CHECK(std::abs(k.dot(a, b) - k.dot(b, a)) < 1e-13 * (scale_of(a) + scale_of(b)));

  cvec ab(100);
  for (std::size_t i = 0; i < 100; ++i) ab[i] = b[i] + alpha * c[i];
  const cplx lhs = k.dot(a, ab);
  const cplx rhs = k.dot(a, b) + alpha * k.dot(a, c);
  CHECK(std::abs(lhs - rhs) < 1e-12 * (std::abs(lhs) + 1.0));
}

TEST_CASE("dot3 against a hand-rolled triple sum") {
  const kernels::Backend& k = kernels::active();
  const cvec a = random_vec(17, 4);
  const cvec b = random_vec(17, 5);
  const cvec w = random_vec(17, 6);
  cplx expect{};
  for (std::size_t i = 0; i < 17; ++i) expect += w[i] * a[i] * b[i];
  CHECK(std::abs(k.dot3(w, a, b) - expect) < 1e-13 * (std::abs(expect) + 1.0));
}

TEST_CASE("active backend resolves to a known implementation") {
  const kernels::Backend& k = kernels::active();
  const bool known = std::string(k.name) == "scalar" || std::string(k.name) == "avx2";
  CHECK(known);
}
