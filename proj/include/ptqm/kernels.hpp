#pragma once

#include <cstddef>

#include "ptqm/types.hpp"

namespace ptqm::kernels {

/// Data-parallel complex kernels behind the hot loops: quadrature products,
/// dense kernel application and eigenbasis reconstruction. The scalar
/// reference implementation always exists; SIMD variants are compiled per
/// architecture and selected at runtime. All products are bilinear -- no
/// implicit conjugation anywhere.
struct Backend {
  const char* name;
  // sum_k a_k b_k
  cplx (*dot)(cspan a, cspan b);
  // sum_k w_k a_k b_k
  cplx (*dot3)(cspan w, cspan a, cspan b);
  // y += alpha * x
  void (*axpy)(cplx alpha, cspan x, mspan y);
  // y = A x with A row-major rows x cols
  void (*matvec)(cspan A, std::size_t rows, std::size_t cols, cspan x, mspan y);
  // out_k = a_k b_k
  void (*hadamard)(cspan a, cspan b, mspan out);
  // sum_k |a_k|^2
  double (*sum_abs2)(cspan a);
};

const Backend& scalar_backend();

/// AVX2+FMA variant; nullptr when the binary or the CPU lacks support.
const Backend* avx2_backend();

/// Dispatched backend. Chooses the widest supported variant; the environment
/// variable PTQM_KERNEL={scalar,avx2} overrides the choice.
const Backend& active();

}  // namespace ptqm::kernels
