#pragma once

#include <cstddef>

#include "ptqm/domain.hpp"
#include "ptqm/types.hpp"

namespace ptqm {

enum class KernelLabel { H, P, C, X, Pmom, Custom };

/// Dense matrix representation of an operator on the domain samples.
/// For every label except C the matrix acts on sampled functions directly
/// (apply). The C kernel is a bilinear kernel C(x_k, x_l): its action picks
/// up the quadrature weights (see ptalg::apply_c).
struct OperatorKernel {
  KernelLabel label = KernelLabel::Custom;
  model::DomainPtr domain;
  std::size_t dim = 0;
  cvec entries;  // row-major dim x dim

  cplx& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

  cvec apply(cspan f) const;

  double frobenius_norm() const;
};

OperatorKernel zero_kernel(KernelLabel label, model::DomainPtr domain);
OperatorKernel identity_kernel(model::DomainPtr domain);
OperatorKernel parity_kernel(model::DomainPtr domain);

/// Banded row-major storage (2*halfwidth+1 coefficients per row, clipped at
/// the edges) for the difference operators; cheaper to apply than the dense
/// kernel and the natural form for the Crank-Nicolson solver.
struct BandedOperator {
  std::size_t dim = 0;
  int halfwidth = 0;
  cvec bands;  // row r, offset o in [-w, w] at bands[r*(2w+1) + (o+w)]

  cplx& at(std::size_t r, int offset) { return bands[r * (2 * halfwidth + 1) + offset + halfwidth]; }
  const cplx& at(std::size_t r, int offset) const {
    return bands[r * (2 * halfwidth + 1) + offset + halfwidth];
  }

  cvec apply(cspan f) const;
  OperatorKernel to_dense(KernelLabel label, model::DomainPtr domain) const;
};

}  // namespace ptqm
