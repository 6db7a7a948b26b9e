#include "ptqm/hamiltonian.hpp"

#include <cmath>

#include "ptqm/kernels.hpp"

namespace ptqm {

cvec OperatorKernel::apply(cspan f) const {
  if (f.size() != dim) throw std::invalid_argument("kernel apply: size mismatch");
  cvec out(dim);
  kernels::active().matvec(entries, dim, dim, f, out);
  return out;
}

double OperatorKernel::frobenius_norm() const {
  return std::sqrt(kernels::active().sum_abs2(entries));
}

OperatorKernel zero_kernel(KernelLabel label, model::DomainPtr domain) {
  OperatorKernel k;
  k.label = label;
  k.dim = domain->count;
  k.domain = std::move(domain);
  k.entries.assign(k.dim * k.dim, cplx{});
  return k;
}

OperatorKernel identity_kernel(model::DomainPtr domain) {
  OperatorKernel k = zero_kernel(KernelLabel::Custom, std::move(domain));
  for (std::size_t i = 0; i < k.dim; ++i) k.at(i, i) = 1.0;
  return k;
}

OperatorKernel parity_kernel(model::DomainPtr domain) {
  OperatorKernel k = zero_kernel(KernelLabel::P, domain);
  for (std::size_t i = 0; i < k.dim; ++i) k.at(i, domain->parity_index[i]) = 1.0;
  return k;
}

cvec BandedOperator::apply(cspan f) const {
  if (f.size() != dim) throw std::invalid_argument("banded apply: size mismatch");
  cvec out(dim, cplx{});
  const int w = halfwidth;
  for (std::size_t r = 0; r < dim; ++r) {
    cplx s{};
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(-w, -static_cast<std::ptrdiff_t>(r));
    const std::ptrdiff_t hi =
        std::min<std::ptrdiff_t>(w, static_cast<std::ptrdiff_t>(dim - 1 - r));
    for (std::ptrdiff_t o = lo; o <= hi; ++o)
      s += at(r, static_cast<int>(o)) * f[r + o];
    out[r] = s;
  }
  return out;
}

OperatorKernel BandedOperator::to_dense(KernelLabel label, model::DomainPtr domain) const {
  OperatorKernel k = zero_kernel(label, std::move(domain));
  const int w = halfwidth;
  for (std::size_t r = 0; r < dim; ++r) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(-w, -static_cast<std::ptrdiff_t>(r));
    const std::ptrdiff_t hi =
        std::min<std::ptrdiff_t>(w, static_cast<std::ptrdiff_t>(dim - 1 - r));
    for (std::ptrdiff_t o = lo; o <= hi; ++o)
      k.at(r, r + o) = at(r, static_cast<int>(o));
  }
  return k;
}

}  // namespace ptqm

namespace ptqm::solver {
namespace {

bool is_integer(double N) { return N == std::round(N); }

cplx integer_power(cplx z, long n) {
  cplx acc(1.0, 0.0);
  for (long i = 0; i < n; ++i) acc *= z;
  return acc;
}

}  // namespace

cplx potential_value(double N, cplx x) {
  const cplx ix = cplx(0.0, 1.0) * x;
  if (is_integer(N)) return -integer_power(ix, std::lround(N));
  return -std::pow(ix, N);
}

cplx potential_derivative(double N, cplx x) {
  const cplx ix = cplx(0.0, 1.0) * x;
  if (is_integer(N))
    return cplx(0.0, -N) * integer_power(ix, std::lround(N) - 1);
  return cplx(0.0, -N) * std::pow(ix, N - 1.0);
}

HamiltonianSpec make_hamiltonian_spec(double N, model::DomainPtr domain, int stencil_order) {
  if (!(N >= 2.0)) throw std::invalid_argument("hamiltonian: N must be >= 2");
  if (stencil_order != 2 && stencil_order != 4 && stencil_order != 6)
    throw std::invalid_argument("hamiltonian: stencil order must be 2, 4 or 6");
  HamiltonianSpec spec;
  spec.exponent = N;
  spec.domain = std::move(domain);
  spec.stencil_order = stencil_order;
  spec.potential.resize(spec.domain->count);
  for (std::size_t k = 0; k < spec.domain->count; ++k)
    spec.potential[k] = potential_value(N, spec.domain->points[k]);
  return spec;
}

cvec fornberg_weights(cplx z0, cspan nodes, int m) {
  // Fornberg's recursion, valid for arbitrary distinct complex nodes.
  const std::size_t n = nodes.size();
  std::vector<cvec> c(n, cvec(static_cast<std::size_t>(m) + 1, cplx{}));
  cplx c1(1.0, 0.0);
  cplx c4 = nodes[0] - z0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    cplx c2(1.0, 0.0);
    const cplx c5 = c4;
    c4 = nodes[i] - z0;
    for (std::size_t j = 0; j < i; ++j) {
      const cplx c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  cvec w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

BandedOperator derivative_operator(const model::SpatialDomain& d, int derivative, int order) {
  if (order != 2 && order != 4 && order != 6)
    throw std::invalid_argument("derivative operator: order must be 2, 4 or 6");
  const int w = order / 2;
  if (d.count < static_cast<std::size_t>(2 * w + 1))
    throw std::invalid_argument("derivative operator: grid too small for stencil");
  BandedOperator op;
  op.dim = d.count;
  op.halfwidth = w;
  op.bands.assign(d.count * (2 * w + 1), cplx{});
  cvec nodes(2 * w + 1);
  for (std::size_t r = 0; r < d.count; ++r) {
    const std::ptrdiff_t rr = static_cast<std::ptrdiff_t>(r);
    for (int o = -w; o <= w; ++o)
      nodes[o + w] = model::extended_point(d, rr + o);
    const cvec weights = fornberg_weights(d.points[r], nodes, derivative);
    for (int o = -w; o <= w; ++o) {
      const std::ptrdiff_t col = rr + o;
      if (col < 0 || col >= static_cast<std::ptrdiff_t>(d.count)) continue;  // Dirichlet ghost
      op.at(r, o) = weights[o + w];
    }
  }
  return op;
}

BandedOperator hamiltonian_banded(const HamiltonianSpec& spec) {
  const model::SpatialDomain& d = *spec.domain;
  if (d.count < 8) throw std::invalid_argument("hamiltonian: domain needs at least 8 points");
  BandedOperator h = derivative_operator(d, 2, spec.stencil_order);
  for (cplx& c : h.bands) c = -c;  // kinetic term -d2/dx2
  for (std::size_t r = 0; r < d.count; ++r) h.at(r, 0) += spec.potential[r];
  return h;
}

OperatorKernel hamiltonian_matrix(const HamiltonianSpec& spec) {
  return hamiltonian_banded(spec).to_dense(KernelLabel::H, spec.domain);
}

}  // namespace ptqm::solver
