#include "ptqm/domain.hpp"

#include <cmath>
#include <numbers>

#include "ptqm/kernels.hpp"

namespace ptqm::model {
namespace {

void check_grid(double L, std::size_t m_grid, std::size_t minimum) {
  if (!(L > 0.0)) throw std::invalid_argument("domain: half-length L must be positive");
  if (m_grid < minimum || m_grid % 2 != 0)
    throw std::invalid_argument("domain: M_grid must be even and at least " + std::to_string(minimum));
}

std::vector<double> uniform_param(double L, std::size_t m) {
  // s_k = -L + k h with h = 2L/(m-1); m even keeps s = 0 between samples.
  std::vector<double> s(m);
  const double h = 2.0 * L / static_cast<double>(m - 1);
  for (std::size_t k = 0; k < m; ++k) s[k] = -L + h * static_cast<double>(k);
  // Enforce exact mirror symmetry of the parameter grid.
  for (std::size_t k = 0; k < m / 2; ++k) s[m - 1 - k] = -s[k];
  return s;
}

std::vector<std::size_t> reversal(std::size_t m) {
  std::vector<std::size_t> idx(m);
  for (std::size_t k = 0; k < m; ++k) idx[k] = m - 1 - k;
  return idx;
}

}  // namespace

double wedge_angle_for(double N) {
  return (N - 2.0) / (N + 2.0) * std::numbers::pi / 2.0;
}

SpatialDomain make_real_domain(double L, std::size_t m_grid) {
  check_grid(L, m_grid, 4);
  SpatialDomain d;
  d.kind = DomainKind::RealLine;
  d.extent = L;
  d.count = m_grid;
  d.param = uniform_param(L, m_grid);
  const double h = d.param[1] - d.param[0];
  d.points.resize(m_grid);
  d.weights.assign(m_grid, cplx(h, 0.0));
  d.weights.front() = d.weights.back() = cplx(h / 2.0, 0.0);
  d.metric.assign(m_grid, cplx(1.0, 0.0));
  for (std::size_t k = 0; k < m_grid; ++k) d.points[k] = cplx(d.param[k], 0.0);
  d.parity_index = reversal(m_grid);
  return d;
}

SpatialDomain make_wedge_domain(double N, double L, std::size_t m_grid) {
  if (!(N >= 2.0)) throw std::invalid_argument("wedge domain: N must be >= 2");
  check_grid(L, m_grid, 16);
  const double theta = wedge_angle_for(N);
  const cplx right = std::exp(cplx(0.0, -theta));
  const cplx left = std::exp(cplx(0.0, theta));

  SpatialDomain d;
  d.kind = DomainKind::WedgeRays;
  d.extent = L;
  d.count = m_grid;
  d.wedge_angle = theta;
  d.exponent_hint = N;
  d.param = uniform_param(L, m_grid);
  const double h = d.param[1] - d.param[0];
  d.points.resize(m_grid);
  d.metric.resize(m_grid);
  for (std::size_t k = 0; k < m_grid; ++k) {
    const cplx dir = d.param[k] > 0.0 ? right : left;
    d.points[k] = d.param[k] * dir;
    d.metric[k] = dir;
  }
  // Per-ray quadrature for nodes at (j + 1/2) h: Gregory-corrected trapezoid
  // on [h/2, L] (fourth order at the inner end) plus the corner panel
  // (0, h/2) integrated from the cubic extrapolant through the four nearest
  // samples. PT norms of high wedge modes cancel almost completely, so the
  // corner error has to sit well below the trapezoid's O(h^2).
  std::vector<double> ray(m_grid / 2, h);
  ray[0] = 505.0 / 384.0 * h;
  ray[1] = 197.0 / 384.0 * h;
  ray[2] = 475.0 / 384.0 * h;
  ray[3] = 359.0 / 384.0 * h;
  ray.back() = h / 2.0;
  d.weights.resize(m_grid);
  const std::size_t half = m_grid / 2;
  for (std::size_t j = 0; j < half; ++j) {
    d.weights[half + j] = ray[j] * right;       // right ray, s ascending
    d.weights[half - 1 - j] = ray[j] * left;    // mirror on the left ray
  }
  d.parity_index = reversal(m_grid);
  return d;
}

cvec apply_parity(const SpatialDomain& d, cspan f) {
  if (f.size() != d.count) throw std::invalid_argument("apply_parity: sample count mismatch");
  cvec out(d.count);
  for (std::size_t k = 0; k < d.count; ++k) out[k] = f[d.parity_index[k]];
  return out;
}

cvec apply_pt(const SpatialDomain& d, cspan f) {
  if (f.size() != d.count) throw std::invalid_argument("apply_pt: sample count mismatch");
  cvec out(d.count);
  for (std::size_t k = 0; k < d.count; ++k) out[k] = std::conj(f[d.parity_index[k]]);
  return out;
}

cplx extended_point(const SpatialDomain& d, std::ptrdiff_t index) {
  if (index >= 0 && static_cast<std::size_t>(index) < d.count)
    return d.points[static_cast<std::size_t>(index)];
  const double h = d.spacing();
  const double s = index < 0 ? d.param.front() + h * static_cast<double>(index)
                             : d.param.back() + h * static_cast<double>(index - static_cast<std::ptrdiff_t>(d.count) + 1);
  if (d.kind == DomainKind::RealLine) return cplx(s, 0.0);
  const cplx dir = std::exp(cplx(0.0, s > 0.0 ? -d.wedge_angle : d.wedge_angle));
  return s * dir;
}

double weighted_norm(const SpatialDomain& d, cspan f) {
  double s = 0.0;
  for (std::size_t k = 0; k < d.count; ++k)
    s += std::abs(d.weights[k]) * std::norm(f[k]);
  return std::sqrt(s);
}

cplx integrate(const SpatialDomain& d, cspan f) {
  return kernels::active().dot(d.weights, f);
}

}  // namespace ptqm::model
