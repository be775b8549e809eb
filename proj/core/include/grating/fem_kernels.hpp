// P1 element kernels: barycentric gradients, stiffness/mass matrices, the
// plane-strain elasticity block and the traction of a P1 displacement field.
#pragma once

#include <array>
#include <complex>

#include "grating/geometry.hpp"

namespace grating {

using cplx = std::complex<double>;

struct P1Element {
  std::array<Vec2, 3> grad;  // gradients of the barycentric basis
  double area = 0.0;

  P1Element(Vec2 p0, Vec2 p1, Vec2 p2) {
    const double twice = cross(p1 - p0, p2 - p0);
    area = 0.5 * twice;
    grad[0] = {(p1.y - p2.y) / twice, (p2.x - p1.x) / twice};
    grad[1] = {(p2.y - p0.y) / twice, (p0.x - p2.x) / twice};
    grad[2] = {(p0.y - p1.y) / twice, (p1.x - p0.x) / twice};
  }
};

// S_ij = area * grad_i . grad_j
inline std::array<std::array<double, 3>, 3> p1_stiffness(const P1Element& el) {
  std::array<std::array<double, 3>, 3> s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = el.area * dot(el.grad[i], el.grad[j]);
  return s;
}

// M_ij = area/12 * (1 + delta_ij)
inline std::array<std::array<double, 3>, 3> p1_mass(double area) {
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = area / 12.0 * (i == j ? 2.0 : 1.0);
  return m;
}

// Integral over the element of E_{lambda,mu}(phi_j e_k, phi_i e_l):
//   (2mu+lambda)(u1,1 v1,1 + u2,2 v2,2) + mu(u1,2 v1,2 + u2,1 v2,1)
//   + lambda(u2,2 v1,1 + u1,1 v2,2) + mu(u2,1 v1,2 + u1,2 v2,1)
// Returned as block[l][k][i][j] with l the test and k the trial component.
struct ElasticityBlock {
  double b[2][2][3][3];
};

inline ElasticityBlock elasticity_block(const P1Element& el, double lambda, double mu) {
  ElasticityBlock blk{};
  for (int i = 0; i < 3; ++i) {
    const double gix = el.grad[i].x, giy = el.grad[i].y;
    for (int j = 0; j < 3; ++j) {
      const double gjx = el.grad[j].x, gjy = el.grad[j].y;
      blk.b[0][0][i][j] = el.area * ((2.0 * mu + lambda) * gjx * gix + mu * gjy * giy);
      blk.b[1][1][i][j] = el.area * ((2.0 * mu + lambda) * gjy * giy + mu * gjx * gix);
      // trial component 1, test component 2
      blk.b[1][0][i][j] = el.area * (lambda * gjx * giy + mu * gjy * gix);
      // trial component 2, test component 1
      blk.b[0][1][i][j] = el.area * (lambda * gjy * gix + mu * gjx * giy);
    }
  }
  return blk;
}

// Stress of a constant-gradient displacement: sigma = lambda tr(eps) I + 2 mu eps.
// g[k][j] = d u_k / d x_j.
inline std::array<std::array<cplx, 2>, 2> p1_stress(const std::array<std::array<cplx, 2>, 2>& g,
                                                    double lambda, double mu) {
  const cplx div = g[0][0] + g[1][1];
  std::array<std::array<cplx, 2>, 2> s{};
  s[0][0] = lambda * div + 2.0 * mu * g[0][0];
  s[1][1] = lambda * div + 2.0 * mu * g[1][1];
  s[0][1] = mu * (g[0][1] + g[1][0]);
  s[1][0] = s[0][1];
  return s;
}

// Traction T u = sigma(u) nu for a P1 field (constant per element).
inline std::array<cplx, 2> traction(const std::array<std::array<cplx, 2>, 2>& grad_u,
                                    double lambda, double mu, Vec2 nu) {
  const auto s = p1_stress(grad_u, lambda, mu);
  return {s[0][0] * nu.x + s[0][1] * nu.y, s[1][0] * nu.x + s[1][1] * nu.y};
}

}  // namespace grating
