#include "grating/exact.hpp"

#include <Eigen/Dense>

#include "grating/fem_kernels.hpp"
#include "grating/quadrature.hpp"

namespace grating {

namespace {
const cplx kI(0.0, 1.0);
}

cplx ExactFlatSolution::pressure(Vec2 x) const {
  return a1 * std::exp(kI * (alpha * x.x + beta0 * x.y));
}

std::array<cplx, 2> ExactFlatSolution::grad_pressure(Vec2 x) const {
  const cplx p = pressure(x);
  return {kI * alpha * p, kI * beta0 * p};
}

std::array<cplx, 2> ExactFlatSolution::displacement(Vec2 x) const {
  const cplx e1 = std::exp(kI * (alpha * x.x - beta1_0 * x.y));
  const cplx e2 = std::exp(kI * (alpha * x.x - beta2_0 * x.y));
  return {a2 * alpha * e1 + a3 * beta2_0 * e2, -a2 * beta1_0 * e1 + a3 * alpha * e2};
}

std::array<std::array<cplx, 2>, 2> ExactFlatSolution::grad_displacement(Vec2 x) const {
  const cplx e1 = std::exp(kI * (alpha * x.x - beta1_0 * x.y));
  const cplx e2 = std::exp(kI * (alpha * x.x - beta2_0 * x.y));
  // u = a2 (alpha, -beta1)^T e1 + a3 (beta2, alpha)^T e2,
  // wavevectors (alpha, -beta1) and (alpha, -beta2).
  std::array<std::array<cplx, 2>, 2> g{};
  const cplx v1[2] = {a2 * alpha, -a2 * beta1_0};
  const cplx v2[2] = {a3 * beta2_0, a3 * alpha};
  const cplx k1[2] = {alpha, -beta1_0};
  const cplx k2[2] = {alpha, -beta2_0};
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) g[k][j] = kI * (v1[k] * k1[j] * e1 + v2[k] * k2[j] * e2);
  return g;
}

ExactFlatSolution ExactFlatSolution::zero() {
  ExactFlatSolution s;
  s.a1 = s.a2 = s.a3 = cplx(0.0, 0.0);
  s.alpha = 0.0;
  s.beta0 = s.beta1_0 = s.beta2_0 = cplx(0.0, 0.0);
  return s;
}

ExactFlatSolution exact_flat(const PhysicalParams& params) {
  params.validate();
  const ModeTable modes = derive_modes(params, 0);
  const Mode& m0 = modes.mode(0);

  ExactFlatSolution s;
  s.alpha = params.alpha();
  s.beta0 = m0.beta_n;
  s.beta1_0 = m0.beta1_n;
  s.beta2_0 = m0.beta2_n;

  const double w2 = params.omega * params.omega;
  const double mu = params.mu;
  const double lam = params.lambda;
  const double kp2 = params.kappa1() * params.kappa1();
  const double ks2 = params.kappa2() * params.kappa2();
  const cplx b0 = s.beta0, b1 = s.beta1_0, b2 = s.beta2_0;
  const double al = s.alpha;

  Eigen::Matrix3cd A;
  A << kI * b0, params.rho_f * w2 * b1, -params.rho_f * w2 * al,
      cplx(0.0, 0.0), 2.0 * kI * mu * al * b1, 2.0 * kI * mu * b2 * b2 - kI * mu * ks2,
      cplx(1.0, 0.0), 2.0 * kI * mu * b1 * b1 + kI * lam * kp2, -2.0 * kI * mu * al * b2;
  Eigen::Vector3cd rhs(kI * b0, cplx(0.0, 0.0), cplx(-1.0, 0.0));

  Eigen::FullPivLU<Eigen::Matrix3cd> lu(A);
  if (!lu.isInvertible()) throw SingularSystem("flat-interface coefficient system is singular");
  const Eigen::Vector3cd a = lu.solve(rhs);
  s.a1 = a(0);
  s.a2 = a(1);
  s.a3 = a(2);
  return s;
}

double coupled_h1_error(const Solution& solution, const ExactFlatSolution& exact,
                        const Mesh& mesh, const PhysicalParams& params) {
  const auto rule = triangle_rule(6);
  double acc = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Triangle& T = mesh.tri[static_cast<std::size_t>(t)];
    const Vec2 p0 = mesh.vertex[static_cast<std::size_t>(T.v[0])];
    const Vec2 p1 = mesh.vertex[static_cast<std::size_t>(T.v[1])];
    const Vec2 p2 = mesh.vertex[static_cast<std::size_t>(T.v[2])];
    const P1Element el(p0, p1, p2);

    if (T.region == Region::Fluid) {
      const cplx pv[3] = {solution.p[static_cast<std::size_t>(T.v[0])],
                          solution.p[static_cast<std::size_t>(T.v[1])],
                          solution.p[static_cast<std::size_t>(T.v[2])]};
      cplx gh[2] = {0.0, 0.0};
      for (int k = 0; k < 3; ++k) {
        gh[0] += pv[k] * el.grad[k].x;
        gh[1] += pv[k] * el.grad[k].y;
      }
      for (const QuadPointTri& q : rule) {
        const Vec2 x{q.l1 * p0.x + q.l2 * p1.x + q.l3 * p2.x,
                     q.l1 * p0.y + q.l2 * p1.y + q.l3 * p2.y};
        const cplx ph = q.l1 * pv[0] + q.l2 * pv[1] + q.l3 * pv[2];
        const cplx ep = ph - exact.pressure(x);
        const auto ge = exact.grad_pressure(x);
        const cplx eg[2] = {gh[0] - ge[0], gh[1] - ge[1]};
        acc += q.w * el.area * (std::norm(ep) + std::norm(eg[0]) + std::norm(eg[1]));
      }
    } else {
      const std::array<cplx, 2> uv[3] = {solution.u[static_cast<std::size_t>(T.v[0])],
                                         solution.u[static_cast<std::size_t>(T.v[1])],
                                         solution.u[static_cast<std::size_t>(T.v[2])]};
      std::array<std::array<cplx, 2>, 2> gh{};
      for (int k = 0; k < 3; ++k)
        for (int c = 0; c < 2; ++c) {
          gh[c][0] += uv[k][c] * el.grad[k].x;
          gh[c][1] += uv[k][c] * el.grad[k].y;
        }
      for (const QuadPointTri& q : rule) {
        const Vec2 x{q.l1 * p0.x + q.l2 * p1.x + q.l3 * p2.x,
                     q.l1 * p0.y + q.l2 * p1.y + q.l3 * p2.y};
        const auto ue = exact.displacement(x);
        const auto ge = exact.grad_displacement(x);
        const cplx eu[2] = {q.l1 * uv[0][0] + q.l2 * uv[1][0] + q.l3 * uv[2][0] - ue[0],
                            q.l1 * uv[0][1] + q.l2 * uv[1][1] + q.l3 * uv[2][1] - ue[1]};
        std::array<std::array<cplx, 2>, 2> eg{};
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j) eg[k][j] = gh[k][j] - ge[k][j];
        const cplx div = eg[0][0] + eg[1][1];
        double sym = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j) sym += std::norm(eg[k][j] + eg[j][k]);
        acc += q.w * el.area *
               (params.lambda * std::norm(div) + 0.5 * params.mu * sym + std::norm(eu[0]) +
                std::norm(eu[1]));
      }
    }
  }
  return std::sqrt(acc);
}

}  // namespace grating
