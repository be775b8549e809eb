#include "grating/estimator.hpp"

#include <cmath>

#include "grating/fem_kernels.hpp"
#include "grating/quadrature.hpp"

namespace grating {

namespace {

const cplx kI(0.0, 1.0);

struct TriData {
  std::array<cplx, 2> grad_p{};                 // fluid
  std::array<std::array<cplx, 2>, 2> grad_u{};  // solid, [comp][deriv]
};

std::vector<TriData> element_gradients(const Mesh& mesh, const Solution& sol) {
  std::vector<TriData> out(static_cast<std::size_t>(mesh.num_triangles()));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Triangle& T = mesh.tri[static_cast<std::size_t>(t)];
    const P1Element el(mesh.vertex[static_cast<std::size_t>(T.v[0])],
                       mesh.vertex[static_cast<std::size_t>(T.v[1])],
                       mesh.vertex[static_cast<std::size_t>(T.v[2])]);
    TriData& d = out[static_cast<std::size_t>(t)];
    if (T.region == Region::Fluid) {
      for (int k = 0; k < 3; ++k) {
        const cplx pv = sol.p[static_cast<std::size_t>(T.v[k])];
        d.grad_p[0] += pv * el.grad[k].x;
        d.grad_p[1] += pv * el.grad[k].y;
      }
    } else {
      for (int k = 0; k < 3; ++k) {
        const auto& uv = sol.u[static_cast<std::size_t>(T.v[k])];
        for (int c = 0; c < 2; ++c) {
          d.grad_u[c][0] += uv[c] * el.grad[k].x;
          d.grad_u[c][1] += uv[c] * el.grad[k].y;
        }
      }
    }
  }
  return out;
}

Vec2 outward_normal(const Mesh& mesh, int t, const Edge& e) {
  const Vec2 a = mesh.vertex[static_cast<std::size_t>(e.a)];
  const Vec2 b = mesh.vertex[static_cast<std::size_t>(e.b)];
  const Vec2 tg = b - a;
  const double h = norm(tg);
  Vec2 n{tg.y / h, -tg.x / h};
  const Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const Vec2 c = mesh.centroid(t);
  if (dot(n, {c.x - mid.x, c.y - mid.y}) > 0.0) n = {-n.x, -n.y};
  return n;
}

cplx dot_n(const std::array<cplx, 2>& g, Vec2 n) { return g[0] * n.x + g[1] * n.y; }

}  // namespace

double element_residual(const Mesh& mesh, int t, const Solution& solution,
                        const PhysicalParams& params) {
  const Triangle& T = mesh.tri[static_cast<std::size_t>(t)];
  const double area = mesh.area(t);
  const auto mass = p1_mass(area);
  const double hK = mesh.diameter(t);
  double norm_sq = 0.0;
  if (T.region == Region::Fluid) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        norm_sq += mass[i][j] * std::real(std::conj(solution.p[static_cast<std::size_t>(T.v[i])]) *
                                          solution.p[static_cast<std::size_t>(T.v[j])]);
    return hK * params.kappa * params.kappa * std::sqrt(std::max(0.0, norm_sq));
  }
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        norm_sq +=
            mass[i][j] * std::real(std::conj(solution.u[static_cast<std::size_t>(T.v[i])][c]) *
                                   solution.u[static_cast<std::size_t>(T.v[j])][c]);
  return hK * params.rho * params.omega * params.omega * std::sqrt(std::max(0.0, norm_sq));
}

JumpNorms jump_residuals(const Mesh& mesh, const Solution& solution, const ModeTable& modes,
                         const PhysicalParams& params, int gauss_points,
                         double incident_scale) {
  const auto rule = gauss_rule(gauss_points);
  const auto grads = element_gradients(mesh, solution);
  const double w2 = params.omega * params.omega;
  const cplx phase = std::exp(cplx(0.0, params.alpha() * mesh.geometry.period));

  const DtnSeries dtn_a = DtnSeries::acoustic(mesh, modes, solution);
  const DtnSeries dtn_s = DtnSeries::elastic(mesh, modes, solution);

  JumpNorms jn;
  jn.acoustic_sq.assign(mesh.edge.size(), 0.0);
  jn.elastic_sq.assign(mesh.edge.size(), 0.0);

  auto edge_l2sq_scalar = [&](const Edge& e, auto&& f) {
    const Vec2 a = mesh.vertex[static_cast<std::size_t>(e.a)];
    const Vec2 b = mesh.vertex[static_cast<std::size_t>(e.b)];
    const double h = norm(b - a);
    double s = 0.0;
    for (const QuadPoint1D& q : rule) {
      const Vec2 x{a.x + q.t * (b.x - a.x), a.y + q.t * (b.y - a.y)};
      s += q.w * h * std::norm(f(x, q.t));
    }
    return s;
  };
  auto edge_l2sq_vector = [&](const Edge& e, auto&& f) {
    const Vec2 a = mesh.vertex[static_cast<std::size_t>(e.a)];
    const Vec2 b = mesh.vertex[static_cast<std::size_t>(e.b)];
    const double h = norm(b - a);
    double s = 0.0;
    for (const QuadPoint1D& q : rule) {
      const Vec2 x{a.x + q.t * (b.x - a.x), a.y + q.t * (b.y - a.y)};
      const std::array<cplx, 2> v = f(x, q.t);
      s += q.w * h * (std::norm(v[0]) + std::norm(v[1]));
    }
    return s;
  };

  for (std::size_t ei = 0; ei < mesh.edge.size(); ++ei) {
    const Edge& e = mesh.edge[ei];
    switch (e.cls) {
      case EdgeClass::InteriorFluid: {
        const Vec2 n1 = outward_normal(mesh, e.tri[0], e);
        const cplx j = -(dot_n(grads[static_cast<std::size_t>(e.tri[0])].grad_p, n1) +
                         dot_n(grads[static_cast<std::size_t>(e.tri[1])].grad_p,
                               {-n1.x, -n1.y}));
        const double h = norm(mesh.vertex[static_cast<std::size_t>(e.b)] -
                              mesh.vertex[static_cast<std::size_t>(e.a)]);
        jn.acoustic_sq[ei] = h * std::norm(j);
        break;
      }
      case EdgeClass::InteriorSolid: {
        const Vec2 n1 = outward_normal(mesh, e.tri[0], e);
        const auto t1 = traction(grads[static_cast<std::size_t>(e.tri[0])].grad_u, params.lambda,
                                 params.mu, n1);
        const auto t2 = traction(grads[static_cast<std::size_t>(e.tri[1])].grad_u, params.lambda,
                                 params.mu, {-n1.x, -n1.y});
        const double h = norm(mesh.vertex[static_cast<std::size_t>(e.b)] -
                              mesh.vertex[static_cast<std::size_t>(e.a)]);
        jn.elastic_sq[ei] = h * (std::norm(t1[0] + t2[0]) + std::norm(t1[1] + t2[1]));
        break;
      }
      case EdgeClass::Interface: {
        const int tf = (mesh.tri[static_cast<std::size_t>(e.tri[0])].region == Region::Fluid)
                           ? e.tri[0]
                           : e.tri[1];
        const int ts = (tf == e.tri[0]) ? e.tri[1] : e.tri[0];
        Vec2 n = outward_normal(mesh, tf, e);
        n = {-n.x, -n.y};  // from solid into fluid
        const Vec2 d = params.incident_direction();
        const cplx dn_fac = kI * params.kappa * (d.x * n.x + d.y * n.y);
        const auto& gp = grads[static_cast<std::size_t>(tf)].grad_p;
        const auto tu = traction(grads[static_cast<std::size_t>(ts)].grad_u, params.lambda,
                                 params.mu, n);
        const cplx pa = solution.p[static_cast<std::size_t>(e.a)];
        const cplx pb = solution.p[static_cast<std::size_t>(e.b)];
        const std::array<cplx, 2> ua = solution.u[static_cast<std::size_t>(e.a)];
        const std::array<cplx, 2> ub = solution.u[static_cast<std::size_t>(e.b)];
        jn.acoustic_sq[ei] = edge_l2sq_scalar(e, [&](Vec2 x, double t) {
          const cplx un = (1.0 - t) * (ua[0] * n.x + ua[1] * n.y) +
                          t * (ub[0] * n.x + ub[1] * n.y);
          return 2.0 * (incident_scale * dn_fac * params.incident(x) + dot_n(gp, n) -
                        params.rho_f * w2 * un);
        });
        jn.elastic_sq[ei] = edge_l2sq_vector(e, [&](Vec2 x, double t) -> std::array<cplx, 2> {
          const cplx ptot = incident_scale * params.incident(x) + (1.0 - t) * pa + t * pb;
          return {-2.0 * (ptot * n.x + tu[0]), -2.0 * (ptot * n.y + tu[1])};
        });
        break;
      }
      case EdgeClass::Top: {
        const auto& gp = grads[static_cast<std::size_t>(e.tri[0])].grad_p;
        const Vec2 nu{0.0, 1.0};
        jn.acoustic_sq[ei] = edge_l2sq_scalar(e, [&](Vec2 x, double) {
          return 2.0 * (dtn_a.eval_scalar(x.x) - dot_n(gp, nu));
        });
        break;
      }
      case EdgeClass::Bottom: {
        const auto tu = traction(grads[static_cast<std::size_t>(e.tri[0])].grad_u, params.lambda,
                                 params.mu, {0.0, -1.0});
        jn.elastic_sq[ei] = edge_l2sq_vector(e, [&](Vec2 x, double) -> std::array<cplx, 2> {
          const auto v = dtn_s.eval_vector(x.x);
          return {2.0 * (v[0] - tu[0]), 2.0 * (v[1] - tu[1])};
        });
        break;
      }
      case EdgeClass::PeriodicLeft: {
        const Edge& ep = mesh.edge[static_cast<std::size_t>(e.partner)];
        const int t1 = e.tri[0];
        const int t2 = ep.tri[0];
        const Vec2 n1 = outward_normal(mesh, t1, e);
        const Vec2 n2 = outward_normal(mesh, t2, ep);
        const double h = norm(mesh.vertex[static_cast<std::size_t>(e.b)] -
                              mesh.vertex[static_cast<std::size_t>(e.a)]);
        if (mesh.tri[static_cast<std::size_t>(t1)].region == Region::Fluid) {
          const cplx g1 = dot_n(grads[static_cast<std::size_t>(t1)].grad_p, n1);
          const cplx g2 = dot_n(grads[static_cast<std::size_t>(t2)].grad_p, n2);
          jn.acoustic_sq[ei] = h * std::norm(g1 + g2 / phase);
          jn.acoustic_sq[static_cast<std::size_t>(e.partner)] = h * std::norm(phase * g1 + g2);
        } else {
          const auto T1 = traction(grads[static_cast<std::size_t>(t1)].grad_u, params.lambda,
                                   params.mu, n1);
          const auto T2 = traction(grads[static_cast<std::size_t>(t2)].grad_u, params.lambda,
                                   params.mu, n2);
          jn.elastic_sq[ei] =
              h * (std::norm(T1[0] + T2[0] / phase) + std::norm(T1[1] + T2[1] / phase));
          jn.elastic_sq[static_cast<std::size_t>(e.partner)] =
              h * (std::norm(phase * T1[0] + T2[0]) + std::norm(phase * T1[1] + T2[1]));
        }
        break;
      }
      case EdgeClass::PeriodicRight:
        break;  // handled with its partner
    }
  }
  return jn;
}

ErrorIndicators indicators(const Mesh& mesh, const Solution& solution, const ModeTable& modes,
                           const PhysicalParams& params, double incident_norm,
                           const DofMap& dofs, double incident_scale) {
  const JumpNorms jn = jump_residuals(mesh, solution, modes, params, 8, incident_scale);

  std::vector<double> edge_sum_sq(static_cast<std::size_t>(mesh.num_triangles()), 0.0);
  for (std::size_t ei = 0; ei < mesh.edge.size(); ++ei) {
    const Edge& e = mesh.edge[ei];
    const double he = norm(mesh.vertex[static_cast<std::size_t>(e.b)] -
                           mesh.vertex[static_cast<std::size_t>(e.a)]);
    for (int t : e.tri) {
      if (t < 0) continue;
      const Region r = mesh.tri[static_cast<std::size_t>(t)].region;
      // 1/2 h_e ||J||^2 per incident element, matching side per region
      const double contrib = (r == Region::Fluid) ? jn.acoustic_sq[ei] : jn.elastic_sq[ei];
      edge_sum_sq[static_cast<std::size_t>(t)] += 0.5 * he * contrib;
    }
  }

  ErrorIndicators out;
  out.dof = dofs.total_unknowns;
  out.eta.resize(static_cast<std::size_t>(mesh.num_triangles()));
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double eta = element_residual(mesh, t, solution, params) +
                       std::sqrt(edge_sum_sq[static_cast<std::size_t>(t)]);
    out.eta[static_cast<std::size_t>(t)] = eta;
    total += eta * eta;
  }
  out.eps_h = std::sqrt(total);
  const ThetaBound tb = theta_bound(params, mesh.geometry.gap(), modes.n_max());
  out.eps_N = tb.value * incident_norm;
  return out;
}

}  // namespace grating
