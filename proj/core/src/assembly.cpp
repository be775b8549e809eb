#include "grating/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "grating/fem_kernels.hpp"
#include "grating/quadrature.hpp"

namespace grating {

namespace {

const cplx kI(0.0, 1.0);

// \int_0^h (1 - t/h) e^{-i a t} dt and \int_0^h (t/h) e^{-i a t} dt.
// Switches to series for small |a h| to dodge cancellation.
std::pair<cplx, cplx> hat_moments(double h, double a) {
  const double ah = a * h;
  if (std::abs(ah) < 1e-5) {
    const cplx ia(0.0, ah);
    const cplx left = h * (0.5 - ia / 6.0 - ah * ah / 24.0 + ia * ah * ah / 120.0);
    const cplx right = h * (0.5 - ia / 3.0 - ah * ah / 8.0 + ia * ah * ah / 30.0);
    return {left, right};
  }
  const cplx em = std::exp(cplx(0.0, -ah));
  const cplx left = 1.0 / (kI * a) + (1.0 - em) / (a * a * h);
  const cplx right = kI * em / a - (1.0 - em) / (a * a * h);
  return {left, right};
}

Vec2 outward_normal(const Mesh& mesh, int t, int va, int vb) {
  const Vec2 a = mesh.vertex[static_cast<std::size_t>(va)];
  const Vec2 b = mesh.vertex[static_cast<std::size_t>(vb)];
  const Vec2 tg = b - a;
  const double h = norm(tg);
  Vec2 n{tg.y / h, -tg.x / h};
  const Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const Vec2 c = mesh.centroid(t);
  if (dot(n, {c.x - mid.x, c.y - mid.y}) > 0.0) n = {-n.x, -n.y};
  return n;
}

}  // namespace

BoundaryNodes boundary_nodes(const Mesh& mesh, EdgeClass cls) {
  if (cls != EdgeClass::Top && cls != EdgeClass::Bottom)
    throw InvalidParams("boundary_nodes: expected Top or Bottom");
  BoundaryNodes out;
  out.y = (cls == EdgeClass::Top) ? mesh.geometry.b : -mesh.geometry.b;
  std::vector<char> seen(static_cast<std::size_t>(mesh.num_vertices()), 0);
  for (const Edge& e : mesh.edge) {
    if (e.cls != cls) continue;
    for (int v : {e.a, e.b}) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        out.vert.push_back(v);
      }
    }
  }
  std::sort(out.vert.begin(), out.vert.end(), [&](int a, int b) {
    return mesh.vertex[static_cast<std::size_t>(a)].x < mesh.vertex[static_cast<std::size_t>(b)].x;
  });
  if (out.vert.size() < 2) throw MeshError("artificial boundary carries no edges");
  return out;
}

Eigen::VectorXcd boundary_fourier_row(const Mesh& mesh, const BoundaryNodes& nodes,
                                      double alpha_n) {
  const double L = mesh.geometry.period;
  const int n = static_cast<int>(nodes.vert.size());
  Eigen::VectorXcd row = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i + 1 < n; ++i) {
    const double x0 = mesh.vertex[static_cast<std::size_t>(nodes.vert[static_cast<std::size_t>(i)])].x;
    const double x1 = mesh.vertex[static_cast<std::size_t>(nodes.vert[static_cast<std::size_t>(i + 1)])].x;
    const double h = x1 - x0;
    const auto [ml, mr] = hat_moments(h, alpha_n);
    const cplx ph = std::exp(cplx(0.0, -alpha_n * x0));
    row(i) += ph * ml / L;
    row(i + 1) += ph * mr / L;
  }
  return row;
}

namespace {

// Folded Fourier rows over master dofs for one artificial boundary.
struct FoldedRows {
  std::vector<int> dof;     // unique master dof per folded node
  Eigen::MatrixXcd rows;    // (2N+1) x dof.size()
};

FoldedRows fold_rows(const Mesh& mesh, const BoundaryNodes& nodes, const ModeTable& modes,
                     const DofMap& dofs, const std::vector<int>& nodal_dof) {
  const int N = modes.n_max();
  FoldedRows out;
  std::unordered_map<int, int> pos;
  std::vector<int> fold(nodes.vert.size());
  std::vector<cplx> factor(nodes.vert.size());
  for (std::size_t i = 0; i < nodes.vert.size(); ++i) {
    const int v = nodes.vert[i];
    const int d = nodal_dof[i];
    auto it = pos.find(d);
    if (it == pos.end()) {
      it = pos.emplace(d, static_cast<int>(out.dof.size())).first;
      out.dof.push_back(d);
    }
    fold[i] = it->second;
    factor[i] = dofs.column_factor(v);
  }
  out.rows = Eigen::MatrixXcd::Zero(2 * N + 1, static_cast<Eigen::Index>(out.dof.size()));
  for (int n = -N; n <= N; ++n) {
    const Eigen::VectorXcd raw = boundary_fourier_row(mesh, nodes, modes.mode(n).alpha_n);
    for (std::size_t i = 0; i < nodes.vert.size(); ++i)
      out.rows(n + N, fold[i]) += raw(static_cast<Eigen::Index>(i)) * factor[i];
  }
  return out;
}

}  // namespace

Eigen::SparseMatrix<cplx> LinearSystem::assembled() const {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(base.nonZeros()) +
                top.dof.size() * top.dof.size() * 2 + bottom.dof1.size() * bottom.dof1.size() * 8);
  for (int k = 0; k < base.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(base, k); it; ++it)
      trips.emplace_back(it.row(), it.col(), it.value());

  const int N_top = static_cast<int>(top.weight.size());
  for (int n = 0; n < N_top; ++n) {
    const cplx w = -period * top.weight[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < top.dof.size(); ++i) {
      const cplx ci = std::conj(top.rows(n, static_cast<Eigen::Index>(i)));
      for (std::size_t j = 0; j < top.dof.size(); ++j)
        trips.emplace_back(top.dof[i], top.dof[j],
                           w * ci * top.rows(n, static_cast<Eigen::Index>(j)));
    }
  }
  const int N_bot = static_cast<int>(bottom.symbol.size());
  for (int n = 0; n < N_bot; ++n) {
    const Eigen::Matrix2cd& M = bottom.symbol[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < bottom.dof1.size(); ++i) {
      const cplx ci = std::conj(bottom.rows(n, static_cast<Eigen::Index>(i)));
      for (std::size_t j = 0; j < bottom.dof1.size(); ++j) {
        const cplx cj = bottom.rows(n, static_cast<Eigen::Index>(j));
        const cplx s = -period * ci * cj;
        const int rdof[2] = {bottom.dof1[i], bottom.dof2[i]};
        const int cdof[2] = {bottom.dof1[j], bottom.dof2[j]};
        for (int l = 0; l < 2; ++l)
          for (int k = 0; k < 2; ++k) trips.emplace_back(rdof[l], cdof[k], s * M(l, k));
      }
    }
  }
  Eigen::SparseMatrix<cplx> full(dimension, dimension);
  full.setFromTriplets(trips.begin(), trips.end());
  return full;
}

LinearSystem assemble(const Mesh& mesh, const PhysicalParams& params, const ModeTable& modes,
                      const DofMap& dofs, const AssembleOptions& opts) {
  params.validate();
  if (dofs.mesh_vertices != mesh.num_vertices())
    throw InconsistentMesh("dof map was built for a different mesh");

  const double w2 = params.omega * params.omega;
  const double k2 = params.kappa * params.kappa;

  LinearSystem sys;
  sys.dimension = dofs.total_unknowns;
  sys.period = mesh.geometry.period;
  sys.rhs = Eigen::VectorXcd::Zero(sys.dimension);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 24);

  auto scatter = [&](int row_v, int row_dof, int col_v, int col_dof, cplx val) {
    trips.emplace_back(row_dof, col_dof,
                       val * dofs.row_factor(row_v) * dofs.column_factor(col_v));
  };

  // volume forms a1 (solid) and a2 (fluid)
  for (const Triangle& T : mesh.tri) {
    const Vec2 p0 = mesh.vertex[static_cast<std::size_t>(T.v[0])];
    const Vec2 p1 = mesh.vertex[static_cast<std::size_t>(T.v[1])];
    const Vec2 p2 = mesh.vertex[static_cast<std::size_t>(T.v[2])];
    const P1Element el(p0, p1, p2);
    const auto mass = p1_mass(el.area);
    if (T.region == Region::Fluid) {
      const auto stiff = p1_stiffness(el);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          scatter(T.v[i], dofs.fluid_dof[static_cast<std::size_t>(T.v[i])], T.v[j],
                  dofs.fluid_dof[static_cast<std::size_t>(T.v[j])],
                  cplx(stiff[i][j] - k2 * mass[i][j], 0.0));
    } else {
      const auto blk = elasticity_block(el, params.lambda, params.mu);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 2; ++l)
            for (int k = 0; k < 2; ++k) {
              double v = blk.b[l][k][i][j];
              if (l == k) v -= params.rho * w2 * mass[i][j];
              scatter(T.v[i], dofs.solid_dof[static_cast<std::size_t>(T.v[i])] + l, T.v[j],
                      dofs.solid_dof[static_cast<std::size_t>(T.v[j])] + k, cplx(v, 0.0));
            }
    }
  }

  // interface coupling a3, a4 and the incident load
  const auto edge_rule = gauss_rule(8);
  for (const Edge& e : mesh.edge) {
    if (e.cls != EdgeClass::Interface) continue;
    const int vids[2] = {e.a, e.b};
    const Vec2 a = mesh.vertex[static_cast<std::size_t>(e.a)];
    const Vec2 b = mesh.vertex[static_cast<std::size_t>(e.b)];
    const double h = norm(b - a);
    const int fluid_t =
        (mesh.tri[static_cast<std::size_t>(e.tri[0])].region == Region::Fluid) ? e.tri[0] : e.tri[1];
    Vec2 n = outward_normal(mesh, fluid_t, e.a, e.b);
    n = {-n.x, -n.y};  // from solid into fluid
    const double nc[2] = {n.x, n.y};

    double W[2][2];
    W[0][0] = W[1][1] = h / 3.0;
    W[0][1] = W[1][0] = h / 6.0;

    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          // a3: rho_f w^2 (u.n) conj(q)
          scatter(vids[i], dofs.fluid_dof[static_cast<std::size_t>(vids[i])], vids[j],
                  dofs.solid_dof[static_cast<std::size_t>(vids[j])] + k,
                  cplx(params.rho_f * w2 * nc[k] * W[i][j], 0.0));
          // a4: p (n . conj(v))
          scatter(vids[i], dofs.solid_dof[static_cast<std::size_t>(vids[i])] + k, vids[j],
                  dofs.fluid_dof[static_cast<std::size_t>(vids[j])],
                  cplx(nc[k] * W[i][j], 0.0));
        }
      }

    if (opts.incident_scale != 0.0) {
      const Vec2 d = params.incident_direction();
      const cplx dn_fac = kI * params.kappa * (d.x * n.x + d.y * n.y);
      for (const QuadPoint1D& q : edge_rule) {
        const Vec2 x{a.x + q.t * (b.x - a.x), a.y + q.t * (b.y - a.y)};
        const cplx pi = opts.incident_scale * params.incident(x);
        const double phi[2] = {1.0 - q.t, q.t};
        for (int i = 0; i < 2; ++i) {
          const cplx rf = dofs.row_factor(vids[i]);
          sys.rhs(dofs.fluid_dof[static_cast<std::size_t>(vids[i])]) +=
              rf * q.w * h * dn_fac * pi * phi[i];
          for (int l = 0; l < 2; ++l)
            sys.rhs(dofs.solid_dof[static_cast<std::size_t>(vids[i])] + l) -=
                rf * q.w * h * pi * nc[l] * phi[i];
        }
      }
    }
  }

  sys.base.resize(sys.dimension, sys.dimension);
  sys.base.setFromTriplets(trips.begin(), trips.end());

  // DtN factor blocks
  const int N = modes.n_max();
  {
    const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
    std::vector<int> nodal(bn.vert.size());
    for (std::size_t i = 0; i < bn.vert.size(); ++i)
      nodal[i] = dofs.fluid_dof[static_cast<std::size_t>(bn.vert[i])];
    FoldedRows fr = fold_rows(mesh, bn, modes, dofs, nodal);
    sys.top.dof = std::move(fr.dof);
    sys.top.rows = std::move(fr.rows);
    sys.top.weight.resize(static_cast<std::size_t>(2 * N + 1));
    for (int n = -N; n <= N; ++n)
      sys.top.weight[static_cast<std::size_t>(n + N)] = kI * modes.mode(n).beta_n;
  }
  {
    const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Bottom);
    std::vector<int> nodal1(bn.vert.size());
    for (std::size_t i = 0; i < bn.vert.size(); ++i)
      nodal1[i] = dofs.solid_dof[static_cast<std::size_t>(bn.vert[i])];
    FoldedRows fr = fold_rows(mesh, bn, modes, dofs, nodal1);
    sys.bottom.dof1 = fr.dof;
    for (int d : fr.dof) sys.bottom.dof2.push_back(d + 1);
    sys.bottom.rows = std::move(fr.rows);
    sys.bottom.symbol.resize(static_cast<std::size_t>(2 * N + 1));
    for (int n = -N; n <= N; ++n) {
      Eigen::Matrix2cd M;
      const Mode& m = modes.mode(n);
      M << m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1];
      sys.bottom.symbol[static_cast<std::size_t>(n + N)] = M;
    }
  }
  return sys;
}

Solution extract_solution(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXcd& x,
                          int n_truncation) {
  if (dofs.mesh_vertices != mesh.num_vertices())
    throw InconsistentMesh("dof map was built for a different mesh");
  Solution sol;
  sol.n_truncation = n_truncation;
  sol.p.assign(static_cast<std::size_t>(mesh.num_vertices()), cplx(0.0, 0.0));
  sol.u.assign(static_cast<std::size_t>(mesh.num_vertices()), {cplx(0.0, 0.0), cplx(0.0, 0.0)});
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const cplx f = dofs.column_factor(v);
    const int fd = dofs.fluid_dof[static_cast<std::size_t>(v)];
    if (fd >= 0) sol.p[static_cast<std::size_t>(v)] = f * x(fd);
    const int sd = dofs.solid_dof[static_cast<std::size_t>(v)];
    if (sd >= 0)
      sol.u[static_cast<std::size_t>(v)] = {f * x(sd), f * x(sd + 1)};
  }
  return sol;
}

std::vector<cplx> apply_dtn_truncated(const Mesh& mesh, const ModeTable& modes,
                                      std::span<const cplx> top_trace) {
  const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
  if (top_trace.size() != bn.vert.size())
    throw InvalidParams("apply_dtn_truncated: trace size mismatch");
  const int N = modes.n_max();
  std::vector<cplx> coeff(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    const Eigen::VectorXcd row = boundary_fourier_row(mesh, bn, modes.mode(n).alpha_n);
    cplx c(0.0, 0.0);
    for (std::size_t i = 0; i < bn.vert.size(); ++i)
      c += row(static_cast<Eigen::Index>(i)) * top_trace[i];
    coeff[static_cast<std::size_t>(n + N)] = c;
  }
  std::vector<cplx> out(bn.vert.size());
  for (std::size_t i = 0; i < bn.vert.size(); ++i) {
    const double x = mesh.vertex[static_cast<std::size_t>(bn.vert[i])].x;
    cplx s(0.0, 0.0);
    for (int n = -N; n <= N; ++n) {
      const Mode& m = modes.mode(n);
      s += kI * m.beta_n * coeff[static_cast<std::size_t>(n + N)] *
           std::exp(cplx(0.0, m.alpha_n * x));
    }
    out[i] = s;
  }
  return out;
}

DtnSeries DtnSeries::acoustic(const Mesh& mesh, const ModeTable& modes, const Solution& sol) {
  const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
  const int N = modes.n_max();
  DtnSeries s;
  s.alpha_.resize(static_cast<std::size_t>(2 * N + 1));
  s.w_scalar_.resize(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    const Mode& m = modes.mode(n);
    const Eigen::VectorXcd row = boundary_fourier_row(mesh, bn, m.alpha_n);
    cplx c(0.0, 0.0);
    for (std::size_t i = 0; i < bn.vert.size(); ++i)
      c += row(static_cast<Eigen::Index>(i)) * sol.p[static_cast<std::size_t>(bn.vert[i])];
    s.alpha_[static_cast<std::size_t>(n + N)] = m.alpha_n;
    s.w_scalar_[static_cast<std::size_t>(n + N)] = kI * m.beta_n * c;
  }
  return s;
}

DtnSeries DtnSeries::elastic(const Mesh& mesh, const ModeTable& modes, const Solution& sol) {
  const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Bottom);
  const int N = modes.n_max();
  DtnSeries s;
  s.alpha_.resize(static_cast<std::size_t>(2 * N + 1));
  s.w_vector_.resize(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    const Mode& m = modes.mode(n);
    const Eigen::VectorXcd row = boundary_fourier_row(mesh, bn, m.alpha_n);
    cplx c1(0.0, 0.0), c2(0.0, 0.0);
    for (std::size_t i = 0; i < bn.vert.size(); ++i) {
      const auto& uv = sol.u[static_cast<std::size_t>(bn.vert[i])];
      c1 += row(static_cast<Eigen::Index>(i)) * uv[0];
      c2 += row(static_cast<Eigen::Index>(i)) * uv[1];
    }
    s.alpha_[static_cast<std::size_t>(n + N)] = m.alpha_n;
    s.w_vector_[static_cast<std::size_t>(n + N)] = {m.m[0][0] * c1 + m.m[0][1] * c2,
                                                    m.m[1][0] * c1 + m.m[1][1] * c2};
  }
  return s;
}

cplx DtnSeries::eval_scalar(double x) const {
  cplx s(0.0, 0.0);
  for (std::size_t n = 0; n < w_scalar_.size(); ++n)
    s += w_scalar_[n] * std::exp(cplx(0.0, alpha_[n] * x));
  return s;
}

std::array<cplx, 2> DtnSeries::eval_vector(double x) const {
  std::array<cplx, 2> s{cplx(0.0, 0.0), cplx(0.0, 0.0)};
  for (std::size_t n = 0; n < w_vector_.size(); ++n) {
    const cplx e = std::exp(cplx(0.0, alpha_[n] * x));
    s[0] += w_vector_[n][0] * e;
    s[1] += w_vector_[n][1] * e;
  }
  return s;
}

}  // namespace grating
