// Quasi-periodic dof map, element kernels, exact boundary Fourier rows, the
// truncated DtN blocks and the assembled coupled system, validated against
// the flat-interface reference solution.
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "grating/exact.hpp"
#include "grating/fem_kernels.hpp"
#include "grating/quadrature.hpp"
#include "test_helpers.hpp"

using namespace grating;
using testing_support::flat_geometry_spec;
using testing_support::flat_params;
using testing_support::log_slope;
using testing_support::solve_flat;

TEST_CASE("dof counts on the structured flat mesh") {
  const PhysicalParams p = flat_params();
  const Mesh mesh = build_initial_mesh(flat_geometry_spec(1.0), 1.0);
  const DofMap dofs = build_dof_map(mesh, p);

  int v_f = 0, v_s = 0, v_i = 0, k_f = 0, k_s = 0;
  std::vector<char> fluid(static_cast<std::size_t>(mesh.num_vertices()), 0);
  std::vector<char> solid(static_cast<std::size_t>(mesh.num_vertices()), 0);
  for (const Triangle& T : mesh.tri)
    for (int k = 0; k < 3; ++k)
      (T.region == Region::Fluid ? fluid : solid)[static_cast<std::size_t>(T.v[k])] = 1;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const bool f = fluid[static_cast<std::size_t>(v)];
    const bool s = solid[static_cast<std::size_t>(v)];
    const bool slave = mesh.vertex[static_cast<std::size_t>(v)].x == mesh.geometry.period;
    if (f && s)
      ++v_i;
    else if (f)
      ++v_f;
    else
      ++v_s;
    if (slave && f) ++k_f;
    if (slave && s) ++k_s;
  }
  CHECK(dofs.total_unknowns == (v_f + v_i - k_f) + 2 * (v_s + v_i - k_s));

  // interface vertices carry one fluid scalar plus a solid pair
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (fluid[static_cast<std::size_t>(v)] && solid[static_cast<std::size_t>(v)]) {
      CHECK(dofs.fluid_dof[static_cast<std::size_t>(v)] >= 0);
      CHECK(dofs.solid_dof[static_cast<std::size_t>(v)] >= 0);
    }

  // right-boundary vertices alias their left partners
  for (const auto& [l, r] : mesh.periodic_pairs) {
    CHECK(dofs.is_slave(r));
    CHECK_FALSE(dofs.is_slave(l));
    CHECK(dofs.fluid_dof[static_cast<std::size_t>(r)] ==
          dofs.fluid_dof[static_cast<std::size_t>(l)]);
  }
}

TEST_CASE("normal incidence gives a plain periodic multiplier") {
  PhysicalParams p = flat_params();
  p.theta = 0.0;
  const Mesh mesh = build_initial_mesh(flat_geometry_spec(1.0), 1.0);
  const DofMap dofs = build_dof_map(mesh, p);
  CHECK(dofs.phase.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dofs.phase.imag() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("reference triangle stiffness matrix") {
  const P1Element el({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  const auto s = p1_stiffness(el);
  const double expect[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(s[i][j] == doctest::Approx(expect[i][j]).epsilon(1e-14));

  // quadrature oracle: integrate grad phi_i . grad phi_j with the degree-6 rule
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (const QuadPointTri& q : triangle_rule(6))
        acc += q.w * el.area * dot(el.grad[i], el.grad[j]);
      CHECK(s[i][j] == doctest::Approx(acc).epsilon(1e-14));
    }
}

TEST_CASE("boundary fourier rows integrate P1 traces exactly") {
  const PhysicalParams p = flat_params();
  const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), 0.37);
  const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
  const double L = mesh.geometry.period;

  SUBCASE("constant trace against mode zero of a periodic wave") {
    const Eigen::VectorXcd row = boundary_fourier_row(mesh, bn, 0.0);
    cplx c(0, 0);
    for (Eigen::Index i = 0; i < row.size(); ++i) c += row(i);
    CHECK(std::abs(c - cplx(1.0, 0.0)) < 1e-14);
  }

  SUBCASE("constant trace against an oscillating mode") {
    for (const double an : {0.5, 2.07, -3.64}) {
      const Eigen::VectorXcd row = boundary_fourier_row(mesh, bn, an);
      cplx c(0, 0);
      for (Eigen::Index i = 0; i < row.size(); ++i) c += row(i);
      const cplx expect =
          (1.0 - std::exp(cplx(0, -an * L))) / (cplx(0, 1) * an * L);
      CHECK(std::abs(c - expect) < 1e-13);
    }
  }

  SUBCASE("64-point gauss oracle on arbitrary P1 traces") {
    const double an = 1.77;
    const Eigen::VectorXcd row = boundary_fourier_row(mesh, bn, an);
    // a deterministic sawtooth-ish nodal trace
    Eigen::VectorXcd trace(static_cast<Eigen::Index>(bn.vert.size()));
    for (std::size_t i = 0; i < bn.vert.size(); ++i)
      trace(static_cast<Eigen::Index>(i)) =
          cplx(std::sin(3.0 * i), std::cos(2.0 * i));
    cplx lib = row.transpose() * trace;

    cplx oracle(0, 0);
    for (std::size_t i = 0; i + 1 < bn.vert.size(); ++i) {
      const double x0 = mesh.vertex[static_cast<std::size_t>(bn.vert[i])].x;
      const double x1 = mesh.vertex[static_cast<std::size_t>(bn.vert[i + 1])].x;
      for (const QuadPoint1D& q : gauss_rule(64)) {
        const double x = x0 + q.t * (x1 - x0);
        const cplx v = trace(static_cast<Eigen::Index>(i)) * (1.0 - q.t) +
                       trace(static_cast<Eigen::Index>(i + 1)) * q.t;
        oracle += q.w * (x1 - x0) * v * std::exp(cplx(0, -an * x)) / L;
      }
    }
    CHECK(std::abs(lib - oracle) < 1e-13);
  }
}

TEST_CASE("fourier rows converge to mode orthogonality") {
  const PhysicalParams p = flat_params();
  const ModeTable modes = derive_modes(p, 3);
  std::vector<double> hs, err_diag;
  for (double h : {0.5, 0.25, 0.125}) {
    const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), h);
    const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
    // nodal interpolant of mode m = 1
    const double am = modes.mode(1).alpha_n;
    Eigen::VectorXcd trace(static_cast<Eigen::Index>(bn.vert.size()));
    for (std::size_t i = 0; i < bn.vert.size(); ++i)
      trace(static_cast<Eigen::Index>(i)) =
          std::exp(cplx(0, am * mesh.vertex[static_cast<std::size_t>(bn.vert[i])].x));
    const Eigen::VectorXcd r1 = boundary_fourier_row(mesh, bn, modes.mode(1).alpha_n);
    hs.push_back(1.0 / h);
    err_diag.push_back(std::abs(cplx(r1.transpose() * trace) - 1.0));
    // off-diagonal coefficients vanish identically on the uniform grid:
    // the mode spacing 2 pi (n - m) / period resonates with the columns
    for (int n : {0, -1, 2}) {
      const Eigen::VectorXcd rn = boundary_fourier_row(mesh, bn, modes.mode(n).alpha_n);
      CHECK(std::abs(cplx(rn.transpose() * trace)) < 1e-13);
    }
  }
  CHECK(-log_slope(hs, err_diag) > 1.8);
}

TEST_CASE("zero incident field gives the zero solution") {
  const PhysicalParams p = flat_params();
  const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), 0.4);
  const DofMap dofs = build_dof_map(mesh, p);
  const ModeTable modes = derive_modes(p, 5);
  AssembleOptions opts;
  opts.incident_scale = 0.0;
  const LinearSystem sys = assemble(mesh, p, modes, dofs, opts);
  CHECK(sys.rhs.norm() == 0.0);
  auto [x, rep] = solve(sys);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("assemble rejects a mismatched dof map") {
  const PhysicalParams p = flat_params();
  const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), 0.5);
  const Mesh finer = build_initial_mesh(flat_geometry_spec(0.5), 0.25);
  const DofMap dofs = build_dof_map(finer, p);
  const ModeTable modes = derive_modes(p, 3);
  CHECK_THROWS_AS(assemble(mesh, p, modes, dofs), InconsistentMesh);
}

TEST_CASE("interface coupling blocks are adjoint up to the density factor") {
  const PhysicalParams p = flat_params();
  const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), 0.5);
  const DofMap dofs = build_dof_map(mesh, p);
  const ModeTable modes = derive_modes(p, 2);
  const LinearSystem sys = assemble(mesh, p, modes, dofs);
  const Eigen::MatrixXcd A = Eigen::MatrixXcd(sys.base);

  std::vector<int> fdofs, sdofs;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (dofs.is_slave(v)) continue;
    if (dofs.fluid_dof[static_cast<std::size_t>(v)] >= 0)
      fdofs.push_back(dofs.fluid_dof[static_cast<std::size_t>(v)]);
    if (dofs.solid_dof[static_cast<std::size_t>(v)] >= 0) {
      sdofs.push_back(dofs.solid_dof[static_cast<std::size_t>(v)]);
      sdofs.push_back(dofs.solid_dof[static_cast<std::size_t>(v)] + 1);
    }
  }
  const double rf_w2 = p.rho_f * p.omega * p.omega;
  for (int i : fdofs)
    for (int j : sdofs) CHECK(std::abs(A(i, j) - rf_w2 * std::conj(A(j, i))) < 1e-13);
}

TEST_CASE("volume blocks are complex-symmetric at normal incidence") {
  // theta = 0 removes the periodic phases, so the a1/a2 parts of the reduced
  // matrix must be plain symmetric (their entries are real)
  PhysicalParams p = flat_params();
  p.theta = 0.0;
  const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), 0.5);
  const DofMap dofs = build_dof_map(mesh, p);
  const ModeTable modes = derive_modes(p, 2);
  const LinearSystem sys = assemble(mesh, p, modes, dofs);
  const Eigen::MatrixXcd A = Eigen::MatrixXcd(sys.base);

  std::vector<char> is_fluid(static_cast<std::size_t>(dofs.total_unknowns), 0);
  std::vector<char> is_solid(static_cast<std::size_t>(dofs.total_unknowns), 0);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (dofs.is_slave(v)) continue;
    if (dofs.fluid_dof[static_cast<std::size_t>(v)] >= 0)
      is_fluid[static_cast<std::size_t>(dofs.fluid_dof[static_cast<std::size_t>(v)])] = 1;
    if (dofs.solid_dof[static_cast<std::size_t>(v)] >= 0) {
      is_solid[static_cast<std::size_t>(dofs.solid_dof[static_cast<std::size_t>(v)])] = 1;
      is_solid[static_cast<std::size_t>(dofs.solid_dof[static_cast<std::size_t>(v)] + 1)] = 1;
    }
  }
  for (int i = 0; i < dofs.total_unknowns; ++i)
    for (int j = 0; j < dofs.total_unknowns; ++j) {
      const bool same_field =
          (is_fluid[static_cast<std::size_t>(i)] && is_fluid[static_cast<std::size_t>(j)]) ||
          (is_solid[static_cast<std::size_t>(i)] && is_solid[static_cast<std::size_t>(j)]);
      if (same_field) {
        CHECK(std::abs(A(i, j) - A(j, i)) < 1e-13);
        CHECK(std::abs(A(i, j).imag()) < 1e-13);
      }
    }
}

TEST_CASE("acoustic DtN block has the evanescent sign pattern") {
  const auto b = solve_flat(0.4, 1.0, 6);
  const int N = b.modes.n_max();
  // Rayleigh quotient of the b1 block on the discrete interpolant of mode n
  const Eigen::Index k = static_cast<Eigen::Index>(b.system.top.dof.size());
  for (int n = -N; n <= N; ++n) {
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(k, k);
    for (int m = 0; m <= 2 * N; ++m) {
      const cplx w = -b.system.period * b.system.top.weight[static_cast<std::size_t>(m)];
      block += w * b.system.top.rows.row(m).adjoint() * b.system.top.rows.row(m);
    }
    // synthesize the nodal mode on the folded boundary dofs via the rows
    // themselves: mode n has coefficient pattern e_n in the truncated basis
    Eigen::VectorXcd mode = b.system.top.rows.row(n + N).adjoint();
    const cplx q = mode.adjoint() * (block * mode);
    if (std::abs(b.modes.mode(n).beta_n.imag()) > 0.0)
      CHECK(q.real() >= -1e-12);  // evanescent: Re b1 >= 0
  }
}

TEST_CASE("truncated DtN reproduces its plane-wave eigenfunction") {
  const PhysicalParams p = flat_params();
  const ModeTable modes = derive_modes(p, 8);
  const cplx expect_factor = cplx(0, 1) * modes.mode(0).beta_n;

  std::vector<double> hs, errs;
  for (double h : {0.5, 0.25, 0.125}) {
    const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), h);
    const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
    std::vector<cplx> trace(bn.vert.size());
    for (std::size_t i = 0; i < bn.vert.size(); ++i)
      trace[i] = std::exp(cplx(0, modes.mode(0).alpha_n *
                                      mesh.vertex[static_cast<std::size_t>(bn.vert[i])].x));
    const std::vector<cplx> out = apply_dtn_truncated(mesh, modes, trace);
    double err = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i)
      err = std::max(err, std::abs(out[i] - expect_factor * trace[i]));
    hs.push_back(1.0 / h);
    errs.push_back(err);
  }
  CHECK(-log_slope(hs, errs) > 1.8);

  SUBCASE("zero trace maps to zero") {
    const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), 0.5);
    const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
    const std::vector<cplx> zero(bn.vert.size(), cplx(0, 0));
    for (const cplx v : apply_dtn_truncated(mesh, modes, zero)) CHECK(std::abs(v) == 0.0);
  }

  SUBCASE("truncation at N=0 kills higher discrete modes") {
    const ModeTable m0 = derive_modes(p, 0);
    for (double h : {0.25, 0.0625}) {
      const Mesh mesh = build_initial_mesh(flat_geometry_spec(0.5), h);
      const BoundaryNodes bn = boundary_nodes(mesh, EdgeClass::Top);
      std::vector<cplx> trace(bn.vert.size());
      for (std::size_t i = 0; i < bn.vert.size(); ++i)
        trace[i] = std::exp(cplx(0, p.alpha_n(1) *
                                        mesh.vertex[static_cast<std::size_t>(bn.vert[i])].x));
      double mx = 0.0;
      for (const cplx v : apply_dtn_truncated(mesh, m0, trace)) mx = std::max(mx, std::abs(v));
      // discrete orthogonality is exact on the uniform boundary grid
      CHECK(mx < 1e-12);
    }
  }
}

TEST_CASE("flat configuration solve is consistent and quasi-periodic") {
  const auto b = solve_flat(0.25);
  CHECK(b.report.residual_norm <= 1e-10);
  CHECK(b.system.dimension == b.dofs.total_unknowns);
  for (const auto& [l, r] : b.mesh.periodic_pairs) {
    const cplx pl = b.solution.p[static_cast<std::size_t>(l)];
    const cplx pr = b.solution.p[static_cast<std::size_t>(r)];
    CHECK(pr == b.dofs.phase * pl);  // slaves reconstructed, never solved
    for (int c = 0; c < 2; ++c)
      CHECK(b.solution.u[static_cast<std::size_t>(r)][c] ==
            b.dofs.phase * b.solution.u[static_cast<std::size_t>(l)][c]);
  }
}

TEST_CASE("discrete solution converges to the reference solution") {
  const ExactFlatSolution ex = exact_flat(flat_params());
  std::vector<double> hs, errs;
  for (double h : {0.5, 0.25, 0.125}) {
    const auto b = solve_flat(h);
    hs.push_back(1.0 / h);
    errs.push_back(coupled_h1_error(b.solution, ex, b.mesh, b.params));
  }
  // O(h) in the coupled norm
  const double slope = -log_slope(hs, errs);
  CHECK(slope > 0.7);
  CHECK(slope < 1.3);
  CHECK(errs.back() < 0.2);
}

TEST_CASE("convergence with several propagating modes") {
  // kappa = 4 opens five propagating diffraction orders; the scattered field
  // of the flat interface is still the single zero-order wave
  const ExactFlatSolution ex = exact_flat(flat_params(4.0));
  std::vector<double> hs, errs;
  for (double h : {0.25, 0.125, 0.0625}) {
    const auto b = solve_flat(h, 4.0);
    int propagating = 0;
    for (const Mode& m : b.modes.all())
      if (m.beta_n.imag() == 0.0) ++propagating;
    CHECK(propagating == 5);
    hs.push_back(1.0 / h);
    errs.push_back(coupled_h1_error(b.solution, ex, b.mesh, b.params));
  }
  const double slope = -log_slope(hs, errs);
  CHECK(slope > 0.7);
  CHECK(slope < 1.4);
  CHECK(errs.back() < 0.3 * errs.front());
}

TEST_CASE("DtN factor blocks couple only boundary unknowns at bounded rank") {
  const auto b = solve_flat(0.3, 1.0, 7);
  const int N = b.modes.n_max();
  CHECK(b.system.top.rows.rows() == 2 * N + 1);       // rank <= 2N+1
  CHECK(b.system.bottom.rows.rows() == 2 * N + 1);    // rank <= 2(2N+1) over pairs

  std::vector<char> top_dof(static_cast<std::size_t>(b.dofs.total_unknowns), 0);
  std::vector<char> bottom_dof(static_cast<std::size_t>(b.dofs.total_unknowns), 0);
  const BoundaryNodes top = boundary_nodes(b.mesh, EdgeClass::Top);
  const BoundaryNodes bottom = boundary_nodes(b.mesh, EdgeClass::Bottom);
  for (int v : top.vert)
    top_dof[static_cast<std::size_t>(b.dofs.fluid_dof[static_cast<std::size_t>(v)])] = 1;
  for (int v : bottom.vert) {
    const int sd = b.dofs.solid_dof[static_cast<std::size_t>(v)];
    bottom_dof[static_cast<std::size_t>(sd)] = 1;
    bottom_dof[static_cast<std::size_t>(sd + 1)] = 1;
  }
  for (int d : b.system.top.dof) CHECK(top_dof[static_cast<std::size_t>(d)] == 1);
  for (std::size_t i = 0; i < b.system.bottom.dof1.size(); ++i) {
    CHECK(bottom_dof[static_cast<std::size_t>(b.system.bottom.dof1[i])] == 1);
    CHECK(bottom_dof[static_cast<std::size_t>(b.system.bottom.dof2[i])] == 1);
    CHECK(b.system.bottom.dof2[i] == b.system.bottom.dof1[i] + 1);
  }
}

TEST_CASE("interpolant and discrete solution agree at first order in energy") {
  const ExactFlatSolution ex = exact_flat(flat_params());
  std::vector<double> hs, errs;
  for (double h : {0.5, 0.25, 0.125}) {
    const auto b = solve_flat(h);
    // nodal interpolant of the exact fields, reduced to master unknowns
    Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(b.dofs.total_unknowns);
    for (int v = 0; v < b.mesh.num_vertices(); ++v) {
      if (b.dofs.is_slave(v)) continue;
      const Vec2 pos = b.mesh.vertex[static_cast<std::size_t>(v)];
      const int fd = b.dofs.fluid_dof[static_cast<std::size_t>(v)];
      if (fd >= 0) xi(fd) = ex.pressure(pos);
      const int sd = b.dofs.solid_dof[static_cast<std::size_t>(v)];
      if (sd >= 0) {
        const auto u = ex.displacement(pos);
        xi(sd) = u[0];
        xi(sd + 1) = u[1];
      }
    }
    Eigen::VectorXcd xh = Eigen::VectorXcd::Zero(b.dofs.total_unknowns);
    for (int v = 0; v < b.mesh.num_vertices(); ++v) {
      if (b.dofs.is_slave(v)) continue;
      const int fd = b.dofs.fluid_dof[static_cast<std::size_t>(v)];
      if (fd >= 0) xh(fd) = b.solution.p[static_cast<std::size_t>(v)];
      const int sd = b.dofs.solid_dof[static_cast<std::size_t>(v)];
      if (sd >= 0) {
        xh(sd) = b.solution.u[static_cast<std::size_t>(v)][0];
        xh(sd + 1) = b.solution.u[static_cast<std::size_t>(v)][1];
      }
    }
    const Eigen::VectorXcd d = xi - xh;
    const Eigen::SparseMatrix<cplx> A = b.system.assembled();
    const cplx energy = d.adjoint() * (A * d).eval();
    hs.push_back(1.0 / h);
    errs.push_back(std::sqrt(std::abs(energy)));
  }
  // at least first order; superconverges (~1.8) on these structured meshes
  const double slope = -log_slope(hs, errs);
  CHECK(slope > 0.9);
  CHECK(slope < 2.5);
}
