// Maximum-strategy marking and the solve-estimate-mark-refine drivers.
#include <doctest.h>

#include <cmath>

#include "grating/config.hpp"
#include "test_helpers.hpp"

using namespace grating;
using testing_support::flat_geometry_spec;
using testing_support::flat_params;

namespace {

AdaptConfig small_budget(double tol, int max_dof, int max_iter = 40, double h0 = 0.5) {
  AdaptConfig c;
  c.tolerance = tol;
  c.tau = 0.5;
  c.max_iterations = max_iter;
  c.max_dof = max_dof;
  c.initial_h = h0;
  return c;
}

}  // namespace

TEST_CASE("maximum marking strategy") {
  ErrorIndicators ind;
  ind.eta = {3.0, 1.0, 0.5};
  CHECK(mark(ind, 0.5) == std::vector<int>{0});  // threshold 1.5, strict >

  ind.eta = {0.7, 0.7, 0.7, 0.7};
  CHECK(mark(ind, 0.9).size() == 4);  // all equal positive -> all marked

  ind.eta = {0.0, 0.0};
  CHECK(mark(ind, 0.5).empty());

  CHECK_THROWS_AS(mark(ErrorIndicators{}, 0.5), InvalidParams);
}

TEST_CASE("adaptive loop structure on the flat configuration") {
  const RunResult r =
      run_adaptive(flat_geometry_spec(0.5), flat_params(), small_budget(1e-6, 1500));
  REQUIRE(r.record.iterations.size() > 2);
  CHECK(r.record.budget_exhausted);  // tolerance unreachable within the budget

  int prev_dof = 0;
  for (const IterationRecord& it : r.record.iterations) {
    CHECK(it.dof > prev_dof);
    prev_dof = it.dof;
    CHECK(it.eps_N == r.record.iterations.front().eps_N);  // fixed N
    CHECK(it.n_truncation == r.n_truncation);
    CHECK(it.e_h >= 0.0);  // exact solution available on the flat profile
    CHECK(it.residual <= 1e-10);
  }
  // estimator decreases overall
  CHECK(r.record.iterations.back().eps_h < r.record.iterations.front().eps_h);
}

TEST_CASE("huge tolerance stops after one iteration") {
  const RunResult r =
      run_adaptive(flat_geometry_spec(0.5), flat_params(), small_budget(1e9, 100000));
  CHECK(r.record.iterations.size() == 1);
  CHECK_FALSE(r.record.budget_exhausted);
}

TEST_CASE("records are bit-stable across reruns") {
  const AdaptConfig cfg = small_budget(1e-6, 800);
  const RunResult a = run_adaptive(flat_geometry_spec(0.5), flat_params(), cfg);
  const RunResult b = run_adaptive(flat_geometry_spec(0.5), flat_params(), cfg);
  REQUIRE(a.record.iterations.size() == b.record.iterations.size());
  for (std::size_t i = 0; i < a.record.iterations.size(); ++i) {
    CHECK(a.record.iterations[i].dof == b.record.iterations[i].dof);
    CHECK(a.record.iterations[i].eps_h == b.record.iterations[i].eps_h);
    CHECK(a.record.iterations[i].eps_N == b.record.iterations[i].eps_N);
    CHECK(a.record.iterations[i].e_h == b.record.iterations[i].e_h);
  }
}

TEST_CASE("uniform refinement roughly quadruples the mesh") {
  std::vector<int> tri_counts;
  const IterationCallback cb = [&](int, const Mesh& mesh, const Solution&) {
    tri_counts.push_back(mesh.num_triangles());
  };
  const RunResult r =
      run_uniform(flat_geometry_spec(0.5), flat_params(), small_budget(1e-6, 4000), cb);
  REQUIRE(tri_counts.size() >= 3);
  for (std::size_t i = 1; i < tri_counts.size(); ++i) {
    const double factor = static_cast<double>(tri_counts[i]) / tri_counts[i - 1];
    CHECK(factor >= 3.0);
    CHECK(factor <= 4.5);
  }
  int prev = 0;
  for (const IterationRecord& it : r.record.iterations) {
    CHECK(it.dof > prev);
    prev = it.dof;
  }
}

TEST_CASE("adaptive and uniform runs approach the same field") {
  const GeometrySpec g = flat_geometry_spec(0.5);
  const PhysicalParams p = flat_params();
  std::vector<cplx> first_a, first_u;
  int v0 = 0;
  const Mesh initial = build_initial_mesh(g, 0.5);
  v0 = initial.num_vertices();

  const RunResult ra = run_adaptive(g, p, small_budget(1e-6, 3000));
  const RunResult ru = run_uniform(g, p, small_budget(1e-6, 3000));
  // initial vertices persist with their indices; compare nodal pressure there
  double diff_sq = 0.0;
  int count = 0;
  for (int v = 0; v < v0; ++v) {
    const cplx d = ra.solution.p[static_cast<std::size_t>(v)] -
                   ru.solution.p[static_cast<std::size_t>(v)];
    diff_sq += std::norm(d);
    ++count;
  }
  const double rms = std::sqrt(diff_sq / count);
  const double err_sum =
      ra.record.iterations.back().e_h + ru.record.iterations.back().e_h;
  CHECK(rms < err_sum);  // both converge to the same limit
}

TEST_CASE("adaptive estimator is at least as good at comparable dof") {
  // compare the dof-normalized estimator constants (eps_h ~ C dof^{-1/2})
  AdaptConfig cfg = small_budget(1e-9, 3000, 60);
  const RunResult u = run_uniform(flat_geometry_spec(0.5), flat_params(), cfg);
  const RunResult a = run_adaptive(flat_geometry_spec(0.5), flat_params(), cfg);
  const IterationRecord& fu = u.record.iterations.back();
  const IterationRecord& fa = a.record.iterations.back();
  CHECK(fa.eps_h * std::sqrt(fa.dof) <= 1.02 * fu.eps_h * std::sqrt(fu.dof));
}

TEST_CASE("corner scenario concentrates marked elements near the corners") {
  const RunConfig cfg = scenario_defaults(Scenario::Example2);
  const GeometrySpec g = cfg.geometry;
  const PhysicalParams p = cfg.params;
  const double period = g.period;

  const std::vector<Vec2> corners = g.profile.corners(period);
  REQUIRE(corners.size() == 3);

  const std::vector<Vec2> interface = interface_polyline(g);
  const double incident_norm = incident_trace_norms(p, interface);
  const int N = select_truncation(p, g.gap(), incident_norm, 1e-8);
  const ModeTable modes = derive_modes(p, N);

  Mesh mesh = build_initial_mesh(g, 0.5);
  std::vector<int> marked;
  for (int it = 0; it <= 5; ++it) {
    const DofMap dofs = build_dof_map(mesh, p);
    const LinearSystem sys = assemble(mesh, p, modes, dofs);
    auto [x, rep] = solve(sys);
    const Solution sol = extract_solution(mesh, dofs, x, N);
    const ErrorIndicators ind = indicators(mesh, sol, modes, p, incident_norm, dofs);
    marked = mark(ind, 0.5);
    REQUIRE_FALSE(marked.empty());
    if (it < 5) mesh = refine(mesh, marked);
  }

  int near = 0;
  for (int t : marked) {
    const Vec2 c = mesh.centroid(t);
    double dist = 1e30;
    for (const Vec2& corner : corners) {
      dist = std::min(dist, norm(c - corner));
      // periodic images of the seam corner
      dist = std::min(dist, norm(Vec2{c.x - period, c.y} - corner));
      dist = std::min(dist, norm(Vec2{c.x + period, c.y} - corner));
    }
    if (dist <= period / 10.0) ++near;
  }
  CHECK(near * 2 >= static_cast<int>(marked.size()));  // at least half
}
