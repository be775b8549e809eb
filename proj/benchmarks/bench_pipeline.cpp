// Pipeline stage benchmarks on the flat reference configuration.
#include <benchmark/benchmark.h>

#include "grating/adapt.hpp"

using namespace grating;

namespace {

PhysicalParams bench_params() {
  PhysicalParams p;
  p.omega = p.mu = p.lambda = p.rho = p.rho_f = 1.0;
  p.theta = M_PI / 6.0;
  p.period = 4.0;
  p.kappa = 1.0;
  return p;
}

GeometrySpec bench_geometry() {
  GeometrySpec g;
  g.period = 4.0;
  g.b = 0.5;
  g.b_prime = 0.0;
  g.profile = Profile::flat(0.0);
  return g;
}

double h_for(int level) { return 0.4 / (1 << level); }

}  // namespace

static void BM_DeriveModes(benchmark::State& state) {
  const PhysicalParams p = bench_params();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(derive_modes(p, n));
}
BENCHMARK(BM_DeriveModes)->Arg(16)->Arg(128)->Arg(512);

static void BM_BuildMesh(benchmark::State& state) {
  const GeometrySpec g = bench_geometry();
  const double h = h_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_initial_mesh(g, h));
}
BENCHMARK(BM_BuildMesh)->Arg(0)->Arg(2)->Arg(4);

static void BM_Refine(benchmark::State& state) {
  const GeometrySpec g = bench_geometry();
  const Mesh mesh = build_initial_mesh(g, h_for(static_cast<int>(state.range(0))));
  std::vector<int> all(static_cast<std::size_t>(mesh.num_triangles()));
  for (int t = 0; t < mesh.num_triangles(); ++t) all[static_cast<std::size_t>(t)] = t;
  for (auto _ : state) benchmark::DoNotOptimize(refine(mesh, all));
  state.SetItemsProcessed(state.iterations() * mesh.num_triangles());
}
BENCHMARK(BM_Refine)->Arg(2)->Arg(4);

static void BM_Assemble(benchmark::State& state) {
  const PhysicalParams p = bench_params();
  const Mesh mesh = build_initial_mesh(bench_geometry(), h_for(static_cast<int>(state.range(0))));
  const DofMap dofs = build_dof_map(mesh, p);
  const ModeTable modes = derive_modes(p, 29);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, p, modes, dofs));
  state.SetItemsProcessed(state.iterations() * mesh.num_triangles());
}
BENCHMARK(BM_Assemble)->Arg(2)->Arg(4);

static void BM_Solve(benchmark::State& state) {
  const PhysicalParams p = bench_params();
  const Mesh mesh = build_initial_mesh(bench_geometry(), h_for(static_cast<int>(state.range(0))));
  const DofMap dofs = build_dof_map(mesh, p);
  const ModeTable modes = derive_modes(p, 29);
  const LinearSystem sys = assemble(mesh, p, modes, dofs);
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys));
  state.SetItemsProcessed(state.iterations() * sys.dimension);
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(4);

static void BM_Indicators(benchmark::State& state) {
  const PhysicalParams p = bench_params();
  const GeometrySpec g = bench_geometry();
  const Mesh mesh = build_initial_mesh(g, h_for(static_cast<int>(state.range(0))));
  const DofMap dofs = build_dof_map(mesh, p);
  const ModeTable modes = derive_modes(p, 29);
  const LinearSystem sys = assemble(mesh, p, modes, dofs);
  auto [x, rep] = solve(sys);
  const Solution sol = extract_solution(mesh, dofs, x, 29);
  const double inc = incident_trace_norms(p, interface_polyline(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(indicators(mesh, sol, modes, p, inc, dofs));
  state.SetItemsProcessed(state.iterations() * mesh.num_triangles());
}
BENCHMARK(BM_Indicators)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
