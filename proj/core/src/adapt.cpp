#include "grating/adapt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace grating {

void AdaptConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidParams("tau must lie in (0,1)");
  if (!(tolerance > 0.0)) throw InvalidParams("tolerance must be positive");
  if (!(dtn_tol > 0.0)) throw InvalidParams("dtn_tol must be positive");
  if (!(initial_h > 0.0)) throw InvalidParams("initial_h must be positive");
  if (max_iterations < 1) throw InvalidParams("max_iterations must be at least 1");
  if (max_dof < 1) throw InvalidParams("max_dof must be at least 1");
}

std::vector<int> mark(const ErrorIndicators& indicators, double tau) {
  if (indicators.eta.empty()) throw InvalidParams("mark: no triangles");
  const double eta_max = *std::max_element(indicators.eta.begin(), indicators.eta.end());
  std::vector<int> out;
  if (eta_max <= 0.0) return out;
  const double threshold = tau * eta_max;
  for (std::size_t t = 0; t < indicators.eta.size(); ++t)
    if (indicators.eta[t] > threshold) out.push_back(static_cast<int>(t));
  return out;
}

std::vector<Vec2> interface_polyline(const GeometrySpec& geometry, int segments) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(segments + 1));
  for (int i = 0; i <= segments; ++i) xs.push_back(geometry.period * i / segments);
  for (double x : geometry.profile.breakpoints(geometry.period)) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Vec2> poly;
  poly.reserve(xs.size());
  for (double x : xs) poly.push_back({x, geometry.profile(x)});
  return poly;
}

namespace {

RunResult run_loop(const GeometrySpec& geometry, const PhysicalParams& params,
                   const AdaptConfig& config, bool adaptive,
                   const IterationCallback& on_iteration) {
  geometry.validate();
  params.validate();
  config.validate();

  const std::vector<Vec2> interface = interface_polyline(geometry);
  const double incident_norm = incident_trace_norms(params, interface);
  const int N = select_truncation(params, geometry.gap(), incident_norm, config.dtn_tol);
  const ModeTable modes = derive_modes(params, N);

  // exact reference available only for the flat interface at height zero
  std::optional<ExactFlatSolution> exact;
  if (geometry.profile.is_flat() && std::abs(geometry.profile(0.0)) < 1e-14)
    exact = exact_flat(params);

  RunResult result;
  result.n_truncation = N;
  Mesh mesh = build_initial_mesh(geometry, config.initial_h);

  for (int it = 0; it < config.max_iterations; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    const DofMap dofs = build_dof_map(mesh, params);
    const LinearSystem sys = assemble(mesh, params, modes, dofs);
    auto [x, rep] = solve(sys);
    const Solution sol = extract_solution(mesh, dofs, x, N);
    const ErrorIndicators ind = indicators(mesh, sol, modes, params, incident_norm, dofs);

    IterationRecord rec;
    rec.iter = it;
    rec.dof = ind.dof;
    rec.n_truncation = N;
    rec.eps_h = ind.eps_h;
    rec.eps_N = ind.eps_N;
    if (exact) rec.e_h = coupled_h1_error(sol, *exact, mesh, params);
    rec.residual = rep.residual_norm;
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    result.record.iterations.push_back(rec);
    if (on_iteration) on_iteration(it, mesh, sol);

    result.mesh = mesh;
    result.solution = sol;

    if (ind.eps_h <= config.tolerance) break;
    if (it + 1 >= config.max_iterations || ind.dof >= config.max_dof) {
      result.record.budget_exhausted = true;
      break;
    }

    if (adaptive) {
      const std::vector<int> marked = mark(ind, config.tau);
      if (marked.empty()) break;  // all indicators vanish
      mesh = refine(mesh, marked);
    } else {
      std::vector<int> all(static_cast<std::size_t>(mesh.num_triangles()));
      for (int t = 0; t < mesh.num_triangles(); ++t) all[static_cast<std::size_t>(t)] = t;
      mesh = refine(mesh, all);
      all.resize(static_cast<std::size_t>(mesh.num_triangles()));
      for (int t = 0; t < mesh.num_triangles(); ++t) all[static_cast<std::size_t>(t)] = t;
      mesh = refine(mesh, all);
    }
  }
  return result;
}

}  // namespace

RunResult run_adaptive(const GeometrySpec& geometry, const PhysicalParams& params,
                       const AdaptConfig& config, const IterationCallback& on_iteration) {
  return run_loop(geometry, params, config, true, on_iteration);
}

RunResult run_uniform(const GeometrySpec& geometry, const PhysicalParams& params,
                      const AdaptConfig& config, const IterationCallback& on_iteration) {
  return run_loop(geometry, params, config, false, on_iteration);
}

}  // namespace grating
