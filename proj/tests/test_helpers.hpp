// Shared helpers for the unit suites: a deterministic generator for
// admissible parameter sets, a least-squares slope fit, and a one-call
// pipeline for the flat reference configuration.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "grating/adapt.hpp"
#include "grating/linsolve.hpp"
#include "grating/params.hpp"

namespace testing_support {

struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed) {}
  double uniform(double lo, double hi) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }
};

inline grating::PhysicalParams random_params(Lcg& rng) {
  grating::PhysicalParams p;
  p.omega = rng.uniform(0.5, 2.0);
  p.mu = rng.uniform(0.5, 4.0);
  p.lambda = rng.uniform(0.2, 3.0);
  p.rho = rng.uniform(0.5, 2.0);
  p.rho_f = rng.uniform(0.5, 2.0);
  p.theta = rng.uniform(-1.2, 1.2);
  p.kappa = rng.uniform(0.5, 3.0);
  p.period = rng.uniform(1.0, 6.0);
  return p;
}

// slope of log(y) against log(x) by least squares
inline double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline grating::PhysicalParams flat_params(double kappa = 1.0) {
  grating::PhysicalParams p;
  p.omega = p.mu = p.lambda = p.rho = p.rho_f = 1.0;
  p.theta = M_PI / 6.0;
  p.period = 4.0;
  p.kappa = kappa;
  return p;
}

inline grating::GeometrySpec flat_geometry_spec(double b = 0.5) {
  grating::GeometrySpec g;
  g.period = 4.0;
  g.b = b;
  g.b_prime = 0.0;
  g.profile = grating::Profile::flat(0.0);
  return g;
}

struct SolveBundle {
  grating::PhysicalParams params;
  grating::GeometrySpec geometry;
  grating::ModeTable modes;
  grating::Mesh mesh;
  grating::DofMap dofs;
  grating::LinearSystem system;
  grating::SolveReport report;
  grating::Solution solution;
  double incident_norm = 0.0;
};

// assemble + solve the flat configuration on a structured mesh
inline SolveBundle solve_flat(double h, double kappa = 1.0, int n_modes = -1, double b = 0.5) {
  using namespace grating;
  const PhysicalParams p = flat_params(kappa);
  const GeometrySpec g = flat_geometry_spec(b);
  const double incident_norm = incident_trace_norms(p, interface_polyline(g));
  const int N = (n_modes >= 0) ? n_modes
                               : select_truncation(p, g.gap(), incident_norm, 1e-8);
  ModeTable modes = derive_modes(p, N);
  Mesh mesh = build_initial_mesh(g, h);
  DofMap dofs = build_dof_map(mesh, p);
  LinearSystem sys = assemble(mesh, p, modes, dofs);
  auto [x, rep] = solve(sys);
  Solution sol = extract_solution(mesh, dofs, x, N);
  return SolveBundle{p,   g,   std::move(modes), std::move(mesh), std::move(dofs),
                     std::move(sys), rep, std::move(sol), incident_norm};
}

}  // namespace testing_support
