// Solve-estimate-mark-refine driver with maximum-strategy marking, plus the
// uniform-refinement baseline used for comparisons.
#pragma once

#include <functional>
#include <optional>

#include "grating/estimator.hpp"
#include "grating/exact.hpp"
#include "grating/linsolve.hpp"

namespace grating {

struct AdaptConfig {
  double tolerance = 0.5;  // target eps_h
  double tau = 0.5;        // maximum-strategy marking fraction
  int max_iterations = 30;
  int max_dof = 50000;
  double dtn_tol = 1e-8;  // eps_N target for the N selection
  double initial_h = 0.5;

  void validate() const;
};

struct IterationRecord {
  int iter = 0;
  int dof = 0;
  int n_truncation = 0;
  double eps_h = 0.0;
  double eps_N = 0.0;
  double e_h = -1.0;  // < 0 when no exact solution exists
  double wall_ms = 0.0;
  double residual = 0.0;  // relative solver residual
};

struct ConvergenceRecord {
  std::vector<IterationRecord> iterations;
  bool budget_exhausted = false;
};

// { K : eta_K > tau * max eta }; empty only when all eta vanish.
std::vector<int> mark(const ErrorIndicators& indicators, double tau);

struct RunResult {
  Mesh mesh;
  Solution solution;
  ConvergenceRecord record;
  int n_truncation = 0;
};

using IterationCallback = std::function<void(int iter, const Mesh&, const Solution&)>;

RunResult run_adaptive(const GeometrySpec& geometry, const PhysicalParams& params,
                       const AdaptConfig& config, const IterationCallback& on_iteration = {});

// Same pipeline with every triangle marked; each iteration applies two full
// bisection sweeps so the mesh size roughly quadruples.
RunResult run_uniform(const GeometrySpec& geometry, const PhysicalParams& params,
                      const AdaptConfig& config, const IterationCallback& on_iteration = {});

// Fine polyline of the interface used for the incident trace norms.
std::vector<Vec2> interface_polyline(const GeometrySpec& geometry, int segments = 2048);

}  // namespace grating
