// A posteriori indicators: element residuals, jump residuals across every
// edge class (interior, interface, artificial boundaries, periodic seam) and
// the global discretization / truncation split.
#pragma once

#include "grating/assembly.hpp"
#include "grating/dofmap.hpp"
#include "grating/mesh.hpp"
#include "grating/params.hpp"

namespace grating {

struct ErrorIndicators {
  std::vector<double> eta;  // per triangle
  double eps_h = 0.0;       // sqrt(sum eta^2)
  double eps_N = 0.0;       // theta bound times incident trace norm
  int dof = 0;
};

// h_K ||R p_h||_{L2(K)}; the second-derivative part vanishes for P1, leaving
// the exact P1 mass integral of kappa^2 p_h (fluid) or rho w^2 u_h (solid).
double element_residual(const Mesh& mesh, int t, const Solution& solution,
                        const PhysicalParams& params);

// Squared L2 edge norms of the jump residuals, one acoustic and one elastic
// slot per edge (only the slots matching the incident regions are filled).
struct JumpNorms {
  std::vector<double> acoustic_sq;
  std::vector<double> elastic_sq;
};

JumpNorms jump_residuals(const Mesh& mesh, const Solution& solution, const ModeTable& modes,
                         const PhysicalParams& params, int gauss_points = 8,
                         double incident_scale = 1.0);

ErrorIndicators indicators(const Mesh& mesh, const Solution& solution, const ModeTable& modes,
                           const PhysicalParams& params, double incident_norm,
                           const DofMap& dofs, double incident_scale = 1.0);

}  // namespace grating
