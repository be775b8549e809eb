// Closed-form reference solution for the flat-interface configuration and
// the coupled-norm error against a discrete solution.
#pragma once

#include "grating/assembly.hpp"
#include "grating/mesh.hpp"
#include "grating/params.hpp"

namespace grating {

// Scattered field p^s = a1 e^{i(alpha x1 + beta0 x2)} above a flat interface
// at x2 = 0, displacement as a compressional + shear pair below. The three
// coefficients solve a 3x3 system built from the transmission conditions.
struct ExactFlatSolution {
  cplx a1, a2, a3;
  double alpha = 0.0;
  cplx beta0, beta1_0, beta2_0;

  cplx pressure(Vec2 x) const;
  std::array<cplx, 2> grad_pressure(Vec2 x) const;
  std::array<cplx, 2> displacement(Vec2 x) const;
  // g[k][j] = d u_k / d x_j
  std::array<std::array<cplx, 2>, 2> grad_displacement(Vec2 x) const;

  static ExactFlatSolution zero();
};

// Throws SingularSystem if the 3x3 coefficient matrix is singular.
ExactFlatSolution exact_flat(const PhysicalParams& params);

// || U - U_h || in the coupled energy norm
//   \int_s lambda |div e|^2 + mu/2 |grad e + grad e^T|^2 + |e|^2
// + \int_f |grad e|^2 + |e|^2,   high-order Gauss per triangle.
double coupled_h1_error(const Solution& solution, const ExactFlatSolution& exact,
                        const Mesh& mesh, const PhysicalParams& params);

}  // namespace grating
