// Direct sparse solve of the assembled complex system.
#pragma once

#include <Eigen/Dense>

#include "grating/assembly.hpp"

namespace grating {

struct SolveReport {
  double residual_norm = 0.0;  // ||Ax - b|| / ||b||
  long factor_nonzeros = 0;
  double elapsed_seconds = 0.0;
};

// Sparse LU with a fill-reducing ordering; the DtN factor blocks are
// expanded into the sparse pattern first. Throws SingularMatrix when the
// factorization breaks down.
std::pair<Eigen::VectorXcd, SolveReport> solve(const LinearSystem& system);

}  // namespace grating
