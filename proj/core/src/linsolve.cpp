#include "grating/linsolve.hpp"

#include <Eigen/SparseLU>
#include <chrono>

namespace grating {

std::pair<Eigen::VectorXcd, SolveReport> solve(const LinearSystem& system) {
  if (system.dimension < 1) throw InvalidParams("solve: empty system");
  const auto t0 = std::chrono::steady_clock::now();

  Eigen::SparseMatrix<cplx> A = system.assembled();
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw SingularMatrix("sparse LU factorization failed: " + lu.lastErrorMessage());
  Eigen::VectorXcd x = lu.solve(system.rhs);
  if (lu.info() != Eigen::Success) throw SingularMatrix("sparse LU solve failed");

  SolveReport rep;
  rep.factor_nonzeros = static_cast<long>(lu.nnzL() + lu.nnzU());
  const double bnorm = system.rhs.norm();
  const double rnorm = (A * x - system.rhs).norm();
  rep.residual_norm = (bnorm > 0.0) ? rnorm / bnorm : rnorm;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(x), rep};
}

}  // namespace grating
