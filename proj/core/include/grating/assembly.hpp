// Discretization of the truncated variational problem: quasi-periodic P1
// volume forms, interface coupling, DtN boundary forms (stored as low-rank
// factor blocks) and the incident-wave load.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <span>

#include "grating/dofmap.hpp"
#include "grating/mesh.hpp"
#include "grating/params.hpp"

namespace grating {

// Nodes of one horizontal artificial boundary sorted by x1; both seam
// endpoints are present (the right one is the slave copy).
struct BoundaryNodes {
  std::vector<int> vert;
  double y = 0.0;
};

BoundaryNodes boundary_nodes(const Mesh& mesh, EdgeClass cls);

// Exact row c with c . nodal = (1/period) \int v_h e^{-i alpha_n x1} dx1 for
// any P1 trace v_h on the boundary (closed-form edge integrals, no
// quadrature error). Indexed like nodes.vert.
Eigen::VectorXcd boundary_fourier_row(const Mesh& mesh, const BoundaryNodes& nodes,
                                      double alpha_n);

// Rank-(2N+1) acoustic DtN factor block on Gamma_a:
//   B[i][j] = -period * sum_n weight[n] * conj(rows(n,i)) * rows(n,j).
struct AcousticDtnBlock {
  std::vector<int> dof;    // folded master dofs
  Eigen::MatrixXcd rows;   // (2N+1) x dof.size()
  std::vector<cplx> weight;  // i beta_n
};

// Elastic analogue on Gamma_s with 2x2 symbols M_n.
struct ElasticDtnBlock {
  std::vector<int> dof1, dof2;  // folded master dofs per displacement component
  Eigen::MatrixXcd rows;
  std::vector<Eigen::Matrix2cd> symbol;
};

struct LinearSystem {
  int dimension = 0;
  Eigen::SparseMatrix<cplx> base;  // volume + interface terms
  Eigen::VectorXcd rhs;
  AcousticDtnBlock top;
  ElasticDtnBlock bottom;
  double period = 0.0;

  // base plus the DtN blocks expanded into the sparse pattern
  Eigen::SparseMatrix<cplx> assembled() const;
};

struct AssembleOptions {
  double incident_scale = 1.0;  // 0 is the zero-incident-field test hook
};

LinearSystem assemble(const Mesh& mesh, const PhysicalParams& params, const ModeTable& modes,
                      const DofMap& dofs, const AssembleOptions& opts = {});

// Nodal fields; slaves are reconstructed from masters (exact quasi-periodicity).
struct Solution {
  std::vector<cplx> p;                   // per vertex, 0 outside the fluid
  std::vector<std::array<cplx, 2>> u;    // per vertex, 0 outside the solid
  int n_truncation = 0;
};

Solution extract_solution(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXcd& x,
                          int n_truncation);

// Truncated acoustic DtN applied to a P1 trace on Gamma_a, returned at the
// same nodes (ordered like boundary_nodes(mesh, Top)).
std::vector<cplx> apply_dtn_truncated(const Mesh& mesh, const ModeTable& modes,
                                      std::span<const cplx> top_trace);

// Truncated DtN series of a solution trace, synthesized at arbitrary x1 from
// the exact Fourier coefficients. Used by the jump residuals.
class DtnSeries {
 public:
  static DtnSeries acoustic(const Mesh& mesh, const ModeTable& modes, const Solution& sol);
  static DtnSeries elastic(const Mesh& mesh, const ModeTable& modes, const Solution& sol);

  cplx eval_scalar(double x) const;
  std::array<cplx, 2> eval_vector(double x) const;

 private:
  std::vector<double> alpha_;
  std::vector<cplx> w_scalar_;
  std::vector<std::array<cplx, 2>> w_vector_;
};

}  // namespace grating
