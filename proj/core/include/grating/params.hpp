// Wave/material parameters and the per-mode quantities of the two DtN
// operators: alpha_n, beta_n, beta_n^(1), beta_n^(2), chi_n and the 2x2
// elastic symbol M_n, plus the truncation bound used to pick N.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "grating/errors.hpp"
#include "grating/geometry.hpp"

namespace grating {

using cplx = std::complex<double>;

struct PhysicalParams {
  double omega = 1.0;   // angular frequency
  double kappa = 1.0;   // fluid wavenumber
  double theta = 0.0;   // incident angle in (-pi/2, pi/2)
  double rho_f = 1.0;   // fluid mass density
  double lambda = 1.0;  // Lame constants
  double mu = 1.0;
  double rho = 1.0;     // solid mass density
  double period = 1.0;  // grating period

  double alpha() const { return kappa * std::sin(theta); }
  double beta() const { return kappa * std::cos(theta); }
  // compressional and shear wavenumbers, kappa1 < kappa2
  double kappa1() const { return omega * std::sqrt(rho / (lambda + 2.0 * mu)); }
  double kappa2() const { return omega * std::sqrt(rho / mu); }
  double alpha_n(int n) const { return alpha() + n * two_pi_over_period(); }
  double two_pi_over_period() const { return 2.0 * M_PI / period; }

  // incident plane wave p^i = e^{i kappa d.x}, d = (sin theta, -cos theta)
  cplx incident(Vec2 p) const;
  Vec2 incident_direction() const { return {std::sin(theta), -std::cos(theta)}; }

  void validate() const;  // throws InvalidParams
};

struct Mode {
  int n = 0;
  double alpha_n = 0.0;
  cplx beta_n;   // acoustic vertical wavenumber
  cplx beta1_n;  // compressional
  cplx beta2_n;  // shear
  cplx chi_n;    // alpha_n^2 + beta1_n * beta2_n
  cplx m[2][2];  // elastic DtN symbol M_n
};

class ModeTable {
 public:
  ModeTable(int n_max, std::vector<Mode> modes)
      : n_max_(n_max), modes_(std::move(modes)) {}

  int n_max() const { return n_max_; }
  // n in [-n_max, n_max]
  const Mode& mode(int n) const { return modes_[static_cast<std::size_t>(n + n_max_)]; }
  std::span<const Mode> all() const { return modes_; }

 private:
  int n_max_;
  std::vector<Mode> modes_;
};

// Populates the table for |n| <= n_max. Throws WoodAnomaly if any |alpha_n|
// hits kappa, kappa1 or kappa2 within relative 1e-12.
ModeTable derive_modes(const PhysicalParams& params, int n_max);

// Tail bound of the truncated DtN series:
//   max( sup_{|n|>N} e^{-gap |beta_n|}, sup_{|n|>N} |n| e^{-gap |beta2_n|} ).
// When propagating modes remain beyond N the bound is vacuous: value = 1 and
// not_evanescent is set.
struct ThetaBound {
  double value = 1.0;
  bool not_evanescent = false;
};

ThetaBound theta_bound(const PhysicalParams& params, double geometry_gap, int n_max);

// Smallest N with theta_bound(N).value * incident_norm <= tol.
int select_truncation(const PhysicalParams& params, double geometry_gap,
                      double incident_norm, double tol);

// ||p^i||_{L2(Gamma)} + ||d_n p^i||_{L2(Gamma)} on a piecewise-linear
// interface (vertices ordered by x1).
double incident_trace_norms(const PhysicalParams& params, std::span<const Vec2> interface);

}  // namespace grating
