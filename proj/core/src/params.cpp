#include "grating/params.hpp"

#include <algorithm>
#include <cmath>

namespace grating {

cplx PhysicalParams::incident(Vec2 p) const {
  const Vec2 d = incident_direction();
  return std::exp(cplx(0.0, kappa * (d.x * p.x + d.y * p.y)));
}

void PhysicalParams::validate() const {
  if (!(mu > 0.0)) throw InvalidParams("mu must be positive");
  if (!(lambda + mu > 0.0)) throw InvalidParams("lambda + mu must be positive");
  if (!(rho > 0.0)) throw InvalidParams("rho must be positive");
  if (!(rho_f > 0.0)) throw InvalidParams("rho_f must be positive");
  if (!(omega > 0.0)) throw InvalidParams("omega must be positive");
  if (!(kappa > 0.0)) throw InvalidParams("kappa must be positive");
  if (!(period > 0.0)) throw InvalidParams("period must be positive");
  if (!(theta > -M_PI / 2.0 && theta < M_PI / 2.0))
    throw InvalidParams("theta must lie strictly inside (-pi/2, pi/2)");
  if (!(kappa1() < kappa2())) throw InvalidParams("kappa1 < kappa2 violated");
}

namespace {

// Vertical wavenumber with the two-case branch: real positive below cutoff,
// positive imaginary above. Not the principal branch of a library sqrt.
cplx vertical_wavenumber(double alpha_n, double k) {
  const double a2 = alpha_n * alpha_n;
  const double k2 = k * k;
  if (std::abs(alpha_n) < k) return cplx(std::sqrt(k2 - a2), 0.0);
  return cplx(0.0, std::sqrt(a2 - k2));
}

void check_wood(double alpha_n, double k, const char* which) {
  const double tol = 1e-12 * std::max(std::abs(alpha_n), k);
  if (std::abs(std::abs(alpha_n) - k) <= tol)
    throw WoodAnomaly(std::string("|alpha_n| coincides with ") + which);
}

}  // namespace

ModeTable derive_modes(const PhysicalParams& params, int n_max) {
  params.validate();
  if (n_max < 0) throw InvalidParams("mode table order must be nonnegative");

  const double w2 = params.omega * params.omega;
  const double k = params.kappa;
  const double k1 = params.kappa1();
  const double k2 = params.kappa2();

  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) {
    const double an = params.alpha_n(n);
    check_wood(an, k, "kappa (Wood anomaly)");
    check_wood(an, k1, "kappa1 (Wood anomaly)");
    check_wood(an, k2, "kappa2 (Wood anomaly)");

    Mode m;
    m.n = n;
    m.alpha_n = an;
    m.beta_n = vertical_wavenumber(an, k);
    m.beta1_n = vertical_wavenumber(an, k1);
    m.beta2_n = vertical_wavenumber(an, k2);
    m.chi_n = an * an + m.beta1_n * m.beta2_n;

    // Traction of the downward Rayleigh expansion. The mass density rides on
    // the omega^2 terms: (lambda+2mu) kappa1^2 = mu kappa2^2 = rho omega^2.
    const double rw2 = params.rho * w2;
    const cplx i_over_chi = cplx(0.0, 1.0) / m.chi_n;
    const cplx off = 2.0 * params.mu * an * m.chi_n - rw2 * an;
    m.m[0][0] = i_over_chi * (rw2 * m.beta1_n);
    m.m[0][1] = i_over_chi * (-off);
    m.m[1][0] = i_over_chi * off;
    m.m[1][1] = i_over_chi * (rw2 * m.beta2_n);
    modes.push_back(m);
  }
  return ModeTable(n_max, std::move(modes));
}

ThetaBound theta_bound(const PhysicalParams& params, double geometry_gap, int n_max) {
  params.validate();
  if (!(geometry_gap > 0.0)) throw InvalidParams("geometry gap b - b_prime must be positive");
  if (n_max < 0) throw InvalidParams("truncation order must be nonnegative");

  const double kmax = std::max(params.kappa, params.kappa2());
  // All |n| > N must sit outside the propagating window on both tails.
  if (!(params.alpha_n(n_max + 1) > kmax) || !(params.alpha_n(-(n_max + 1)) < -kmax))
    return {1.0, true};

  const double k = params.kappa;
  const double k2 = params.kappa2();
  const double step = params.two_pi_over_period();
  auto acoustic = [&](double n, int sign) {
    const double an = params.alpha() + sign * n * step;
    return std::exp(-geometry_gap * std::sqrt(an * an - k * k));
  };
  auto elastic = [&](double n, int sign) {
    const double an = params.alpha() + sign * n * step;
    return n * std::exp(-geometry_gap * std::sqrt(an * an - k2 * k2));
  };

  // Both families are products of a polynomial and a decaying exponential,
  // hence eventually monotone; stop after 5 consecutive decreases of each.
  double best = 0.0;
  double prev_a = -1.0, prev_s = -1.0;
  int dec_a = 0, dec_s = 0;
  bool settled = false;
  for (int j = n_max + 1; j < n_max + 200000; ++j) {
    const double fa = std::max(acoustic(j, +1), acoustic(j, -1));
    const double fs = std::max(elastic(j, +1), elastic(j, -1));
    best = std::max({best, fa, fs});
    if (prev_a >= 0.0) {
      dec_a = (fa < prev_a) ? dec_a + 1 : 0;
      dec_s = (fs < prev_s) ? dec_s + 1 : 0;
      if (dec_a >= 5 && dec_s >= 5) {
        settled = true;
        break;
      }
    }
    prev_a = fa;
    prev_s = fs;
  }
  if (!settled) {
    // Tiny gaps push the elastic turnover out to n ~ 1/(gap step); bracket
    // the continuous peak of n e^{-gap |beta2(n)|} on each branch instead of
    // scanning there, then take the discrete neighbours.
    for (int sign : {+1, -1}) {
      auto growing = [&](double t) {
        const double an = params.alpha() + sign * t * step;
        return 1.0 / t > geometry_gap * sign * step * an / std::sqrt(an * an - k2 * k2);
      };
      double lo = n_max + 1.0, hi = n_max + 2.0;
      while (growing(hi) && hi < 1e18) hi *= 2.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (growing(mid) ? lo : hi) = mid;
      }
      for (double t : {std::floor(lo), std::ceil(hi)})
        if (t >= n_max + 1) best = std::max(best, elastic(t, sign));
    }
  }
  return {best, false};
}

int select_truncation(const PhysicalParams& params, double geometry_gap,
                      double incident_norm, double tol) {
  if (!(tol > 0.0)) throw InvalidParams("truncation tolerance must be positive");
  if (incident_norm < 0.0) throw InvalidParams("incident norm must be nonnegative");
  params.validate();
  if (!(geometry_gap > 0.0)) throw InvalidParams("geometry gap b - b_prime must be positive");
  // the elastic tail only turns over near n ~ 1/(gap 2pi/period)
  if (geometry_gap * params.two_pi_over_period() < 1e-6)
    throw InvalidParams(
        "geometry gap b - b_prime is too small to control the DtN truncation error");
  for (int n = 0; n < 20000; ++n) {
    const ThetaBound tb = theta_bound(params, geometry_gap, n);
    if (!tb.not_evanescent && tb.value * incident_norm <= tol) return n;
  }
  throw InvalidParams("DtN truncation tolerance unreachable at practical orders");
}

double incident_trace_norms(const PhysicalParams& params, std::span<const Vec2> interface) {
  params.validate();
  if (interface.size() < 2) throw InvalidParams("interface polyline needs at least two points");

  // 4-point Gauss per edge; both integrands are constant along a straight
  // edge (|p^i| = 1, |d_n p^i| = kappa |n.d|), so this is exact.
  static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};

  const Vec2 d = params.incident_direction();
  double p_sq = 0.0, dn_sq = 0.0;
  for (std::size_t e = 0; e + 1 < interface.size(); ++e) {
    const Vec2 a = interface[e];
    const Vec2 b = interface[e + 1];
    const double h = norm(b - a);
    if (!(h > 0.0)) throw DegenerateEdge("interface edge has zero length");
    Vec2 n{-(b.y - a.y) / h, (b.x - a.x) / h};
    if (n.y < 0.0) n = {-n.x, -n.y};  // normal points into the fluid
    const double dn = params.kappa * std::abs(n.x * d.x + n.y * d.y);
    for (int q = 0; q < 4; ++q) {
      const double w = 0.5 * h * gw[q];
      (void)gx[q];
      p_sq += w * 1.0;
      dn_sq += w * dn * dn;
    }
  }
  return std::sqrt(p_sq) + std::sqrt(dn_sq);
}

}  // namespace grating
