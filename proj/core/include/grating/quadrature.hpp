// Gauss rules on [0,1] and symmetric rules on the reference triangle.
#pragma once

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "grating/errors.hpp"

namespace grating {

struct QuadPoint1D {
  double t;  // in (0,1)
  double w;  // weights sum to 1
};

// Gauss-Legendre rule with n points, mapped to [0,1]. Nodes are computed by
// Newton iteration on the Legendre recurrence and cached per order.
inline std::span<const QuadPoint1D> gauss_rule(int n) {
  if (n < 1 || n > 256) throw QuadratureOverflow("gauss_rule: order out of range");
  static std::map<int, std::vector<QuadPoint1D>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<QuadPoint1D> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * pp * pp);
      pts[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
      pts[static_cast<std::size_t>(n - 1 - i)] = {0.5 * (1.0 + x), 0.5 * w};
    }
    it = cache.emplace(n, std::move(pts)).first;
  }
  return it->second;
}

struct QuadPointTri {
  double l1, l2, l3;  // barycentric coordinates
  double w;           // weights sum to 1 (multiply by triangle area)
};

// degree 2: interior 3-point rule; degree 6: 12-point symmetric rule.
inline std::span<const QuadPointTri> triangle_rule(int degree) {
  static const std::vector<QuadPointTri> deg2 = {
      {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0},
      {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0},
      {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0},
  };
  static const std::vector<QuadPointTri> deg6 = [] {
    std::vector<QuadPointTri> p;
    auto push3 = [&p](double a, double w) {
      const double c = 1.0 - 2.0 * a;
      p.push_back({c, a, a, w});
      p.push_back({a, c, a, w});
      p.push_back({a, a, c, w});
    };
    auto push6 = [&p](double a, double b, double w) {
      const double c = 1.0 - a - b;
      p.push_back({a, b, c, w});
      p.push_back({a, c, b, w});
      p.push_back({b, a, c, w});
      p.push_back({b, c, a, w});
      p.push_back({c, a, b, w});
      p.push_back({c, b, a, w});
    };
    push3(0.063089014491502, 0.050844906370207);
    push3(0.249286745170910, 0.116786275726379);
    push6(0.310352451033785, 0.053145049844816, 0.082851075618374);
    return p;
  }();
  if (degree <= 2) return deg2;
  if (degree <= 6) return deg6;
  throw QuadratureOverflow("triangle_rule: degree out of range");
}

}  // namespace grating
