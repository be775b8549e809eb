#include "grating/geometry.hpp"

#include <algorithm>
#include <limits>

namespace grating {

Profile Profile::flat(double height) {
  Profile p;
  p.kind_ = Kind::Flat;
  p.c0_ = height;
  return p;
}

Profile Profile::trig(double c0, double a_sin, double w_sin, double a_cos, double w_cos) {
  Profile p;
  p.kind_ = Kind::Trig;
  p.c0_ = c0;
  p.a_sin_ = a_sin;
  p.w_sin_ = w_sin;
  p.a_cos_ = a_cos;
  p.w_cos_ = w_cos;
  return p;
}

Profile Profile::polyline(std::vector<Vec2> points) {
  if (points.size() < 2)
    throw InvalidParams("profile polyline needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].x > points[i - 1].x))
      throw InvalidParams("profile polyline abscissas must be strictly increasing");
  }
  if (std::abs(points.front().y - points.back().y) > 1e-12)
    throw InvalidParams("profile polyline must be periodic: f(0) == f(period)");
  Profile p;
  p.kind_ = Kind::Polyline;
  p.pts_ = std::move(points);
  return p;
}

double Profile::operator()(double x) const {
  switch (kind_) {
    case Kind::Flat:
      return c0_;
    case Kind::Trig:
      return c0_ + a_sin_ * std::sin(w_sin_ * x) + a_cos_ * std::cos(w_cos_ * x);
    case Kind::Polyline: {
      if (x <= pts_.front().x) return pts_.front().y;
      if (x >= pts_.back().x) return pts_.back().y;
      auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                                 [](double v, const Vec2& p) { return v < p.x; });
      const Vec2& hi = *it;
      const Vec2& lo = *(it - 1);
      const double t = (x - lo.x) / (hi.x - lo.x);
      return lo.y + t * (hi.y - lo.y);
    }
  }
  return c0_;
}

namespace {
constexpr int kScanSamples = 1 << 16;
}

double Profile::max_height(double period) const {
  if (kind_ == Kind::Flat) return c0_;
  if (kind_ == Kind::Polyline) {
    double m = -std::numeric_limits<double>::infinity();
    for (const Vec2& p : pts_) m = std::max(m, p.y);
    return m;
  }
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScanSamples; ++i)
    m = std::max(m, (*this)(period * i / kScanSamples));
  return m;
}

double Profile::min_height(double period) const {
  if (kind_ == Kind::Flat) return c0_;
  if (kind_ == Kind::Polyline) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec2& p : pts_) m = std::min(m, p.y);
    return m;
  }
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScanSamples; ++i)
    m = std::min(m, (*this)(period * i / kScanSamples));
  return m;
}

double Profile::max_slope(double period) const {
  switch (kind_) {
    case Kind::Flat:
      return 0.0;
    case Kind::Trig:
      return std::abs(a_sin_ * w_sin_) + std::abs(a_cos_ * w_cos_);
    case Kind::Polyline: {
      double m = 0.0;
      for (std::size_t i = 1; i < pts_.size(); ++i)
        m = std::max(m, std::abs((pts_[i].y - pts_[i - 1].y) / (pts_[i].x - pts_[i - 1].x)));
      return m;
    }
  }
  return 0.0;
}

std::vector<double> Profile::breakpoints(double period) const {
  std::vector<double> xs;
  if (kind_ != Kind::Polyline) return xs;
  for (const Vec2& p : pts_)
    if (p.x > 1e-14 && p.x < period - 1e-14) xs.push_back(p.x);
  return xs;
}

std::vector<Vec2> Profile::corners(double period) const {
  std::vector<Vec2> cs;
  if (kind_ != Kind::Polyline) return cs;
  cs.push_back({0.0, pts_.front().y});
  for (const Vec2& p : pts_)
    if (p.x > 1e-14 && p.x < period - 1e-14) cs.push_back(p);
  cs.push_back({period, pts_.back().y});
  return cs;
}

void GeometrySpec::validate() const {
  if (!(period > 0.0)) throw InvalidParams("period must be positive");
  if (!std::isfinite(b) || !std::isfinite(b_prime))
    throw InvalidParams("b, b_prime must be finite");
  const double fmax = profile.max_height(period);
  const double fmin = profile.min_height(period);
  if (!(b > b_prime)) throw InvalidParams("geometry requires b > b_prime");
  if (!(b_prime >= fmax - 1e-14))
    throw InvalidParams("geometry requires b_prime >= max f");
  if (!(-b < fmin)) throw InvalidParams("geometry requires -b < min f");
  if (!std::isfinite(profile.max_slope(period)))
    throw InvalidParams("profile must be Lipschitz");
}

}  // namespace grating
