// Plane geometry primitives and the grating interface profile.
#pragma once

#include <cmath>
#include <vector>

#include "grating/errors.hpp"

namespace grating {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Interface height x2 = f(x1) over one period. Either a named closed form
// (constant, or c0 + as*sin(ws*x) + ac*cos(wc*x)) or a piecewise-linear
// sample list with f(0) = f(period).
class Profile {
 public:
  enum class Kind { Flat, Trig, Polyline };

  static Profile flat(double height);
  static Profile trig(double c0, double a_sin, double w_sin, double a_cos, double w_cos);
  static Profile polyline(std::vector<Vec2> points);

  double operator()(double x) const;
  Kind kind() const { return kind_; }
  bool is_flat() const { return kind_ == Kind::Flat; }

  double max_height(double period) const;
  double min_height(double period) const;
  // Largest |slope| between samples; infinite slopes raise InvalidParams
  // already in polyline().
  double max_slope(double period) const;
  // Interior corner abscissas (polyline only); empty otherwise.
  std::vector<double> breakpoints(double period) const;
  // Corner points of the interface, including the periodic seam. Used by
  // tests that measure refinement clustering.
  std::vector<Vec2> corners(double period) const;

  const std::vector<Vec2>& points() const { return pts_; }

 private:
  Profile() = default;
  Kind kind_ = Kind::Flat;
  double c0_ = 0.0, a_sin_ = 0.0, w_sin_ = 0.0, a_cos_ = 0.0, w_cos_ = 0.0;
  std::vector<Vec2> pts_;
};

// Computational cell [0, period] x [-b, b] split by the interface profile.
// Gamma_a sits at x2 = b, Gamma_s at x2 = -b, the reference line at b_prime.
struct GeometrySpec {
  double period = 1.0;
  double b = 1.0;
  double b_prime = 0.5;
  Profile profile = Profile::flat(0.0);

  double gap() const { return b - b_prime; }
  void validate() const;  // throws InvalidParams
};

}  // namespace grating
