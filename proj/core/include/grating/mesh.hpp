// Conforming triangulation of the periodic cell with region tags, classified
// edges and a quasi-periodic left/right vertex pairing. Refinement is
// newest-vertex bisection with conformity closure; paired boundary edges are
// co-refined so the pairing stays a bijection.
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "grating/geometry.hpp"

namespace grating {

enum class Region : unsigned char { Fluid = 0, Solid = 1 };

enum class EdgeClass : unsigned char {
  InteriorFluid,
  InteriorSolid,
  Interface,
  Top,           // Gamma_a, x2 = b
  Bottom,        // Gamma_s, x2 = -b
  PeriodicLeft,  // x1 = 0
  PeriodicRight  // x1 = period
};

struct Triangle {
  // Positively oriented; the bisection edge is (v[0], v[1]), peak v[2].
  std::array<int, 3> v{-1, -1, -1};
  Region region = Region::Fluid;
  int generation = 0;
};

struct Edge {
  int a = -1, b = -1;           // vertex ids, a < b
  EdgeClass cls = EdgeClass::InteriorFluid;
  std::array<int, 2> tri{-1, -1};  // incident triangles
  int partner = -1;             // matching edge across the periodic seam
};

class Mesh {
 public:
  GeometrySpec geometry;
  std::vector<Vec2> vertex;
  std::vector<Triangle> tri;
  std::vector<Edge> edge;                           // derived, classified
  std::vector<std::pair<int, int>> periodic_pairs;  // (left vertex, right vertex)

  double area(int t) const;
  double diameter(int t) const;  // longest edge of triangle t
  Vec2 centroid(int t) const;
  int num_vertices() const { return static_cast<int>(vertex.size()); }
  int num_triangles() const { return static_cast<int>(tri.size()); }
};

// Terrain mesh of [0, period] x [-b, b]: vertical columns follow the
// interface, so the interface is a union of mesh edges and the left/right
// boundary traces match exactly. Max edge length <= target_h.
Mesh build_initial_mesh(const GeometrySpec& geometry, double target_h);

// Bisect the marked triangles, close for conformity, co-refine paired
// periodic edges, snap new interface vertices onto the profile.
Mesh refine(const Mesh& mesh, const std::vector<int>& marked);

// Recompute edge list, classes and periodic pairs; idempotent.
Mesh classify_edges(Mesh mesh);

double total_area(const Mesh& mesh);
double min_angle(const Mesh& mesh);  // radians

// Plain-text exchange format:
//   vertices N
//   triangles M
//   x y                 (N lines)
//   i j k fluid|solid   (M lines)
void write_mesh_text(const Mesh& mesh, std::ostream& out);
Mesh read_mesh_text(std::istream& in, const GeometrySpec& geometry);

}  // namespace grating
