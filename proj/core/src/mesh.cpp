#include "grating/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace grating {

namespace {

constexpr double kAreaGuardFactor = 1e-14;  // times period^2

// Terrain coordinates: the cell is the image of [0,period] x [-b,b] under a
// vertical shear that carries the reference height eta = 0 onto the profile.
// New vertices are placed by bisecting in eta, so interface midpoints land
// exactly on the profile and element quality follows the flat reference mesh.
double profile_at(const GeometrySpec& g, double x) {
  return g.profile(x == g.period ? 0.0 : x);  // keep the seam bit-exact
}

double terrain_y(const GeometrySpec& g, double x, double eta) {
  const double f = profile_at(g, x);
  if (eta == 0.0) return f;
  if (eta == g.b) return g.b;
  if (eta == -g.b) return -g.b;
  if (eta < 0.0) return -g.b + (f + g.b) * (eta + g.b) / g.b;
  return f + (g.b - f) * eta / g.b;
}

double terrain_eta(const GeometrySpec& g, double x, double y) {
  const double f = profile_at(g, x);
  if (y <= f) return -g.b + g.b * (y + g.b) / (f + g.b);
  return g.b * (y - f) / (g.b - f);
}

std::uint64_t ekey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross(b - a, c - a);
}

}  // namespace

double Mesh::area(int t) const {
  const Triangle& T = tri[static_cast<std::size_t>(t)];
  return signed_area(vertex[T.v[0]], vertex[T.v[1]], vertex[T.v[2]]);
}

double Mesh::diameter(int t) const {
  const Triangle& T = tri[static_cast<std::size_t>(t)];
  double d = 0.0;
  for (int k = 0; k < 3; ++k)
    d = std::max(d, norm(vertex[T.v[k]] - vertex[T.v[(k + 1) % 3]]));
  return d;
}

Vec2 Mesh::centroid(int t) const {
  const Triangle& T = tri[static_cast<std::size_t>(t)];
  Vec2 c = vertex[T.v[0]] + vertex[T.v[1]] + vertex[T.v[2]];
  return {c.x / 3.0, c.y / 3.0};
}

double total_area(const Mesh& mesh) {
  double s = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) s += mesh.area(t);
  return s;
}

double min_angle(const Mesh& mesh) {
  double best = std::numeric_limits<double>::infinity();
  for (const Triangle& T : mesh.tri) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 a = mesh.vertex[T.v[k]];
      const Vec2 b = mesh.vertex[T.v[(k + 1) % 3]];
      const Vec2 c = mesh.vertex[T.v[(k + 2) % 3]];
      const Vec2 u = b - a;
      const Vec2 v = c - a;
      const double co = dot(u, v) / (norm(u) * norm(v));
      best = std::min(best, std::acos(std::clamp(co, -1.0, 1.0)));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Topology rebuild: edge list, classes, partners, periodic vertex pairs.
// ---------------------------------------------------------------------------

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void rebuild_topology(Mesh& m) {
  const double L = m.geometry.period;
  const double b = m.geometry.b;
  const double tol = 1e-12 * std::max({1.0, L, b});

  m.edge.clear();
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(m.tri.size() * 2);

  for (int t = 0; t < m.num_triangles(); ++t) {
    const Triangle& T = m.tri[static_cast<std::size_t>(t)];
    if (!(m.area(t) > 0.0)) throw MeshError("triangle with nonpositive area");
    for (int k = 0; k < 3; ++k) {
      const int a = T.v[k];
      const int c = T.v[(k + 1) % 3];
      const std::uint64_t key = ekey(a, c);
      auto it = index.find(key);
      if (it == index.end()) {
        Edge e;
        e.a = std::min(a, c);
        e.b = std::max(a, c);
        e.tri = {t, -1};
        index.emplace(key, static_cast<int>(m.edge.size()));
        m.edge.push_back(e);
      } else {
        Edge& e = m.edge[static_cast<std::size_t>(it->second)];
        if (e.tri[1] != -1) throw MeshError("edge with more than two incident triangles");
        e.tri[1] = t;
      }
    }
  }

  for (Edge& e : m.edge) {
    const Vec2 pa = m.vertex[e.a];
    const Vec2 pb = m.vertex[e.b];
    if (e.tri[1] != -1) {
      const Region r0 = m.tri[static_cast<std::size_t>(e.tri[0])].region;
      const Region r1 = m.tri[static_cast<std::size_t>(e.tri[1])].region;
      if (r0 != r1)
        e.cls = EdgeClass::Interface;
      else
        e.cls = (r0 == Region::Fluid) ? EdgeClass::InteriorFluid : EdgeClass::InteriorSolid;
    } else if (near(pa.y, b, tol) && near(pb.y, b, tol)) {
      e.cls = EdgeClass::Top;
    } else if (near(pa.y, -b, tol) && near(pb.y, -b, tol)) {
      e.cls = EdgeClass::Bottom;
    } else if (near(pa.x, 0.0, tol) && near(pb.x, 0.0, tol)) {
      e.cls = EdgeClass::PeriodicLeft;
    } else if (near(pa.x, L, tol) && near(pb.x, L, tol)) {
      e.cls = EdgeClass::PeriodicRight;
    } else {
      throw UnclassifiableEdge("boundary edge lies on no boundary segment");
    }
  }

  // Periodic vertex pairing by matching heights.
  std::vector<std::pair<double, int>> left, right;
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (near(m.vertex[v].x, 0.0, tol)) left.emplace_back(m.vertex[v].y, v);
    if (near(m.vertex[v].x, L, tol)) right.emplace_back(m.vertex[v].y, v);
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  if (left.size() != right.size())
    throw MeshError("periodic boundaries carry different vertex counts");
  m.periodic_pairs.clear();
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!near(left[i].first, right[i].first, tol))
      throw MeshError("periodic vertex pairing broken: heights differ");
    m.periodic_pairs.emplace_back(left[i].second, right[i].second);
  }

  // Partner edges across the seam, matched by height interval.
  std::map<std::pair<double, double>, int> left_edges;
  for (int e = 0; e < static_cast<int>(m.edge.size()); ++e) {
    if (m.edge[static_cast<std::size_t>(e)].cls != EdgeClass::PeriodicLeft) continue;
    const Edge& E = m.edge[static_cast<std::size_t>(e)];
    double y0 = m.vertex[E.a].y, y1 = m.vertex[E.b].y;
    if (y0 > y1) std::swap(y0, y1);
    left_edges[{y0, y1}] = e;
  }
  for (int e = 0; e < static_cast<int>(m.edge.size()); ++e) {
    Edge& E = m.edge[static_cast<std::size_t>(e)];
    if (E.cls != EdgeClass::PeriodicRight) continue;
    double y0 = m.vertex[E.a].y, y1 = m.vertex[E.b].y;
    if (y0 > y1) std::swap(y0, y1);
    auto it = left_edges.find({y0, y1});
    if (it == left_edges.end()) {
      // co-refinement keeps heights bit-equal; fall back to a tolerant scan
      int found = -1;
      for (const auto& [iv, le] : left_edges)
        if (near(iv.first, y0, tol) && near(iv.second, y1, tol)) found = le;
      if (found < 0) throw MeshError("periodic edge without partner");
      E.partner = found;
      m.edge[static_cast<std::size_t>(found)].partner = e;
      continue;
    }
    E.partner = it->second;
    m.edge[static_cast<std::size_t>(it->second)].partner = e;
  }
  for (const Edge& E : m.edge)
    if ((E.cls == EdgeClass::PeriodicLeft || E.cls == EdgeClass::PeriodicRight) && E.partner < 0)
      throw MeshError("periodic edge without partner");
}

}  // namespace

Mesh classify_edges(Mesh mesh) {
  rebuild_topology(mesh);
  return mesh;
}

// ---------------------------------------------------------------------------
// Initial terrain mesh.
// ---------------------------------------------------------------------------

Mesh build_initial_mesh(const GeometrySpec& geometry, double target_h) {
  geometry.validate();
  if (!(target_h > 0.0)) throw InvalidParams("target_h must be positive");

  const double L = geometry.period;
  const double b = geometry.b;
  const double min_area = kAreaGuardFactor * L * L;

  // Column abscissas: profile corners plus a uniform split of each span.
  std::vector<double> base{0.0};
  for (double x : geometry.profile.breakpoints(L)) base.push_back(x);
  base.push_back(L);
  std::sort(base.begin(), base.end());

  double hx = target_h / std::sqrt(2.0);
  double hy = target_h / std::sqrt(2.0);
  for (int attempt = 0; attempt < 14; ++attempt) {
    std::vector<double> xs;
    for (std::size_t s = 0; s + 1 < base.size(); ++s) {
      const double len = base[s + 1] - base[s];
      const int nseg = std::max(1, static_cast<int>(std::ceil(len / hx)));
      for (int i = 0; i < nseg; ++i) xs.push_back(base[s] + len * i / nseg);
    }
    xs.push_back(L);

    const int ncol = static_cast<int>(xs.size());
    std::vector<double> fx(static_cast<std::size_t>(ncol));
    for (int i = 0; i < ncol; ++i) fx[static_cast<std::size_t>(i)] = geometry.profile(xs[static_cast<std::size_t>(i)]);
    fx.back() = fx.front();  // exact periodic seam

    double tf = 0.0, ts = 0.0;
    for (int i = 0; i < ncol; ++i) {
      tf = std::max(tf, b - fx[static_cast<std::size_t>(i)]);
      ts = std::max(ts, fx[static_cast<std::size_t>(i)] + b);
    }
    const int mf = std::max(1, static_cast<int>(std::ceil(tf / hy)));
    const int ms = std::max(1, static_cast<int>(std::ceil(ts / hy)));

    Mesh mesh;
    mesh.geometry = geometry;
    std::vector<int> col(static_cast<std::size_t>(ncol * (ms + mf + 1)));
    auto vid = [&](int i, int k) -> int& {
      return col[static_cast<std::size_t>(i * (ms + mf + 1) + k)];
    };
    for (int i = 0; i < ncol; ++i) {
      const double f = fx[static_cast<std::size_t>(i)];
      for (int k = 0; k <= ms + mf; ++k) {
        double y;
        if (k == 0)
          y = -b;
        else if (k < ms)
          y = -b + (f + b) * k / ms;
        else if (k == ms)
          y = f;
        else if (k == ms + mf)
          y = b;
        else
          y = f + (b - f) * (k - ms) / mf;
        vid(i, k) = mesh.num_vertices();
        mesh.vertex.push_back({xs[static_cast<std::size_t>(i)], y});
      }
    }

    // Terrain bisection keeps quality only once each cell resolves the
    // profile: the chord-to-curve deviation must stay below the row height.
    bool flat_enough = true;
    for (int i = 0; i + 1 < ncol; ++i) {
      const double f0 = fx[static_cast<std::size_t>(i)];
      const double f1 = fx[static_cast<std::size_t>(i + 1)];
      const double xm =
          0.5 * (xs[static_cast<std::size_t>(i)] + xs[static_cast<std::size_t>(i + 1)]);
      const double dev = std::abs(geometry.profile(xm) - 0.5 * (f0 + f1));
      const double row = std::min(std::min(b - f0, b - f1) / mf, std::min(f0 + b, f1 + b) / ms);
      if (dev > 0.25 * row) {
        flat_enough = false;
        break;
      }
    }
    if (!flat_enough) {
      hx /= 1.35;  // refine columns only; rows already meet the target
      continue;
    }

    bool ok = true;
    for (int i = 0; i + 1 < ncol && ok; ++i) {
      for (int k = 0; k < ms + mf && ok; ++k) {
        const int a = vid(i, k);
        const int bb = vid(i + 1, k);
        const int c = vid(i + 1, k + 1);
        const int d = vid(i, k + 1);
        const Region r = (k < ms) ? Region::Solid : Region::Fluid;
        // Diagonal a-c is the shared bisection edge of both triangles.
        Triangle t1{{c, a, bb}, r, 0};
        Triangle t2{{a, c, d}, r, 0};
        if (signed_area(mesh.vertex[c], mesh.vertex[a], mesh.vertex[bb]) <= min_area ||
            signed_area(mesh.vertex[a], mesh.vertex[c], mesh.vertex[d]) <= min_area) {
          ok = false;
          break;
        }
        mesh.tri.push_back(t1);
        mesh.tri.push_back(t2);
      }
    }
    if (ok) {
      double hmax = 0.0;
      for (const Triangle& T : mesh.tri)
        for (int k = 0; k < 3; ++k)
          hmax = std::max(hmax, norm(mesh.vertex[T.v[k]] - mesh.vertex[T.v[(k + 1) % 3]]));
      if (hmax <= target_h * (1.0 + 1e-12)) {
        rebuild_topology(mesh);
        return mesh;
      }
    }
    hx /= 1.35;
    hy /= 1.35;
  }
  throw ProfileTooSteep("could not build a valid mesh at the requested resolution");
}

// ---------------------------------------------------------------------------
// Newest-vertex bisection with conformity closure and periodic co-refinement.
// ---------------------------------------------------------------------------

namespace {

struct RefineWork {
  const GeometrySpec* geom = nullptr;
  std::vector<Vec2> verts;
  std::vector<Triangle> tris;
  std::vector<char> dead;
  std::unordered_map<std::uint64_t, std::array<int, 2>> incid;  // live incidence
  std::unordered_map<std::uint64_t, int> midpoint;
  long bisections = 0;
  long budget = 0;
  double min_area = 0.0;

  void add_incidence(int t) {
    const Triangle& T = tris[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      auto& slot = incid.try_emplace(ekey(T.v[k], T.v[(k + 1) % 3]), std::array<int, 2>{-1, -1})
                       .first->second;
      if (slot[0] == -1)
        slot[0] = t;
      else if (slot[1] == -1)
        slot[1] = t;
      else
        throw MeshError("refinement produced a non-manifold edge");
    }
  }

  void remove_incidence(int t) {
    const Triangle& T = tris[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      auto it = incid.find(ekey(T.v[k], T.v[(k + 1) % 3]));
      if (it == incid.end()) continue;
      if (it->second[0] == t) it->second[0] = -1;
      if (it->second[1] == t) it->second[1] = -1;
    }
  }

  int other_incident(int a, int b, int t) const {
    auto it = incid.find(ekey(a, b));
    if (it == incid.end()) return -1;
    if (it->second[0] != -1 && it->second[0] != t) return it->second[0];
    if (it->second[1] != -1 && it->second[1] != t) return it->second[1];
    return -1;
  }

  int get_midpoint(int a, int b) {
    const std::uint64_t key = ekey(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const Vec2 pa = verts[static_cast<std::size_t>(a)];
    const Vec2 pb = verts[static_cast<std::size_t>(b)];
    const double xm = 0.5 * (pa.x + pb.x);
    const double em = 0.5 * (terrain_eta(*geom, pa.x, pa.y) + terrain_eta(*geom, pb.x, pb.y));
    const Vec2 p{xm, terrain_y(*geom, xm, em)};
    const int id = static_cast<int>(verts.size());
    verts.push_back(p);
    midpoint.emplace(key, id);
    return id;
  }

  void bisect(int t, int m) {
    const Triangle T = tris[static_cast<std::size_t>(t)];
    remove_incidence(t);
    dead[static_cast<std::size_t>(t)] = 1;
    const int a = T.v[0], b = T.v[1], c = T.v[2];
    Triangle c1{{c, a, m}, T.region, T.generation + 1};
    Triangle c2{{b, c, m}, T.region, T.generation + 1};
    for (const Triangle& ch : {c1, c2}) {
      const double ar = signed_area(verts[static_cast<std::size_t>(ch.v[0])],
                                    verts[static_cast<std::size_t>(ch.v[1])],
                                    verts[static_cast<std::size_t>(ch.v[2])]);
      if (!(ar > min_area)) throw MeshError("bisection produced a degenerate triangle");
    }
    const int i1 = static_cast<int>(tris.size());
    tris.push_back(c1);
    dead.push_back(0);
    const int i2 = static_cast<int>(tris.size());
    tris.push_back(c2);
    dead.push_back(0);
    add_incidence(i1);
    add_incidence(i2);
    if (++bisections > budget) throw MeshError("refinement closure did not terminate");
  }

  // Split the bisection edge of t, first making the across-neighbor
  // compatible (classic recursive closure, run on an explicit stack).
  void split_refinement_edge(int t0) {
    std::vector<int> stack{t0};
    while (!stack.empty()) {
      const int t = stack.back();
      if (dead[static_cast<std::size_t>(t)]) {
        stack.pop_back();
        continue;
      }
      const Triangle& T = tris[static_cast<std::size_t>(t)];
      const int a = T.v[0], b = T.v[1];
      const int nb = other_incident(a, b, t);
      if (nb != -1) {
        const Triangle& NB = tris[static_cast<std::size_t>(nb)];
        if (ekey(NB.v[0], NB.v[1]) != ekey(a, b)) {
          stack.push_back(nb);
          continue;
        }
      }
      const int m = get_midpoint(a, b);
      bisect(t, m);
      if (nb != -1) bisect(nb, m);
      stack.pop_back();
    }
  }

  // Force a specific live edge to be split (used for periodic co-refinement).
  void force_split_edge(int a, int b) {
    for (int guard = 0; guard < 4; ++guard) {
      auto it = incid.find(ekey(a, b));
      if (it == incid.end()) return;  // already split
      const int t = (it->second[0] != -1) ? it->second[0] : it->second[1];
      if (t == -1) return;
      split_refinement_edge(t);
      if (incid.find(ekey(a, b)) == incid.end()) return;
    }
    throw MeshError("failed to split periodic partner edge");
  }
};

}  // namespace

Mesh refine(const Mesh& mesh, const std::vector<int>& marked) {
  if (marked.empty()) throw InvalidParams("refine: marked set must be non-empty");
  for (int id : marked)
    if (id < 0 || id >= mesh.num_triangles())
      throw InvalidParams("refine: marked id out of range");

  RefineWork w;
  w.geom = &mesh.geometry;
  w.verts = mesh.vertex;
  w.tris = mesh.tri;
  w.dead.assign(w.tris.size(), 0);
  w.min_area = kAreaGuardFactor * mesh.geometry.period * mesh.geometry.period;
  w.budget = 200l * static_cast<long>(w.tris.size() + marked.size()) + 10000;
  for (int t = 0; t < static_cast<int>(w.tris.size()); ++t) w.add_incidence(t);

  for (int id : marked)
    if (!w.dead[static_cast<std::size_t>(id)]) w.split_refinement_edge(id);

  // Periodic closure: heights on the two seams must stay identical. All seam
  // coordinates are bit-exact copies, so plain double comparison is safe.
  const double L = mesh.geometry.period;
  for (int pass = 0; pass < 1000; ++pass) {
    std::vector<double> ly, ry;
    std::vector<std::pair<std::pair<double, double>, std::pair<int, int>>> ledges, redges;
    for (const auto& [key, slot] : w.incid) {
      if (slot[0] == -1 && slot[1] == -1) continue;
      const int a = static_cast<int>(key >> 32);
      const int b = static_cast<int>(key & 0xffffffffu);
      const Vec2 pa = w.verts[static_cast<std::size_t>(a)];
      const Vec2 pb = w.verts[static_cast<std::size_t>(b)];
      if (pa.x == 0.0 && pb.x == 0.0) {
        ly.push_back(pa.y);
        ly.push_back(pb.y);
        ledges.push_back({{std::min(pa.y, pb.y), std::max(pa.y, pb.y)}, {a, b}});
      } else if (pa.x == L && pb.x == L) {
        ry.push_back(pa.y);
        ry.push_back(pb.y);
        redges.push_back({{std::min(pa.y, pb.y), std::max(pa.y, pb.y)}, {a, b}});
      }
    }
    auto uniq = [](std::vector<double>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(ly);
    uniq(ry);

    bool changed = false;
    auto co_refine = [&](const std::vector<double>& have, const std::vector<double>& want,
                         auto& edges) {
      for (double y : want) {
        if (std::binary_search(have.begin(), have.end(), y)) continue;
        for (const auto& [iv, vs] : edges) {
          if (y > iv.first && y < iv.second) {
            w.force_split_edge(vs.first, vs.second);
            changed = true;
            break;
          }
        }
      }
    };
    std::sort(ledges.begin(), ledges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::sort(redges.begin(), redges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    co_refine(ly, ry, ledges);  // right has breakpoints missing on the left
    co_refine(ry, ly, redges);
    if (!changed) break;
    if (pass == 999) throw MeshError("periodic co-refinement did not settle");
  }

  Mesh out;
  out.geometry = mesh.geometry;
  out.vertex = std::move(w.verts);
  out.tri.reserve(w.tris.size());
  for (std::size_t t = 0; t < w.tris.size(); ++t)
    if (!w.dead[t]) out.tri.push_back(w.tris[t]);
  rebuild_topology(out);
  return out;
}

// ---------------------------------------------------------------------------
// Text import/export.
// ---------------------------------------------------------------------------

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  out << "vertices " << mesh.num_vertices() << "\n";
  out << "triangles " << mesh.num_triangles() << "\n";
  char buf[64];
  for (const Vec2& p : mesh.vertex) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  for (const Triangle& T : mesh.tri)
    out << T.v[0] << " " << T.v[1] << " " << T.v[2] << " "
        << (T.region == Region::Fluid ? "fluid" : "solid") << "\n";
}

Mesh read_mesh_text(std::istream& in, const GeometrySpec& geometry) {
  std::string word;
  int nv = 0, nt = 0;
  if (!(in >> word >> nv) || word != "vertices")
    throw ParseError("expected 'vertices N' header", 1);
  if (!(in >> word >> nt) || word != "triangles")
    throw ParseError("expected 'triangles M' header", 2);
  Mesh mesh;
  mesh.geometry = geometry;
  mesh.vertex.resize(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v)
    if (!(in >> mesh.vertex[static_cast<std::size_t>(v)].x >>
          mesh.vertex[static_cast<std::size_t>(v)].y))
      throw ParseError("bad vertex line", 3 + v);
  mesh.tri.resize(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    Triangle& T = mesh.tri[static_cast<std::size_t>(t)];
    std::string tag;
    if (!(in >> T.v[0] >> T.v[1] >> T.v[2] >> tag))
      throw ParseError("bad triangle line", 3 + nv + t);
    if (tag == "fluid")
      T.region = Region::Fluid;
    else if (tag == "solid")
      T.region = Region::Solid;
    else
      throw ParseError("region tag must be fluid|solid", 3 + nv + t);
    for (int k = 0; k < 3; ++k)
      if (T.v[k] < 0 || T.v[k] >= nv) throw ParseError("vertex index out of range", 3 + nv + t);
    // orient CCW, then put the longest edge first as the bisection edge
    if (signed_area(mesh.vertex[T.v[0]], mesh.vertex[T.v[1]], mesh.vertex[T.v[2]]) < 0.0)
      std::swap(T.v[1], T.v[2]);
    int best = 0;
    double blen = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double len = norm(mesh.vertex[T.v[k]] - mesh.vertex[T.v[(k + 1) % 3]]);
      if (len > blen + 1e-15) {
        blen = len;
        best = k;
      }
    }
    std::rotate(T.v.begin(), T.v.begin() + best, T.v.end());
  }
  rebuild_topology(mesh);
  return mesh;
}

}  // namespace grating
