#include "grating/dofmap.hpp"

#include <algorithm>
#include <cmath>

namespace grating {

DofMap build_dof_map(const Mesh& mesh, const PhysicalParams& params) {
  params.validate();
  const int nv = mesh.num_vertices();

  std::vector<char> touches_fluid(static_cast<std::size_t>(nv), 0);
  std::vector<char> touches_solid(static_cast<std::size_t>(nv), 0);
  for (const Triangle& T : mesh.tri)
    for (int k = 0; k < 3; ++k)
      (T.region == Region::Fluid ? touches_fluid : touches_solid)[static_cast<std::size_t>(T.v[k])] = 1;

  DofMap map;
  map.mesh_vertices = nv;
  map.fluid_dof.assign(static_cast<std::size_t>(nv), -1);
  map.solid_dof.assign(static_cast<std::size_t>(nv), -1);
  map.master_vertex.assign(static_cast<std::size_t>(nv), -1);
  map.phase = std::exp(cplx(0.0, params.alpha() * mesh.geometry.period));
  for (const auto& [left, right] : mesh.periodic_pairs)
    map.master_vertex[static_cast<std::size_t>(right)] = left;

  // Deterministic numbering: masters sorted lexicographically by coordinates,
  // fluid scalars first, then solid pairs.
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v)
    if (!map.is_slave(v)) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Vec2 pa = mesh.vertex[static_cast<std::size_t>(a)];
    const Vec2 pb = mesh.vertex[static_cast<std::size_t>(b)];
    if (pa.x != pb.x) return pa.x < pb.x;
    if (pa.y != pb.y) return pa.y < pb.y;
    return a < b;
  });

  int next = 0;
  for (int v : order)
    if (touches_fluid[static_cast<std::size_t>(v)]) map.fluid_dof[static_cast<std::size_t>(v)] = next++;
  for (int v : order)
    if (touches_solid[static_cast<std::size_t>(v)]) {
      map.solid_dof[static_cast<std::size_t>(v)] = next;
      next += 2;
    }
  map.total_unknowns = next;

  // Slaves alias their master's unknowns.
  for (const auto& [left, right] : mesh.periodic_pairs) {
    map.fluid_dof[static_cast<std::size_t>(right)] = map.fluid_dof[static_cast<std::size_t>(left)];
    map.solid_dof[static_cast<std::size_t>(right)] = map.solid_dof[static_cast<std::size_t>(left)];
  }
  return map;
}

}  // namespace grating
