// Unknown numbering for the quasi-periodic P1 spaces. Interface vertices
// carry both a fluid scalar and a solid pair; right-boundary unknowns are
// slaves of their left partners with multiplier e^{i alpha period} and are
// eliminated from the system.
#pragma once

#include <complex>
#include <vector>

#include "grating/mesh.hpp"
#include "grating/params.hpp"

namespace grating {

struct DofMap {
  // Per vertex: fluid scalar unknown and solid base unknown (components
  // base, base+1); -1 where the field is absent. Slaves alias their
  // master's indices.
  std::vector<int> fluid_dof;
  std::vector<int> solid_dof;
  std::vector<int> master_vertex;  // left partner for right-boundary vertices, else -1
  cplx phase{1.0, 0.0};            // e^{i alpha period}
  int total_unknowns = 0;
  int mesh_vertices = 0;  // consistency guard for assemble()

  bool is_slave(int v) const { return master_vertex[static_cast<std::size_t>(v)] >= 0; }
  // multiplier applied to a trial (column) contribution at vertex v
  cplx column_factor(int v) const { return is_slave(v) ? phase : cplx(1.0, 0.0); }
  // multiplier applied to a test (row) contribution at vertex v
  cplx row_factor(int v) const { return is_slave(v) ? std::conj(phase) : cplx(1.0, 0.0); }
};

DofMap build_dof_map(const Mesh& mesh, const PhysicalParams& params);

}  // namespace grating
