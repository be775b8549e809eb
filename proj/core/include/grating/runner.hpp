// Run orchestration and export: convergence CSV, mesh text files, legacy VTK.
#pragma once

#include <iosfwd>

#include "grating/config.hpp"

namespace grating {

// Executes the configured pipelines and writes all artifacts into
// config.output_dir. Returns 0 on completion (budget exhaustion included);
// module errors propagate as exceptions.
int run(const RunConfig& config);

std::string convergence_csv(const ConvergenceRecord& record);

// Legacy ASCII UNSTRUCTURED_GRID with point data Re_p, Im_p, Re_u1, Im_u1,
// Re_u2, Im_u2 and an integer region code (0 fluid, 1 interface, 2 solid).
void write_vtk(std::ostream& out, const Mesh& mesh, const Solution& solution);

void print_table(std::ostream& out, const char* series, const ConvergenceRecord& record);

}  // namespace grating
