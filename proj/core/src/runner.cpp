#include "grating/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

namespace grating {

namespace {

std::string fmt(double v, const char* f = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path.string());
  out << content;
}

}  // namespace

std::string convergence_csv(const ConvergenceRecord& record) {
  std::ostringstream out;
  out << "iter,dof,N,eps_h,eps_N,e_h,wall_ms\n";
  for (const IterationRecord& r : record.iterations) {
    out << r.iter << "," << r.dof << "," << r.n_truncation << "," << fmt(r.eps_h) << ","
        << fmt(r.eps_N) << ",";
    if (r.e_h >= 0.0) out << fmt(r.e_h);
    out << "," << fmt(r.wall_ms, "%.3f") << "\n";
  }
  if (record.budget_exhausted) out << "# budget-exhausted\n";
  return out.str();
}

void write_vtk(std::ostream& out, const Mesh& mesh, const Solution& solution) {
  out << "# vtk DataFile Version 3.0\n";
  out << "coupled acoustic-elastic grating solution\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Vec2& p : mesh.vertex) out << fmt(p.x) << " " << fmt(p.y) << " 0\n";
  out << "CELLS " << mesh.num_triangles() << " " << 4 * mesh.num_triangles() << "\n";
  for (const Triangle& T : mesh.tri) out << "3 " << T.v[0] << " " << T.v[1] << " " << T.v[2] << "\n";
  out << "CELL_TYPES " << mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) out << "5\n";

  std::vector<char> fluid(static_cast<std::size_t>(mesh.num_vertices()), 0);
  std::vector<char> solid(static_cast<std::size_t>(mesh.num_vertices()), 0);
  for (const Triangle& T : mesh.tri)
    for (int k = 0; k < 3; ++k)
      (T.region == Region::Fluid ? fluid : solid)[static_cast<std::size_t>(T.v[k])] = 1;

  out << "POINT_DATA " << mesh.num_vertices() << "\n";
  auto scalars = [&](const char* name, auto&& value) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int v = 0; v < mesh.num_vertices(); ++v) out << fmt(value(v)) << "\n";
  };
  scalars("Re_p", [&](int v) { return solution.p[static_cast<std::size_t>(v)].real(); });
  scalars("Im_p", [&](int v) { return solution.p[static_cast<std::size_t>(v)].imag(); });
  scalars("Re_u1", [&](int v) { return solution.u[static_cast<std::size_t>(v)][0].real(); });
  scalars("Im_u1", [&](int v) { return solution.u[static_cast<std::size_t>(v)][0].imag(); });
  scalars("Re_u2", [&](int v) { return solution.u[static_cast<std::size_t>(v)][1].real(); });
  scalars("Im_u2", [&](int v) { return solution.u[static_cast<std::size_t>(v)][1].imag(); });
  out << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const std::size_t i = static_cast<std::size_t>(v);
    out << (fluid[i] && solid[i] ? 1 : (fluid[i] ? 0 : 2)) << "\n";
  }
}

void print_table(std::ostream& out, const char* series, const ConvergenceRecord& record) {
  out << "series " << series << "\n";
  out << "  iter       dof    N        eps_h        eps_N          e_h\n";
  for (const IterationRecord& r : record.iterations) {
    char buf[160];
    if (r.e_h >= 0.0)
      std::snprintf(buf, sizeof(buf), "%6d %9d %4d %12.5g %12.5g %12.5g\n", r.iter, r.dof,
                    r.n_truncation, r.eps_h, r.eps_N, r.e_h);
    else
      std::snprintf(buf, sizeof(buf), "%6d %9d %4d %12.5g %12.5g            -\n", r.iter, r.dof,
                    r.n_truncation, r.eps_h, r.eps_N);
    out << buf;
  }
  if (record.budget_exhausted) out << "  (stopped on iteration/DoF budget)\n";
}

namespace {

void run_series(const RunConfig& config, bool adaptive, const std::string& suffix) {
  const std::filesystem::path dir(config.output_dir);
  IterationCallback cb = [&](int iter, const Mesh& mesh, const Solution& sol) {
    {
      std::ostringstream ms;
      write_mesh_text(mesh, ms);
      write_file(dir / ("mesh_" + suffix + std::to_string(iter) + ".txt"), ms.str());
    }
    if (config.export_vtk) {
      std::ostringstream vs;
      write_vtk(vs, mesh, sol);
      write_file(dir / ("solution_" + suffix + std::to_string(iter) + ".vtk"), vs.str());
    }
  };
  const RunResult result = adaptive
                               ? run_adaptive(config.geometry, config.params, config.adapt, cb)
                               : run_uniform(config.geometry, config.params, config.adapt, cb);
  const std::string csv_name = suffix.empty() ? "convergence.csv" : "convergence_uniform.csv";
  write_file(dir / csv_name, convergence_csv(result.record));
  print_table(std::cout, adaptive ? "adaptive" : "uniform", result.record);
}

}  // namespace

int run(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  std::cout << "scenario " << scenario_name(config.scenario) << ", mode " << mode_name(config.mode)
            << ", kappa " << fmt(config.params.kappa, "%.6g") << "\n";
  switch (config.mode) {
    case RunMode::Adaptive:
      run_series(config, true, "");
      break;
    case RunMode::Uniform:
      run_series(config, false, "");
      break;
    case RunMode::Both:
      run_series(config, true, "");
      run_series(config, false, "uniform_");
      break;
  }
  return 0;
}

}  // namespace grating
