// Command-line front end: runs a configured scenario and writes the
// convergence CSV, mesh snapshots and optional VTK files.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grating/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitSolver = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled acoustic-elastic scattering solver for periodic gratings"};
  app.name("solve");

  std::string config_path;
  std::string mode;
  std::string out_dir;
  bool export_vtk = false;
  app.add_option("--config", config_path, "Path to a key=value configuration file")
      ->required();
  app.add_option("--mode", mode, "Override run mode: adaptive|uniform|both");
  app.add_option("--out", out_dir, "Override output directory");
  app.add_flag("--export-vtk", export_vtk, "Write solution_<iter>.vtk files");

  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open config file '" << config_path << "'\n";
      return kExitConfig;
    }
    std::ostringstream ss;
    ss << in.rdbuf();

    grating::RunConfig config = grating::parse_config(ss.str());
    if (!mode.empty()) {
      if (mode == "adaptive") config.mode = grating::RunMode::Adaptive;
      else if (mode == "uniform") config.mode = grating::RunMode::Uniform;
      else if (mode == "both") config.mode = grating::RunMode::Both;
      else {
        std::cerr << "error: --mode must be adaptive|uniform|both\n";
        return kExitConfig;
      }
    }
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (export_vtk) config.export_vtk = true;
    return grating::run(config);
  } catch (const grating::ParseError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const grating::ValidationError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const grating::InvalidParams& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const grating::ProfileTooSteep& err) {
    std::cerr << "geometry error: " << err.what() << "\n";
    return kExitGeometry;
  } catch (const grating::MeshError& err) {
    std::cerr << "geometry error: " << err.what() << "\n";
    return kExitGeometry;
  } catch (const grating::DegenerateEdge& err) {
    std::cerr << "geometry error: " << err.what() << "\n";
    return kExitGeometry;
  } catch (const grating::SingularMatrix& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return kExitSolver;
  } catch (const grating::SingularSystem& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
