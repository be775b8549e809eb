// Scenario registry and the flat key=value run configuration.
#pragma once

#include <string>

#include "grating/adapt.hpp"

namespace grating {

enum class Scenario { Example1, Example2, Example3, Example4, Custom };
enum class RunMode { Adaptive, Uniform, Both };

struct RunConfig {
  Scenario scenario = Scenario::Example1;
  PhysicalParams params;
  GeometrySpec geometry;
  AdaptConfig adapt;
  RunMode mode = RunMode::Adaptive;
  std::string output_dir = "out";
  bool export_vtk = false;

  void validate() const;
};

// Built-in parameter sets. The corner scenarios use fixed stand-in profiles:
// a symmetric triangle wave of amplitude 0.5 (example2) and a three-tooth
// sawtooth (example3); example4 uses 0.1 + 0.15 sin(x1) + 0.35 cos(5 x1).
RunConfig scenario_defaults(Scenario scenario);

// One key=value pair per line, '#' comments, unknown keys rejected.
// Throws ParseError with a line number or ValidationError naming the
// violated invariant.
RunConfig parse_config(const std::string& text);

const char* scenario_name(Scenario s);
const char* mode_name(RunMode m);

}  // namespace grating
