// Error types thrown by the library. The CLI maps these onto exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace grating {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical or geometric parameters violate their invariants.
struct InvalidParams : Error {
  using Error::Error;
};

// Some |alpha_n| coincides with kappa, kappa1 or kappa2 (relative 1e-12);
// the DtN multipliers would degenerate.
struct WoodAnomaly : Error {
  using Error::Error;
};

struct DegenerateEdge : Error {
  using Error::Error;
};

struct ProfileTooSteep : Error {
  using Error::Error;
};

struct MeshError : Error {
  using Error::Error;
};

struct UnclassifiableEdge : MeshError {
  using MeshError::MeshError;
};

struct InconsistentMesh : Error {
  using Error::Error;
};

struct QuadratureOverflow : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct SingularSystem : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, int line_no)
      : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  int line;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace grating
