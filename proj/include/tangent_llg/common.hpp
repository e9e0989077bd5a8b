#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tangent_llg {

using Index = std::size_t;
using Vec3 = Eigen::Vector3d;

/// Base of every error thrown by the library. The CLI maps the concrete
/// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Mesh or field file could not be parsed; the message names the line.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// A nodal value is too short to build a frame or to be normalized.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A quantity needed by a diagnostic was not recorded during the run.
class DiagnosticUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace tangent_llg
