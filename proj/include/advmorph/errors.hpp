#pragma once

#include <stdexcept>
#include <string>

namespace advmorph {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, bad index).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A perturbation produced a non-positive body dimension.
class DegenerateShape : public Error {
 public:
  using Error::Error;
};

/// Environment state became non-finite.
class SimulationDiverged : public Error {
 public:
  using Error::Error;
};

/// Invalid hyperparameters or configuration file contents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace advmorph
