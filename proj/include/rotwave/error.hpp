#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace rotwave {

// Short %g rendering for error messages.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Process exit codes used by the CLI.
enum class ExitCode : int {
  success = 0,
  failure = 1,
  config_error = 2,
  numeric_blowup = 3,
  constraint_violation = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::failure; }
};

// Bad configuration, out-of-range parameters, shape mismatches.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::config_error; }
};

// Structurally valid call with unusable data (k = 0, too few samples, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::config_error; }
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failure; carries the last residual.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }
  ExitCode exit_code() const noexcept override { return ExitCode::numeric_blowup; }

 private:
  double residual_;
};

// Non-finite state after a time step.
class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, double t, double norm)
      : Error(what), t_(t), norm_(norm) {}
  double time() const noexcept { return t_; }
  double norm() const noexcept { return norm_; }
  ExitCode exit_code() const noexcept override { return ExitCode::numeric_blowup; }

 private:
  double t_;
  double norm_;
};

// The surface curl constraint (omega . n = 0) does not hold.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }
  ExitCode exit_code() const noexcept override {
    return ExitCode::constraint_violation;
  }

 private:
  double residual_;
};

}  // namespace rotwave
