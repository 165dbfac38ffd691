// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hst {

/// Base of every exception raised by the core library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (r <= 0, x on the
/// boundary, alpha out of range, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Caller violated a documented precondition (empty grid, mismatched
/// dimensions, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature ran out of refinements before meeting its tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double partial_value, double achieved_error)
      : Error(what), partial_value_(partial_value), achieved_error_(achieved_error) {}
  double partial_value() const noexcept { return partial_value_; }
  double achieved_error() const noexcept { return achieved_error_; }

private:
  double partial_value_;
  double achieved_error_;
};

/// Numerical Laplace inversion could not reach its self-consistency tolerance.
class InversionError : public Error {
public:
  InversionError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Malformed or out-of-range configuration document.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Output files could not be created or would be overwritten without --force.
class IoError : public Error {
public:
  using Error::Error;
};

/// Simulation could not produce a usable estimate (e.g. every path censored).
class SimulationError : public Error {
public:
  using Error::Error;
};

}  // namespace hst
