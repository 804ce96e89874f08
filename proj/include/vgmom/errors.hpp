/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vgmom {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or arguments. Carries the name of the violated
/// constraint ("nu", "beta", "k", ...). Maps to CLI exit code 2.
class ValidationError : public Error {
 public:
  ValidationError(std::string constraint, const std::string& what)
      : Error(what), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// Numerical failure (non-convergence, tolerance not met). Maps to CLI
/// exit code 1.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A series failed its stopping rule within the term budget.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, long terms_used)
      : NumericalError(what), terms_used_(terms_used) {}

  long terms_used() const noexcept { return terms_used_; }

 private:
  long terms_used_;
};

/// Adaptive quadrature exhausted its subdivision budget. Carries the best
/// value reached and the achieved relative error estimate.
class ToleranceError : public NumericalError {
 public:
  ToleranceError(const std::string& what, double achieved_rel_error,
                 double value_sign, double value_log_abs)
      : NumericalError(what),
        achieved_rel_error_(achieved_rel_error),
        value_sign_(value_sign),
        value_log_abs_(value_log_abs) {}

  double achieved_rel_error() const noexcept { return achieved_rel_error_; }
  double value_sign() const noexcept { return value_sign_; }
  double value_log_abs() const noexcept { return value_log_abs_; }

 private:
  double achieved_rel_error_;
  double value_sign_;
  double value_log_abs_;
};

/// The VG density is unbounded at the requested point (x = mu with nu <= 0).
class SingularityError : public Error {
 public:
  using Error::Error;
};

}  // namespace vgmom
