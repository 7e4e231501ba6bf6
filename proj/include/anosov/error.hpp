#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown letters, bad JSON, invalid indices or rays.
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// An enumeration or iteration would exceed its configured cap.
class ResourceCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Non-finite intermediates, solver failure, numerically singular input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The root gap is below tolerance, so the Cartan frame direction is not unique.
class GapTooSmall : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The boundary-map error budget did not drop below target before the depth cap.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double budget)
      : Error(what), budget_(budget) {}
  double budget() const noexcept { return budget_; }

 private:
  double budget_;
};

/// The eigenvalue gap of an element is below tolerance.
class NotProximal : public Error {
 public:
  NotProximal(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

}  // namespace anosov
