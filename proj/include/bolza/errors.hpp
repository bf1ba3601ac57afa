#pragma once

#include <stdexcept>
#include <string>

namespace bolza {

// Base for every error raised by the core library. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside its mathematical domain (e.g. theta not in (0, pi/2)).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative method ran out of budget. `achieved` carries the best error
// estimate reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Paths or loops that touch or enclose branch points they must avoid, or
// continuation steps that cannot separate the two sheets.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Two computations that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Evaluation of a form density at one of its poles.
class PoleError : public Error {
 public:
  using Error::Error;
};

}  // namespace bolza
