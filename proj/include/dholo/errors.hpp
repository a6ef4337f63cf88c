#pragma once

#include <stdexcept>
#include <string>

namespace dholo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grid function was evaluated at a point outside its support.
class InsufficientSupport : public Error {
 public:
  explicit InsufficientSupport(const std::string& where)
      : Error("insufficient support: " + where) {}
};

/// A kernel table lookup fell outside the tabulated window.
class TableMiss : public Error {
 public:
  explicit TableMiss(const std::string& where) : Error("table miss: " + where) {}
};

/// A difference stencil would read outside its admissible set.
class StencilLeavesDomain : public Error {
 public:
  explicit StencilLeavesDomain(const std::string& where)
      : Error("stencil leaves domain: " + where) {}
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Too few usable samples for a fit.
class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what)
      : Error("insufficient data: " + what) {}
};

}  // namespace dholo
