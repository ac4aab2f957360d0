#pragma once

#include <stdexcept>
#include <string>

namespace evtow {

/// Base of every error the library throws on bad input or an unsolvable model.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A route, chromosome or instance whose shape is wrong (missing anchors, unknown ids).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported file content.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The model admits no acceptable answer (unreachable flight, empty feasible set).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace evtow
