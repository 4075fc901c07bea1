#pragma once

#include <stdexcept>
#include <string>

namespace fqst {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (empty lists, n too small, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateAngleError : public Error {
 public:
  using Error::Error;
};

// Malformed instance or topology.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The geometric solver only accepts full topologies with degree-3 Steiner points.
class UnsupportedTopologyError : public Error {
 public:
  using Error::Error;
};

// The geometric solver only accepts unit supplies.
class UnsupportedWeightsError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed (e.g. an assembled system is not diagonally dominant).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Exact search refused an instance that is too large to enumerate.
class GuardRefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fqst
