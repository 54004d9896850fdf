#pragma once

#include <stdexcept>
#include <string>

namespace pcm {

// Common base so callers can catch everything this library throws in one place.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The constraint system itself is contradictory (e.g. a subgradient vanished at
// an infeasible point, certifying an empty sublevel set).
class InconsistentProblem : public Error {
public:
  explicit InconsistentProblem(const std::string& what) : Error(what) {}
};

// An operator produced NaN/inf, or was applied where its formula degenerates.
class NonFiniteResult : public Error {
public:
  explicit NonFiniteResult(const std::string& what) : Error(what) {}
};

// A numeric parameter is outside its admissible range (e.g. eta, r, tolerances).
class InvalidParameter : public Error {
public:
  explicit InvalidParameter(const std::string& what) : Error(what) {}
};

// Malformed caller data: non-finite vectors, dimension mismatches, bad bases,
// infeasible starting points.
class InvalidInput : public Error {
public:
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

// A set was used where a (declared obtuse) cone is required.
class NotACone : public Error {
public:
  explicit NotACone(const std::string& what) : Error(what) {}
};

// A relaxation map returned a value outside [1, 2].
class InvalidRelaxation : public Error {
public:
  explicit InvalidRelaxation(const std::string& what) : Error(what) {}
};

// A state-dependent schedule was stepped without the iterate context it needs.
class MissingContext : public Error {
public:
  explicit MissingContext(const std::string& what) : Error(what) {}
};

// Unknown named scenario.
class UnknownScenario : public Error {
public:
  explicit UnknownScenario(const std::string& what) : Error(what) {}
};

// One or more benchmark rows had trials that failed to terminate.
class RowFailed : public Error {
public:
  explicit RowFailed(const std::string& what) : Error(what) {}
};

// File I/O or parse failure on trace/table CSV.
class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace pcm
