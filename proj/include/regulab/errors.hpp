#pragma once

#include <stdexcept>
#include <string>

namespace regulab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: off-curve points, out-of-range parameters, degenerate families.
// The command-line tool maps this family of errors to exit code 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public DomainError {
 public:
  using DomainError::DomainError;
};

class SingularModel : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedRegime : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best, double error)
      : Error(what), best_estimate(best), error_estimate(error) {}
  double best_estimate;
  double error_estimate;
};

class IllConditionedLattice : public Error {
 public:
  using Error::Error;
};

class UnresolvedPoint : public Error {
 public:
  explicit UnresolvedPoint(const std::string& point)
      : Error("point has no numeric embedding: " + point), point_name(point) {}
  std::string point_name;
};

class InconclusiveOrder : public Error {
 public:
  using Error::Error;
};

class SingularPath : public Error {
 public:
  using Error::Error;
};

class NeedsOverride : public Error {
 public:
  using Error::Error;
};

class IncreaseM : public Error {
 public:
  using Error::Error;
};

class InconsistentData : public Error {
 public:
  using Error::Error;
};

}  // namespace regulab
