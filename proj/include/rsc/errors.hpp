#pragma once

#include <stdexcept>
#include <string>

namespace rsc {

/// Query lies outside the regime where an interior root of t = exp(-c(1-t)^d) exists.
class NoInteriorRoot : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shadow density is undefined exactly at c = c_star.
class AtCriticalPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotAFixedPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidProbability : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An oracle was asked to run above the size it is meant for.
class ScaleExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace rsc
