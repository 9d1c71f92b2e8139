#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcglift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two permutations (or a permutation and a group) act on different point counts.
class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured work budget (tuple count, enumeration bound, point cap) would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always indicates a bug.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

/// A word expected to lie in a finite-index subgroup ends at another coset.
class NotInSubgroup : public PreconditionError {
 public:
  NotInSubgroup(const std::string& what, std::size_t coset) : PreconditionError(what), coset_(coset) {}
  std::size_t coset() const noexcept { return coset_; }

 private:
  std::size_t coset_;
};

/// An automorphism moved a subgroup generator out of a subgroup certified as invariant.
class CharacteristicViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mcglift
