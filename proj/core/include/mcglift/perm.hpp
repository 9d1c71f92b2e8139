#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mcglift {

using Point = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

/**
 * A permutation of the points 0..n-1, stored as its image array.
 *
 * Composition convention, used everywhere in this library:
 *   (p * q)(x) == p(q(x)),
 * i.e. the right-hand factor acts first.
 */
class Permutation {
 public:
  Permutation() = default;

  /// Throws PreconditionError unless `images` is a bijection of 0..n-1.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);

  /// Parses cycle notation such as "(0 1 2)(3 4)". "()" is the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;

  /// Smallest point moved, or degree() for the identity.
  Point first_moved() const noexcept;

  Permutation inverse() const;

  /// Order as the lcm of cycle lengths.
  BigInt order() const;

  /// Cycle notation with 0-based points, fixed points omitted; "()" for the identity.
  std::string cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  static Permutation from_images_unchecked(std::vector<Point> images);
  friend Permutation compose(const Permutation& p, const Permutation& q);

  std::vector<Point> images_;
};

/// p * q with (p * q)(x) = p(q(x)). Throws DegreeMismatch.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// x h x^-1.
Permutation conjugate(const Permutation& x, const Permutation& h);

Permutation power(const Permutation& p, std::uint64_t e);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/**
 * A permutation group given by generators together with a base and strong
 * generating set, built by deterministic Schreier-Sims. The base is chosen
 * lazily as the smallest point moved by each new sifting residue, so the
 * result depends only on the generator list.
 *
 * Instances are immutable after construction and cheap to copy (the BSGS is
 * shared).
 */
class PermGroup {
 public:
  PermGroup() = default;

  /// build_bsgs. An empty generator list yields the trivial group.
  static PermGroup generate(std::size_t degree, std::vector<Permutation> generators);
  static PermGroup generate(std::vector<Permutation> generators);
  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const noexcept;
  const std::vector<Permutation>& generators() const noexcept;
  const BigInt& order() const noexcept;

  /// Membership by sifting through the stabiliser chain. Throws DegreeMismatch.
  bool contains(const Permutation& p) const;

  /// Every generator of `other` is a member of this group.
  bool contains(const PermGroup& other) const;

  std::vector<Point> base() const;
  std::vector<std::size_t> orbit_lengths() const;
  std::vector<Permutation> strong_generators() const;

  /// Orbit of a point under the generators, in discovery order.
  std::vector<Point> orbit(Point x) const;

  /// Uniform random element from the transversals.
  Permutation random_element(std::mt19937_64& rng) const;

  /// Calls `fn` on every element, in a fixed order; stops early when `fn` returns false.
  void for_each_element(const std::function<bool(const Permutation&)>& fn) const;

  /// All elements; throws BudgetExceeded when order() > bound.
  std::vector<Permutation> elements(std::uint64_t bound) const;

 private:
  struct Level;
  struct Chain;
  std::shared_ptr<const Chain> chain_;
};

/// Product of the fundamental orbit lengths equals order(); exposed for tests.
BigInt order_from_orbits(const PermGroup& g);

/// Largest power of two dividing n (n > 0).
BigInt two_part(const BigInt& n);

/// Largest power of p dividing n (n > 0).
BigInt prime_part(const BigInt& n, unsigned p);

}  // namespace mcglift
