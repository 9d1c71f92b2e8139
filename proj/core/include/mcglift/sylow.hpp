#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mcglift/perm.hpp"

namespace mcglift {

/// Default number of elements an oracle path may enumerate.
inline constexpr std::uint64_t kDefaultEnumerationBound = 1'000'000;

/// A subgroup together with the group it was checked against.
struct SubgroupWitness {
  PermGroup ambient;
  PermGroup sub;
  BigInt index;

  /// Checks that every generator of `sub` lies in `ambient` and computes the index.
  static SubgroupWitness make(PermGroup ambient, PermGroup sub);
};

/**
 * Shape of a group acting on 3k points in consecutive blocks {3j, 3j+1, 3j+2},
 * i.e. a subgroup of S3 x ... x S3 with factor j on block j. Returns k when
 * every generator preserves every block.
 */
std::optional<std::size_t> s3_product_factors(const PermGroup& g);

/// True when the projection to every factor of S3^k is onto S3.
bool is_subdirect_s3_product(const PermGroup& g);

struct SylowOptions {
  /// Unset: deterministic choice. Set: randomised choice reproducible from the seed.
  std::optional<std::uint64_t> seed;
  std::uint64_t enumeration_bound = kDefaultEnumerationBound;
};

/**
 * A Sylow 2-subgroup. Subgroups of S3^k use the product description
 * H = G n (<X_1> x ... x <X_k>) solved by linear algebra over F3; any other
 * group must have order within the enumeration bound and is handled by
 * growing a 2-subgroup inside its normaliser.
 */
SubgroupWitness sylow2(const PermGroup& g, const SylowOptions& options = {});

enum class NormalizerMethod { Auto, Enumeration, Structural };

std::string to_string(NormalizerMethod m);

struct NormalizerDecision {
  bool self_normalizing = false;
  NormalizerMethod method = NormalizerMethod::Auto;
};

/**
 * Decides N_ambient(sub) == sub.
 *
 * Enumeration scans every element of the ambient group (order must be within
 * `bound`). Structural applies only when the ambient group is a subdirect
 * subgroup of S3^k and `sub` is one of its Sylow 2-subgroups: it checks that
 * sub lies in a product <X_1> x ... x <X_k> and that every X_j occurs as the
 * j-th coordinate of some element of sub; the centraliser of X_j in S3 being
 * {1, X_j} then forces the normaliser into that product. Auto prefers
 * enumeration within the bound.
 *
 * Throws PreconditionError when the structural path is requested on a group of
 * the wrong shape, BudgetExceeded when no path applies.
 */
NormalizerDecision normalizer_is_self(const SubgroupWitness& w,
                                      NormalizerMethod method = NormalizerMethod::Auto,
                                      std::uint64_t bound = kDefaultEnumerationBound);

/// x h x^-1 with a fresh BSGS. Throws PreconditionError unless x is in g and h <= g.
PermGroup conjugate_subgroup(const PermGroup& g, const PermGroup& h, const Permutation& x);

/// Some x in g with x a x^-1 == b (as subgroups), by scanning g.
std::optional<Permutation> find_conjugator(const PermGroup& g, const PermGroup& a,
                                           const PermGroup& b,
                                           std::uint64_t bound = kDefaultEnumerationBound);

/// x normalises h (x h_i x^-1 in h for every generator h_i).
bool normalizes(const Permutation& x, const PermGroup& h);

/// Same member set.
bool same_subgroup(const PermGroup& a, const PermGroup& b);

}  // namespace mcglift
