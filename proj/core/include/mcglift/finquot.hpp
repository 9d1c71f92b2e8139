#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcglift/perm.hpp"
#include "mcglift/surface.hpp"
#include "mcglift/sylow.hpp"

namespace mcglift {

enum class TargetKind {
  Trivial,
  Cyclic2,
  Symmetric3,
  Alternating5,
  Psl2,                 // PSL_2(F_p) on the p+1 points of the projective line
  ElementaryAbelian2,   // (C_2)^r on 2r points
  Custom,               // any permutation group supplied by the caller
};

using ElementId = std::uint32_t;

/**
 * A finite group realised as permutations, with its elements indexed in
 * lexicographic order of their image arrays (so the identity is element 0).
 * Small targets carry a full multiplication table.
 */
class FiniteTarget {
 public:
  static std::shared_ptr<const FiniteTarget> trivial();
  static std::shared_ptr<const FiniteTarget> cyclic2();
  static std::shared_ptr<const FiniteTarget> symmetric3();
  static std::shared_ptr<const FiniteTarget> alternating5();
  /// Throws PreconditionError unless p is a prime >= 5.
  static std::shared_ptr<const FiniteTarget> psl2(unsigned p);
  static std::shared_ptr<const FiniteTarget> elementary_abelian2(unsigned rank);
  static std::shared_ptr<const FiniteTarget> custom(std::string name, PermGroup group);

  /// Parses "s3", "c2", "a5", "psl2" (with parameter p), "c2^r", "trivial".
  static std::shared_ptr<const FiniteTarget> by_name(const std::string& name, unsigned parameter = 0);

  TargetKind kind() const noexcept { return kind_; }
  unsigned parameter() const noexcept { return parameter_; }
  /// Short tag: "s3", "c2", "a5", "psl2(7)", "c2^4", "trivial", or the custom name.
  const std::string& name() const noexcept { return name_; }

  const PermGroup& group() const noexcept { return group_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return group_.degree(); }

  const Permutation& element(ElementId i) const { return elements_.at(i); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  /// Throws PreconditionError when p is not an element.
  ElementId index_of(const Permutation& p) const;

  static constexpr ElementId identity() { return 0; }
  ElementId mul(ElementId a, ElementId b) const;
  ElementId inv(ElementId a) const { return inverse_[a]; }

  /// Irreducible character degrees, when known.
  const std::optional<std::vector<unsigned>>& character_degrees() const noexcept { return char_degrees_; }

  /// Aut(target) as maps on element indices (identity first); empty when not provided.
  const std::vector<std::vector<ElementId>>& automorphisms() const noexcept { return automorphisms_; }

  /**
   * Permutations of the same points that normalise the group and induce the
   * automorphisms above by conjugation (S3 for s3, S5 for a5, PGL_2(F_p) for
   * psl2). The first entry outside the group itself, when present, represents
   * the non-inner coset.
   */
  const std::vector<Permutation>& normalizing_generators() const noexcept { return normalizing_; }
  std::optional<Permutation> outer_automorphism_representative() const;

 private:
  FiniteTarget(TargetKind kind, unsigned parameter, std::string name, PermGroup group,
               std::vector<Permutation> normalizing, std::optional<std::vector<unsigned>> degrees);

  TargetKind kind_;
  unsigned parameter_;
  std::string name_;
  PermGroup group_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElementId, PermutationHash> lookup_;
  std::vector<ElementId> table_;  // order^2 entries when present
  std::vector<ElementId> inverse_;
  std::optional<std::vector<unsigned>> char_degrees_;
  std::vector<Permutation> normalizing_;
  std::vector<std::vector<ElementId>> automorphisms_;
};

using TargetPtr = std::shared_ptr<const FiniteTarget>;

/// A homomorphism from the genus-g surface group, given by the images of a_1, b_1, ..., a_g, b_g.
struct FiniteHom {
  TargetPtr target;
  std::vector<ElementId> images;

  int genus() const noexcept { return static_cast<int>(images.size() / 2); }

  friend bool operator==(const FiniteHom& a, const FiniteHom& b) {
    return a.target == b.target && a.images == b.images;
  }
  friend bool operator<(const FiniteHom& a, const FiniteHom& b) { return a.images < b.images; }
};

/// Builds a hom from images; throws PreconditionError unless the relator maps to 1.
FiniteHom make_hom(TargetPtr target, std::vector<ElementId> images);

ElementId evaluate(const FiniteHom& hom, const SurfaceWord& w);
Permutation evaluate_permutation(const FiniteHom& hom, const SurfaceWord& w);

/// Relator check through the multiplication table.
bool satisfies_relator(const TargetPtr& target, const std::vector<ElementId>& images);

/// Relator check recomputed from the permutations with compose(), independent of the table.
bool satisfies_relator_by_permutations(const FiniteHom& hom);

PermGroup image_group(const FiniteHom& hom);

/// Image order (by BSGS) equals the target order.
bool is_surjective(const FiniteHom& hom);

std::vector<Permutation> image_permutations(const FiniteHom& hom);

std::string hom_to_string(const FiniteHom& hom);

struct EnumerationBudget {
  /// Upper bound on |target|^(2g).
  std::uint64_t max_tuples = 100'000'000;
};

/// All homs in lexicographic order of image indices. Throws BudgetExceeded.
std::vector<FiniteHom> enumerate_homs(int genus, const TargetPtr& target,
                                      const EnumerationBudget& budget = {});

/// The surjective members of enumerate_homs, same order.
std::vector<FiniteHom> enumerate_epis(int genus, const TargetPtr& target,
                                      const EnumerationBudget& budget = {});

/**
 * |Hom(surface group, Q)| = |Q|^(2g-1) * sum over irreducible characters of
 * chi(1)^(2-2g). Throws PreconditionError without a degree list and
 * InvariantBreach when the value is not an integer.
 */
BigInt count_homs_oracle(int genus, const TargetPtr& target);

/// Upper-triangular subgroup of PSL_2(F_p): the stabiliser of the point at infinity.
SubgroupWitness borel_subgroup(unsigned p);

/// Point index of infinity in the psl2 realisation.
inline Point projective_infinity(unsigned p) { return static_cast<Point>(p); }

/**
 * A deterministic epimorphism: the lexicographically first generating pair
 * (x, y) placed as a_1 -> x, b_1 -> y, a_2 -> y, b_2 -> x, other handles trivial.
 */
std::optional<FiniteHom> first_epimorphism(int genus, const TargetPtr& target);

bool is_prime(unsigned n);

}  // namespace mcglift
