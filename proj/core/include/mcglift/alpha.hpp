#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mcglift/autact.hpp"
#include "mcglift/finquot.hpp"
#include "mcglift/surface.hpp"

namespace mcglift {

/**
 * Action of the surface group on the right cosets H q of a subgroup H of the
 * target, through hom. Coset 0 is H itself; the transversal comes from a
 * breadth-first tree using a_1, b_1, ..., then their inverses.
 */
struct CosetTable {
  FiniteHom hom;
  std::size_t d = 0;
  /// forward[x-1][c] = c . x for the positive letter x.
  std::vector<std::vector<std::uint32_t>> forward;
  std::vector<std::vector<std::uint32_t>> backward;
  std::vector<SurfaceWord> reps;
  /// Tree edge into each coset c > 0: (parent, letter) with parent . letter = c.
  std::vector<std::pair<std::size_t, Letter>> tree;

  int genus() const noexcept { return hom.genus(); }
  std::size_t act(std::size_t c, Letter x) const;
  std::size_t act(std::size_t c, const SurfaceWord& w) const;
};

/// Cosets of `sub` (a subgroup of the hom's target). Throws PreconditionError unless hom is onto.
CosetTable build_coset_table(const FiniteHom& hom, const PermGroup& sub);

/// Cosets of the trivial subgroup: the regular action, index |target|.
CosetTable build_kernel_table(const FiniteHom& hom);

/// s[c,x] = t_c x t_{c.x}^-1 for a coset c and positive letter x, off the tree.
struct SchreierGenerator {
  std::size_t coset;
  Letter letter;
  SurfaceWord word;
  std::string label() const;
};

struct RSGenerators {
  CosetTable table;
  std::vector<SchreierGenerator> gens;
  /// (coset, letter) -> index into gens; absent for tree edges.
  std::map<std::pair<std::size_t, Letter>, std::size_t> lookup;
};

/// Signed 1-based indices into RSGenerators::gens; negative for inverses.
using SchreierWord = std::vector<int>;

RSGenerators schreier_generators(const CosetTable& table);

SurfaceWord expand(const RSGenerators& rs, const SchreierWord& v);

/// Throws NotInSubgroup (carrying the final coset) when w does not fix coset 0.
SchreierWord rewrite(const RSGenerators& rs, const SurfaceWord& w);

std::string to_string(const RSGenerators& rs, const SchreierWord& v);

/// alpha(phi): the value on each Schreier generator, as a Schreier word.
struct AutImage {
  std::string source;
  std::vector<SchreierWord> values;
};

/// Throws CharacteristicViolation when phi moves a subgroup generator out of the subgroup.
AutImage alpha_apply(const RSGenerators& rs, const AutGen& phi);

/// The identity on the subgroup generators.
AutImage identity_image(const RSGenerators& rs);

/// v -> u v u^-1.
AutImage inner_image(const RSGenerators& rs, const SchreierWord& u);

/// Substitutes the values of `outer` into the letters of v.
SchreierWord substitute(const AutImage& outer, const SchreierWord& v);

/// (phi o psi) on subgroup generators.
AutImage compose(const AutImage& phi, const AutImage& psi);

/// Generator-wise equality after expansion into the surface group.
bool images_equal(const RSGenerators& rs, const SurfacePresentation& pres, const AutImage& x, const AutImage& y);

struct ContainmentEvidence {
  bool pass = false;
  std::size_t index = 0;
  std::vector<std::size_t> failures;  // Schreier generator indices whose inner check failed
};

/// For each Schreier generator s, alpha(inn_s) = inn_[s]; returns the index d.
ContainmentEvidence verify_finite_index_containment(const RSGenerators& rs);

struct InjectivityEvidence {
  bool holds = false;         // alpha(phi) trivial implies phi trivial
  bool alpha_fixes_all = false;
  bool phi_fixes_all = false;
};

InjectivityEvidence verify_injectivity_mechanism(const RSGenerators& rs, const AutGen& phi);

/// Images of the standard generators as distinct basis vectors of (C2)^{2g}.
FiniteHom homology_mod2_hom(int genus);

/// "homology2": mod-2 homology kernel; "c2": a_1 -> generator, rest trivial; "trivial": the whole group.
/// Throws PreconditionError on other names.
CosetTable cover_by_name(const std::string& name, int genus);

}  // namespace mcglift
