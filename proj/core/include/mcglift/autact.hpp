#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcglift/finquot.hpp"
#include "mcglift/surface.hpp"

namespace mcglift {

/// An endomorphism of the genus-g surface group given by the image words of
/// a_1, b_1, ..., a_g, b_g, together with the images for its inverse.
struct AutGen {
  std::string name;
  std::vector<SurfaceWord> images;
  std::vector<SurfaceWord> inverse_images;

  int genus() const noexcept { return static_cast<int>(images.size() / 2); }

  /// Substitutes the images into w and freely reduces.
  SurfaceWord apply(const SurfaceWord& w) const;
  SurfaceWord apply_inverse(const SurfaceWord& w) const;
  AutGen inverse() const;
};

/// (sigma * tau)(x) = sigma(tau(x)).
AutGen compose(const AutGen& sigma, const AutGen& tau);

AutGen identity_aut(int genus);

/// x -> u x u^-1.
AutGen inner_aut(int genus, const SurfaceWord& u, std::string name = {});

/**
 * Generators used throughout: twists Ta_i (b_i -> b_i a_i) and Tb_i
 * (a_i -> a_i b_i), handle-mixing moves M_i on handles i, i+1, the
 * orientation-reversing involution a_i <-> b_{g+1-i}, and conjugation by
 * each standard generator.
 */
std::vector<AutGen> standard_autgens(int genus);

/// Label of the generator set returned by standard_autgens, recorded in certificates.
inline constexpr const char* kStandardAutgenSet = "twists+mixing+inversion+inner/v1";

/// The image of the relator is trivial.
bool is_well_defined(const SurfacePresentation& pres, const AutGen& sigma);

/// sigma composed with its stored inverse (both orders) fixes every generator.
bool inverse_pair_holds(const SurfacePresentation& pres, const AutGen& sigma);

/// rho o sigma; throws InvariantBreach if the result violates the relator.
FiniteHom precompose(const FiniteHom& rho, const AutGen& sigma);

/// Lexicographically least image tuple over the target's automorphisms.
/// Throws PreconditionError for targets without a stored automorphism group.
FiniteHom canonical_representative(const FiniteHom& rho);

/// Two homs differ by an automorphism of the target.
bool target_equivalent(const FiniteHom& a, const FiniteHom& b);

struct OrbitOptions {
  bool mod_target_auts = false;
  std::size_t cap = 2'000'000;
};

struct OrbitRecord {
  FiniteHom seed;
  std::vector<FiniteHom> members;  // sorted by image tuple
  bool modded_by_target_auts = false;
  std::vector<std::string> generator_labels;

  std::size_t k() const noexcept { return members.size(); }
  std::optional<std::size_t> index_of(const FiniteHom& h) const;
};

/// Breadth-first closure of {rho} under precomposition. Throws BudgetExceeded past the cap.
OrbitRecord orbit(const FiniteHom& rho, const std::vector<AutGen>& gens, const OrbitOptions& options = {});

struct CharacteristicWitness {
  std::size_t member;
  std::size_t generator;
  FiniteHom image;
};

struct CharacteristicEvidence {
  bool pass = false;
  std::vector<std::string> generator_labels;
  /// permutations[s][i] = index of members[i] o gens[s]; only complete when pass is true.
  std::vector<std::vector<std::size_t>> permutations;
  std::optional<CharacteristicWitness> witness;
};

CharacteristicEvidence certify_characteristic(const OrbitRecord& rec, const std::vector<AutGen>& gens);

using Mod2Matrix = std::vector<std::vector<std::uint8_t>>;

/// Column j is the mod-2 abelianisation of sigma(x_j), in the order a_1, b_1, ..., a_g, b_g.
Mod2Matrix mod2_action(const AutGen& sigma);

/// M^T J M = J for the intersection form J (a_i . b_i = 1).
bool is_symplectic_mod2(const Mod2Matrix& m);

Mod2Matrix mod2_multiply(const Mod2Matrix& x, const Mod2Matrix& y);

}  // namespace mcglift
