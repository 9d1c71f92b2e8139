#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mcglift/perm.hpp"

namespace mcglift {

/// Signed generator index: a_j is 2j-1, b_j is 2j (j from 1), negative for inverses.
using Letter = int;

constexpr Letter gen_a(int j) { return 2 * j - 1; }
constexpr Letter gen_b(int j) { return 2 * j; }

/// A word in the standard generators a_1, b_1, ..., a_g, b_g. Not reduced implicitly.
class SurfaceWord {
 public:
  SurfaceWord() = default;
  explicit SurfaceWord(std::vector<Letter> letters);
  SurfaceWord(std::initializer_list<Letter> letters) : SurfaceWord(std::vector<Letter>(letters)) {}

  /// Parses "a1b1A1B1" (capital letter = inverse). "" and "1" are the empty word.
  static SurfaceWord parse(std::string_view text);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Largest generator index used (0 for the empty word).
  int max_generator() const noexcept;

  SurfaceWord inverse() const;
  std::string to_string() const;

  friend SurfaceWord operator*(const SurfaceWord& u, const SurfaceWord& v);
  friend bool operator==(const SurfaceWord&, const SurfaceWord&) = default;
  friend auto operator<=>(const SurfaceWord&, const SurfaceWord&) = default;

 private:
  std::vector<Letter> letters_;
};

SurfaceWord free_reduce(const SurfaceWord& w);

/// Free reduction followed by removal of cancelling first/last letters.
SurfaceWord cyclic_reduce(const SurfaceWord& w);

/// [u, v] = u v u^-1 v^-1.
SurfaceWord commutator(const SurfaceWord& u, const SurfaceWord& v);

/**
 * The one-relator presentation < a_1, b_1, ..., a_g, b_g | [a_1,b_1]...[a_g,b_g] >
 * of a closed surface group of genus g >= 2, with a Dehn's-algorithm word
 * problem solver. The relator satisfies C'(1/7) for g >= 2, so Dehn's
 * algorithm decides triviality.
 */
class SurfacePresentation {
 public:
  /// Throws PreconditionError for genus < 2.
  explicit SurfacePresentation(int genus);

  int genus() const noexcept { return genus_; }
  int generator_count() const noexcept { return 2 * genus_; }
  const SurfaceWord& relator() const noexcept { return relator_; }

  /**
   * Dehn reduction: repeatedly replaces any subword made of more than half of
   * a cyclic conjugate of the relator (or its inverse) by the inverse of the
   * shorter complement, with free and cyclic reduction in between. The result
   * is empty exactly when the input is trivial. It represents a conjugate of
   * the input, not the input itself.
   */
  SurfaceWord dehn_reduce(const SurfaceWord& w) const;

  bool is_trivial(const SurfaceWord& w) const;
  bool words_equal(const SurfaceWord& u, const SurfaceWord& v) const;

  /// Throws PreconditionError if w uses a generator beyond 2g.
  void check_word(const SurfaceWord& w) const;

 private:
  std::vector<Letter> reduce_linear(std::vector<Letter> input) const;
  bool find_cyclic_piece(const std::vector<Letter>& w, std::size_t& start) const;

  int genus_;
  SurfaceWord relator_;
  // Every subword of length 2g+1 of a cyclic conjugate of relator^{+-1},
  // mapped to the inverse of its complement (length 2g-1).
  std::map<std::vector<Letter>, std::vector<Letter>> pieces_;
};

/// Genus of a degree-d unbranched cover of a genus-g surface: d(g-1)+1.
BigInt cover_genus(int genus, const BigInt& degree);

}  // namespace mcglift
