#include <doctest.h>

#include <random>

#include "mcglift/errors.hpp"
#include "mcglift/surface.hpp"

using namespace mcglift;

namespace {

SurfaceWord random_word(std::mt19937_64& rng, int genus, std::size_t max_len, bool reduced = false) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, 2 * genus);
  std::vector<Letter> w;
  std::size_t n = len(rng);
  while (w.size() < n) {
    Letter x = gen(rng) * (rng() % 2 ? 1 : -1);
    if (reduced && !w.empty() && w.back() == -x)
      continue;
    w.push_back(x);
  }
  return SurfaceWord(w);
}

SurfaceWord rotate(const SurfaceWord& w, std::size_t k) {
  auto l = w.letters();
  if (!l.empty())
    std::rotate(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(k % l.size()), l.end());
  return SurfaceWord(l);
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(free_reduce(SurfaceWord::parse("a1A1")).empty());
  CHECK(free_reduce(SurfaceWord()).empty());
  CHECK(free_reduce(SurfaceWord::parse("a1b1B1a1")) == SurfaceWord::parse("a1a1"));
  CHECK(cyclic_reduce(SurfaceWord::parse("b1a2b2B1")) == SurfaceWord::parse("a2b2"));
}

TEST_CASE("word parsing and printing") {
  auto w = SurfaceWord::parse("a1B2A10b3");
  CHECK(w.letters() == std::vector<Letter>{1, -4, -19, 6});
  CHECK(w.to_string() == "a1B2A10b3");
  CHECK(SurfaceWord::parse("1").empty());
  CHECK(w.inverse().to_string() == "B3a10b2A1");
  CHECK_THROWS_AS(SurfaceWord::parse("c1"), PreconditionError);
  CHECK_THROWS_AS(SurfaceWord::parse("a"), PreconditionError);
  CHECK_THROWS_AS(SurfaceWord(std::vector<Letter>{1, 0}), PreconditionError);
}

TEST_CASE("presentation shape") {
  CHECK_THROWS_AS(SurfacePresentation(1), PreconditionError);
  for (int g = 2; g <= 4; ++g) {
    SurfacePresentation p(g);
    CHECK(p.relator().size() == static_cast<std::size_t>(4 * g));
    CHECK(cyclic_reduce(p.relator()) == p.relator());
  }
  CHECK(SurfacePresentation(2).relator().to_string() == "a1b1A1B1a2b2A2B2");
}

TEST_CASE("triviality examples") {
  SurfacePresentation p(2);
  CHECK(p.is_trivial(p.relator()));
  CHECK(p.is_trivial(p.relator().inverse()));
  CHECK_FALSE(p.is_trivial(SurfaceWord::parse("a1")));
  CHECK_FALSE(p.is_trivial(SurfaceWord::parse("a1b1A1B1")));
  CHECK(p.is_trivial(SurfaceWord()));
  CHECK_THROWS_AS(p.is_trivial(SurfaceWord::parse("a3")), PreconditionError);
}

TEST_CASE("conjugates of relators are trivial") {
  std::mt19937_64 rng(17);
  for (int g = 2; g <= 3; ++g) {
    SurfacePresentation p(g);
    for (int i = 0; i < 500; ++i) {
      auto x = random_word(rng, g, 20);
      auto r = rng() % 2 ? p.relator() : p.relator().inverse();
      CHECK(p.is_trivial(x * rotate(r, rng()) * x.inverse()));
    }
  }
}

TEST_CASE("triviality is invariant under the usual moves") {
  std::mt19937_64 rng(23);
  SurfacePresentation p(2);
  for (int i = 0; i < 300; ++i) {
    auto w = random_word(rng, 2, 14);
    bool t = p.is_trivial(w);
    auto u = random_word(rng, 2, 6);
    CHECK(p.is_trivial(free_reduce(w)) == t);
    CHECK(p.is_trivial(w.inverse()) == t);
    CHECK(p.is_trivial(rotate(w, rng())) == t);
    CHECK(p.is_trivial(u * w * u.inverse()) == t);
    CHECK(p.is_trivial(w * w.inverse()));
    CHECK(p.words_equal(w, w));
  }
}

TEST_CASE("products of relator conjugates are trivial") {
  std::mt19937_64 rng(29);
  SurfacePresentation p(2);
  for (int i = 0; i < 200; ++i) {
    SurfaceWord w;
    for (int j = 0; j < 3; ++j) {
      auto x = random_word(rng, 2, 6);
      w = w * x * rotate(rng() % 2 ? p.relator() : p.relator().inverse(), rng()) * x.inverse();
    }
    CHECK(p.is_trivial(w));
  }
}

TEST_CASE("words_equal") {
  SurfacePresentation p(2);
  auto u = SurfaceWord::parse("a1b2A2");
  CHECK(p.words_equal(u, u));
  CHECK_FALSE(p.words_equal(SurfaceWord::parse("a1"), SurfaceWord::parse("b1")));
  CHECK(p.words_equal(p.relator() * SurfaceWord::parse("a1"), SurfaceWord::parse("a1")));
  CHECK(p.words_equal(commutator(SurfaceWord::parse("a1"), SurfaceWord::parse("b1")),
                      commutator(SurfaceWord::parse("b2"), SurfaceWord::parse("a2"))));
}

TEST_CASE("cover genus") {
  CHECK(cover_genus(2, 3) == 4);
  CHECK(cover_genus(2, 6) == 7);
  for (int g = 2; g < 8; ++g) {
    CHECK(cover_genus(g, 1) == g);
    for (int d = 1; d < 20; ++d)
      CHECK(cover_genus(g, d + 1) > cover_genus(g, d));
  }
  CHECK_THROWS_AS(cover_genus(1, 2), PreconditionError);
  CHECK_THROWS_AS(cover_genus(2, 0), PreconditionError);
}
