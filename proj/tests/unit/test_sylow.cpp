#include <doctest.h>

#include <random>

#include "mcglift/errors.hpp"
#include "mcglift/sylow.hpp"
#include "oracles.hpp"

using namespace mcglift;

namespace {

Permutation block_perm(const std::vector<Permutation>& locals) {
  std::vector<Point> images(3 * locals.size());
  for (std::size_t j = 0; j < locals.size(); ++j)
    for (Point i = 0; i < 3; ++i)
      images[3 * j + i] = static_cast<Point>(3 * j + locals[j](i));
  return Permutation(images);
}

PermGroup s3() {
  return PermGroup::generate({Permutation::from_cycles(3, "(0 1)"), Permutation::from_cycles(3, "(0 1 2)")});
}

PermGroup random_subdirect(std::mt19937_64& rng, std::size_t k) {
  auto s3_elems = s3().elements(6);
  std::uniform_int_distribution<std::size_t> pick(0, 5);
  while (true) {
    std::vector<Permutation> gens;
    for (int i = 0; i < 2 + static_cast<int>(rng() % 2); ++i) {
      std::vector<Permutation> locals;
      for (std::size_t j = 0; j < k; ++j)
        locals.push_back(s3_elems[pick(rng)]);
      gens.push_back(block_perm(locals));
    }
    auto g = PermGroup::generate(3 * k, gens);
    if (is_subdirect_s3_product(g))
      return g;
  }
}

}  // namespace

TEST_CASE("Sylow 2-subgroup of S3") {
  auto w = sylow2(s3());
  CHECK(w.sub.order() == 2);
  CHECK(w.index == 3);
  auto all = oracle::closure(s3().generators(), 3);
  REQUIRE(all.size() == 6);
  for (const auto& h : oracle::closure(w.sub.generators(), 3))
    CHECK(all.count(h));
}

TEST_CASE("odd order group has trivial Sylow 2-subgroup") {
  auto c3 = PermGroup::generate({Permutation::from_cycles(3, "(0 1 2)")});
  auto w = sylow2(c3);
  CHECK(w.sub.order() == 1);
  CHECK(w.index == 3);
}

TEST_CASE("Sylow 2-subgroup of S3 x S3") {
  auto g = PermGroup::generate({Permutation::from_cycles(6, "(0 1)"), Permutation::from_cycles(6, "(0 1 2)"),
                                Permutation::from_cycles(6, "(3 4)"), Permutation::from_cycles(6, "(3 4 5)")});
  auto all = oracle::closure(g.generators(), 6);
  REQUIRE(all.size() == 36);
  auto w = sylow2(g);
  CHECK(w.sub.order() == 4);
  CHECK(w.index == 9);
  auto h = oracle::closure(w.sub.generators(), 6);
  CHECK(h.size() == 4);
  CHECK(oracle::normalizer_size(all, h) == 4);
}

TEST_CASE("Sylow via generic growth on a non-product group") {
  auto s4 = PermGroup::generate({Permutation::from_cycles(4, "(0 1 2 3)"), Permutation::from_cycles(4, "(0 1)")});
  auto w = sylow2(s4);
  CHECK(w.sub.order() == 8);
  CHECK(w.index == 3);
  auto a5 = PermGroup::generate({Permutation::from_cycles(5, "(0 1 2 3 4)"), Permutation::from_cycles(5, "(0 1 2)")});
  CHECK(sylow2(a5).sub.order() == 4);
}

TEST_CASE("normalizer self test on small examples") {
  auto g = s3();
  auto t = PermGroup::generate(3, {Permutation::from_cycles(3, "(0 1)")});
  auto c = PermGroup::generate(3, {Permutation::from_cycles(3, "(0 1 2)")});
  auto all = oracle::closure(g.generators(), 3);

  CHECK(normalizer_is_self(SubgroupWitness::make(g, t), NormalizerMethod::Enumeration).self_normalizing);
  CHECK(oracle::normalizer_size(all, oracle::closure(t.generators(), 3)) == 2);
  CHECK_FALSE(normalizer_is_self(SubgroupWitness::make(g, c), NormalizerMethod::Enumeration).self_normalizing);
  CHECK(oracle::normalizer_size(all, oracle::closure(c.generators(), 3)) == 6);
  CHECK(normalizer_is_self(SubgroupWitness::make(g, g)).self_normalizing);
}

TEST_CASE("structural path is gated on the S3^k shape") {
  auto s4 = PermGroup::generate({Permutation::from_cycles(4, "(0 1 2 3)"), Permutation::from_cycles(4, "(0 1)")});
  auto w = sylow2(s4);
  CHECK_THROWS_AS(normalizer_is_self(w, NormalizerMethod::Structural), PreconditionError);
}

TEST_CASE("structural and enumeration normalizer decisions agree") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(trial % 5);
    auto g = random_subdirect(rng, k);
    auto w = sylow2(g, SylowOptions{rng()});
    REQUIRE(w.sub.order() == two_part(g.order()));
    auto e = normalizer_is_self(w, NormalizerMethod::Enumeration);
    auto s = normalizer_is_self(w, NormalizerMethod::Structural);
    CHECK(e.self_normalizing == s.self_normalizing);
    CHECK(s.self_normalizing);
  }
}

TEST_CASE("Sylow subgroups from different seeds are conjugate") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_subdirect(rng, 3);
    auto a = sylow2(g, SylowOptions{1});
    auto b = sylow2(g, SylowOptions{2 + static_cast<std::uint64_t>(trial)});
    CHECK(a.sub.order() == b.sub.order());
    auto x = find_conjugator(g, a.sub, b.sub);
    REQUIRE(x.has_value());
    CHECK(same_subgroup(conjugate_subgroup(g, a.sub, *x), b.sub));
  }
}

TEST_CASE("conjugate_subgroup") {
  auto g = s3();
  auto t = PermGroup::generate(3, {Permutation::from_cycles(3, "(0 1)")});
  auto moved = conjugate_subgroup(g, t, Permutation::from_cycles(3, "(1 2)"));
  CHECK(same_subgroup(moved, PermGroup::generate(3, {Permutation::from_cycles(3, "(0 2)")})));
  CHECK(same_subgroup(conjugate_subgroup(g, t, Permutation::identity(3)), t));
  CHECK(same_subgroup(conjugate_subgroup(g, t, Permutation::from_cycles(3, "(0 1)")), t));
  CHECK(moved.order() == t.order());
  CHECK_THROWS_AS(conjugate_subgroup(t, t, Permutation::from_cycles(3, "(1 2)")), PreconditionError);
}

TEST_CASE("subgroup witness validates membership") {
  auto t = PermGroup::generate(3, {Permutation::from_cycles(3, "(0 1)")});
  auto c = PermGroup::generate(3, {Permutation::from_cycles(3, "(0 1 2)")});
  CHECK_THROWS_AS(SubgroupWitness::make(c, t), PreconditionError);
  auto w = SubgroupWitness::make(s3(), c);
  CHECK(w.index * w.sub.order() == w.ambient.order());
}
