#include <doctest.h>

#include <random>
#include <set>

#include "mcglift/autact.hpp"
#include "mcglift/errors.hpp"

using namespace mcglift;

namespace {

std::size_t mod2_group_order(const std::vector<Mod2Matrix>& gens) {
  std::set<Mod2Matrix> seen;
  std::vector<Mod2Matrix> queue;
  const std::size_t n = gens.front().size();
  Mod2Matrix id(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    id[i][i] = 1;
  seen.insert(id);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& g : gens) {
      auto y = mod2_multiply(queue[head], g);
      if (seen.insert(y).second)
        queue.push_back(y);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("standard generators are automorphisms") {
  for (int g = 2; g <= 4; ++g) {
    SurfacePresentation pres(g);
    auto gens = standard_autgens(g);
    CHECK(gens.size() == static_cast<std::size_t>(2 * g + (g - 1) + 1 + 2 * g));
    for (const auto& s : gens) {
      INFO(s.name);
      CHECK(is_well_defined(pres, s));
      CHECK(inverse_pair_holds(pres, s));
      CHECK(is_well_defined(pres, s.inverse()));
      CHECK(is_symplectic_mod2(mod2_action(s)));
    }
  }
}

TEST_CASE("mod 2 images generate Sp(4, F2)") {
  std::vector<Mod2Matrix> mats;
  for (const auto& s : standard_autgens(2))
    mats.push_back(mod2_action(s));
  CHECK(mod2_group_order(mats) == 720);
}

TEST_CASE("composition convention") {
  auto gens = standard_autgens(2);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto& s = gens[rng() % gens.size()];
    const auto& t = gens[rng() % gens.size()];
    auto w = SurfaceWord::parse("a1b2A2b1");
    CHECK(compose(s, t).apply(w) == s.apply(t.apply(w)));
    CHECK(free_reduce(compose(s, s.inverse()).apply(w)) == w);
  }
  CHECK(identity_aut(2).apply(SurfaceWord::parse("a1b1")) == SurfaceWord::parse("a1b1"));
  CHECK(inner_aut(2, SurfaceWord::parse("a1")).apply(SurfaceWord::parse("b1")) == SurfaceWord::parse("a1b1A1"));
}

TEST_CASE("precomposition") {
  auto s3 = FiniteTarget::symmetric3();
  auto epis = enumerate_epis(2, s3);
  for (const auto& rho : epis) {
    CHECK(precompose(rho, identity_aut(2)) == rho);
    for (const auto& s : standard_autgens(2)) {
      auto r = precompose(rho, s);
      CHECK(is_surjective(r));
      CHECK(satisfies_relator_by_permutations(r));
      CHECK(precompose(r, s.inverse()) == rho);
    }
    auto inn = precompose(rho, inner_aut(2, SurfaceWord::parse("a1")));
    CHECK(target_equivalent(inn, rho));
    CHECK(canonical_representative(inn) == canonical_representative(rho));
  }
}

TEST_CASE("precompose evaluates sigma(x) under rho") {
  auto rho = *first_epimorphism(2, FiniteTarget::alternating5());
  for (const auto& s : standard_autgens(2)) {
    auto r = precompose(rho, s);
    for (int x = 1; x <= 4; ++x)
      CHECK(r.images[static_cast<std::size_t>(x - 1)] == evaluate(rho, s.images[static_cast<std::size_t>(x - 1)]));
  }
}

TEST_CASE("canonical representative") {
  auto c2 = FiniteTarget::cyclic2();
  auto h = enumerate_epis(2, c2).front();
  CHECK(canonical_representative(h) == h);
  auto custom = FiniteTarget::custom("s3-copy", FiniteTarget::symmetric3()->group());
  auto hc = enumerate_epis(2, custom).front();
  CHECK_THROWS_AS(canonical_representative(hc), PreconditionError);
}

TEST_CASE("C2 orbit is every epimorphism") {
  auto c2 = FiniteTarget::cyclic2();
  auto epis = enumerate_epis(2, c2);
  auto gens = standard_autgens(2);
  auto rec = orbit(epis.front(), gens);
  CHECK(rec.k() == 15);
  CHECK(rec.index_of(epis.front()).has_value());
  CHECK(std::is_sorted(rec.members.begin(), rec.members.end()));
  for (const auto& m : rec.members)
    CHECK(orbit(m, gens).members == rec.members);
  CHECK(rec.members == epis);
}

TEST_CASE("S3 orbit sizes") {
  auto s3 = FiniteTarget::symmetric3();
  auto rho = *first_epimorphism(2, s3);
  auto gens = standard_autgens(2);
  CHECK(orbit(rho, gens).k() == 360);
  CHECK(orbit(rho, gens, OrbitOptions{true}).k() == 60);
  CHECK_THROWS_AS(orbit(rho, gens, OrbitOptions{false, 100}), BudgetExceeded);
}

TEST_CASE("characteristic certification") {
  auto c2 = FiniteTarget::cyclic2();
  auto gens = standard_autgens(2);
  auto rec = orbit(enumerate_epis(2, c2).front(), gens);
  auto ev = certify_characteristic(rec, gens);
  REQUIRE(ev.pass);
  CHECK_FALSE(ev.witness);
  REQUIRE(ev.permutations.size() == gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (std::size_t i = 0; i < rec.k(); ++i)
      CHECK(rec.members[ev.permutations[s][i]] == precompose(rec.members[i], gens[s]));

  // Composing two evidence rows matches precomposition by the composite.
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (std::size_t t = 0; t < gens.size(); ++t)
      for (std::size_t i = 0; i < rec.k(); ++i)
        CHECK(rec.members[ev.permutations[t][ev.permutations[s][i]]] ==
              precompose(rec.members[i], compose(gens[s], gens[t])));

  for (std::size_t drop = 0; drop < rec.k(); ++drop) {
    OrbitRecord cut = rec;
    cut.members.erase(cut.members.begin() + static_cast<std::ptrdiff_t>(drop));
    auto bad = certify_characteristic(cut, gens);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.witness);
    CHECK_FALSE(cut.index_of(bad.witness->image));
  }
}
