#include <doctest.h>

#include "mcglift/errors.hpp"
#include "mcglift/forge.hpp"
#include "oracles.hpp"

using namespace mcglift;

namespace {

FiniteHom s3_seed() { return *first_epimorphism(2, FiniteTarget::symmetric3()); }

const CoverCertificate& full_s3() {
  static const CoverCertificate c = forge_certificate_s3(2, s3_seed());
  return c;
}

}  // namespace

TEST_CASE("subdirect image of a single factor") {
  auto img = build_subdirect_image(std::vector<FiniteHom>{s3_seed()});
  CHECK(img.k == 1);
  CHECK(img.group.order() == 6);
  CHECK(oracle::closure(img.generator_images, 3).size() == 6);
}

TEST_CASE("factors differing by an inner automorphism give a diagonal") {
  auto rho = s3_seed();
  auto conj = precompose(rho, inner_aut(2, SurfaceWord::parse("a1")));
  REQUIRE(conj != rho);
  auto img = build_subdirect_image(std::vector<FiniteHom>{rho, conj});
  CHECK(img.group.order() == 6);
  CHECK(oracle::closure(img.generator_images, 6).size() == 6);
}

TEST_CASE("inequivalent A5 factors give the full product") {
  auto a5 = FiniteTarget::alternating5();
  auto rho = *first_epimorphism(2, a5);
  FiniteHom other;
  for (const auto& s : standard_autgens(2)) {
    other = precompose(rho, s);
    if (!target_equivalent(other, rho))
      break;
  }
  REQUIRE_FALSE(target_equivalent(other, rho));
  auto img = build_subdirect_image(std::vector<FiniteHom>{rho, other});
  CHECK(img.group.order() == 3600);
}

TEST_CASE("subdirect image preconditions") {
  auto s3 = FiniteTarget::symmetric3();
  FiniteHom not_onto;
  for (const auto& h : enumerate_homs(2, s3))
    if (!is_surjective(h)) {
      not_onto = h;
      break;
    }
  CHECK_THROWS_AS(build_subdirect_image(std::vector<FiniteHom>{not_onto}), PreconditionError);
  CHECK_THROWS_AS(forge_certificate_s3(2, not_onto), PreconditionError);
  CHECK_THROWS_AS(forge_certificate_s3(2, *first_epimorphism(2, FiniteTarget::alternating5())), PreconditionError);
}

TEST_CASE("single-factor pipeline") {
  ForgeOptions o;
  o.truncate_orbit = 1;
  auto c = forge_certificate_s3(2, s3_seed(), o);
  CHECK(c.k == 1);
  CHECK(*c.G_order == 6);
  CHECK(*c.H_order == 2);
  CHECK(*c.degree == 3);
  CHECK(*c.genus_out == 4);
  CHECK(c.check_a.pass);
  CHECK(c.check_b.pass);
  CHECK_FALSE(c.characteristic.pass);
  CHECK(c.status == CertificateStatus::Invalid);
  CHECK(c.failing_stage == "characteristic");
}

TEST_CASE("full S3 orbit certificate") {
  const auto& c = full_s3();
  CHECK(c.status == CertificateStatus::Valid);
  CHECK(c.k == 360);
  CHECK(c.characteristic.pass);
  CHECK(c.check_a.pass);
  CHECK(c.check_b.pass);
  CHECK(c.K_trivial);
  CHECK(*c.G_order == BigInt("3294258113514384"));
  CHECK(*c.H_order == two_part(*c.G_order));
  CHECK(*c.degree == prime_part(*c.G_order, 3));
  CHECK(*c.degree % 2 == 1);
  CHECK(*c.genus_out == cover_genus(2, *c.degree));
  CHECK(c.evidence.size() == c.generator_labels.size());
}

TEST_CASE("group orders do not depend on the Sylow seed") {
  ForgeOptions o;
  o.seed = 99;
  auto c = forge_certificate_s3(2, s3_seed(), o);
  CHECK(c.G_order == full_s3().G_order);
  CHECK(c.H_order == full_s3().H_order);
  CHECK(c.degree == full_s3().degree);
  CHECK(c.status == CertificateStatus::Valid);
}

TEST_CASE("point cap yields PARTIAL") {
  ForgeOptions o;
  o.bsgs_point_cap = 100;
  auto c = forge_certificate_s3(2, s3_seed(), o);
  CHECK(c.status == CertificateStatus::Partial);
  CHECK(c.failing_stage == "bsgs-point-cap");
  CHECK_FALSE(c.degree);
}

TEST_CASE("Hall route with one and two factors") {
  auto t = FiniteTarget::psl2(5);
  auto epi = *first_epimorphism(2, t);
  auto c1 = forge_certificate_hall(2, 5, epi, 1);
  CHECK(c1.k == 1);
  CHECK(*c1.G_order == 60);
  CHECK(*c1.H_order == 10);
  CHECK(*c1.degree == 6);
  CHECK(c1.check_a.pass);
  CHECK(c1.check_b.pass);
  CHECK(c1.check_b.method == "explicit");
  CHECK(c1.surjectivity.pass);
  CHECK(c1.orbit_size == 1440);

  auto c2 = forge_certificate_hall(2, 5, epi, 2);
  CHECK(*c2.G_order == 3600);
  CHECK(*c2.H_order == 100);
  CHECK(*c2.degree == 36);
  CHECK(c2.check_a.method == "factorwise+enumeration");
  CHECK(c2.check_a.pass);
  CHECK_FALSE(c2.characteristic.pass);
  CHECK(c2.status == CertificateStatus::Invalid);
}

TEST_CASE("Hall outer automorphism moves the Borel subgroup to a conjugate") {
  for (unsigned p : {5u, 7u}) {
    auto t = FiniteTarget::psl2(p);
    auto outer = t->outer_automorphism_representative();
    REQUIRE(outer);
    CHECK_FALSE(t->group().contains(*outer));
    auto b = borel_subgroup(p);
    std::vector<Permutation> moved;
    for (const auto& h : b.sub.generators())
      moved.push_back(conjugate(*outer, h));
    CHECK(find_conjugator(t->group(), b.sub, PermGroup::generate(p + 1, moved)).has_value());
  }
}

TEST_CASE("equivalent pair is rejected at surjectivity") {
  auto t = FiniteTarget::psl2(5);
  auto epi = *first_epimorphism(2, t);
  auto twin = precompose(epi, inner_aut(2, SurfaceWord::parse("b1")));
  auto c = forge_certificate_hall_collection(2, 5, {epi, twin});
  CHECK(c.status == CertificateStatus::Invalid);
  CHECK(c.failing_stage == "surjectivity");
  REQUIRE(c.equivalent_pair);
  CHECK(c.equivalent_pair->first == 0);
  CHECK(c.equivalent_pair->second == 1);
  CHECK(*c.G_order == 60);
  CHECK_FALSE(c.degree);
}

TEST_CASE("certificate JSON round trip") {
  auto c = full_s3();
  CHECK(parse_certificate(emit(c)) == c);
  auto j = to_json(c, false);
  CHECK_FALSE(j.contains("timing"));
  CHECK(j["status"] == "VALID");
  CHECK(j["degree"] == c.degree->str());

  ForgeOptions o;
  o.truncate_orbit = 1;
  auto small = forge_certificate_s3(2, s3_seed(), o);
  CHECK(parse_certificate(emit(small)) == small);
  auto hall = forge_certificate_hall_collection(
      2, 5, {*first_epimorphism(2, FiniteTarget::psl2(5)),
             precompose(*first_epimorphism(2, FiniteTarget::psl2(5)), inner_aut(2, SurfaceWord::parse("a1")))});
  CHECK(parse_certificate(emit(hall)) == hall);
  CHECK_THROWS(parse_certificate("{\"version\": \"0\"}"));
}

TEST_CASE("Gamma-set isomorphism of coset actions") {
  auto s3 = FiniteTarget::symmetric3();
  auto epis = enumerate_epis(2, s3);
  auto H = PermGroup::generate(3, {Permutation::from_cycles(3, "(0 1)")});
  auto rho = epis.front();
  auto x = coset_action(image_permutations(rho), H);
  CHECK(x.degree() == 3);
  CHECK(gamma_set_isomorphic(x, x) == IsoResult::Isomorphic);

  auto conj = precompose(rho, inner_aut(2, SurfaceWord::parse("a2")));
  auto H2 = PermGroup::generate(3, {Permutation::from_cycles(3, "(1 2)")});
  CHECK(gamma_set_isomorphic(x, coset_action(image_permutations(conj), H2)) == IsoResult::Isomorphic);

  auto far = *std::find_if(epis.begin(), epis.end(), [&](const FiniteHom& h) { return !target_equivalent(h, rho); });
  CHECK(gamma_set_isomorphic(x, coset_action(image_permutations(far), H)) == IsoResult::NotIsomorphic);
  CHECK(gamma_set_isomorphic(x, coset_action(image_permutations(far), H), 2) == IsoResult::Skipped);
}

TEST_CASE("minimal degree search") {
  SearchBudget b;
  b.max_certificates = 0;
  CHECK(minimal_degree_search(2, {Route::SylowS3, Route::HallPsl2}, b).examined.empty());

  b.max_certificates = 2;
  b.collections = {1, 2};
  auto r = minimal_degree_search(2, {Route::HallPsl2}, b);
  REQUIRE(r.examined.size() == 2);
  CHECK(r.examined[0].label == "hall/p=5/n=1");
  CHECK_FALSE(r.best_valid);
  REQUIRE(r.best_flagged);
  CHECK(*r.examined[*r.best_flagged].certificate.degree == 6);

  auto again = minimal_degree_search(2, {Route::HallPsl2}, b);
  CHECK(to_json(again, false) == to_json(r, false));
}

TEST_CASE("status and route strings") {
  for (auto s : {CertificateStatus::Valid, CertificateStatus::Invalid, CertificateStatus::Partial})
    CHECK(status_from_string(to_string(s)) == s);
  for (auto r : {Route::SylowS3, Route::HallPsl2})
    CHECK(route_from_string(to_string(r)) == r);
  CHECK_THROWS_AS(route_from_string("nope"), PreconditionError);
}
