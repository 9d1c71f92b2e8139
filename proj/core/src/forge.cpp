#include "mcglift/forge.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcglift/errors.hpp"
#include "mcglift/surface.hpp"

namespace mcglift {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink), last_(Clock::now()) {}
  void mark(const std::string& stage) {
    auto now = Clock::now();
    sink_[stage] += std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }

 private:
  std::map<std::string, double>& sink_;
  Clock::time_point last_;
};

std::vector<FiniteHom> seed_first(const OrbitRecord& rec, std::size_t n) {
  std::vector<FiniteHom> out{rec.seed};
  for (const auto& m : rec.members) {
    if (out.size() >= n)
      break;
    if (m.images != rec.seed.images)
      out.push_back(m);
  }
  return out;
}

OrbitRecord restrict_record(const OrbitRecord& rec, std::vector<FiniteHom> members) {
  OrbitRecord out;
  out.seed = rec.seed;
  out.modded_by_target_auts = rec.modded_by_target_auts;
  out.generator_labels = rec.generator_labels;
  std::sort(members.begin(), members.end());
  out.members = std::move(members);
  return out;
}

PermGroup block_product(const std::vector<Permutation>& factor_gens, std::size_t block, std::size_t n) {
  std::vector<Permutation> gens;
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& f : factor_gens) {
      std::vector<Point> images(block * n);
      for (std::size_t i = 0; i < images.size(); ++i)
        images[i] = static_cast<Point>(i);
      for (std::size_t i = 0; i < block; ++i)
        images[j * block + i] = static_cast<Point>(j * block + f(static_cast<Point>(i)));
      gens.emplace_back(std::move(images));
    }
  return PermGroup::generate(block * n, gens);
}

void finish_status(CoverCertificate& c, bool partial, const std::string& partial_stage) {
  std::vector<std::pair<const CheckRecord*, const char*>> checks{
      {&c.surjectivity, "surjectivity"}, {&c.check_a, "check-a"}, {&c.check_b, "check-b"},
      {&c.characteristic, "characteristic"}};
  for (auto [check, stage] : checks)
    if (!check->pass && check->method != "skipped") {
      c.status = CertificateStatus::Invalid;
      c.failing_stage = stage;
      return;
    }
  if (partial) {
    c.status = CertificateStatus::Partial;
    c.failing_stage = partial_stage;
    return;
  }
  if (!c.degree || *c.degree <= 1) {
    c.status = CertificateStatus::Invalid;
    c.failing_stage = "degree";
    return;
  }
  c.status = CertificateStatus::Valid;
  c.failing_stage.clear();
}

std::string big_str(const std::optional<BigInt>& x) { return x ? x->str() : std::string(); }

nlohmann::json optional_big(const std::optional<BigInt>& x) {
  return x ? nlohmann::json(x->str()) : nlohmann::json(nullptr);
}

std::optional<BigInt> read_big(const nlohmann::json& j) {
  if (j.is_null())
    return std::nullopt;
  return BigInt(j.get<std::string>());
}

}  // namespace

std::string to_string(Route r) { return r == Route::SylowS3 ? "sylow-s3" : "hall-psl2"; }

Route route_from_string(const std::string& s) {
  if (s == "sylow-s3" || s == "s3")
    return Route::SylowS3;
  if (s == "hall-psl2" || s == "hall")
    return Route::HallPsl2;
  throw PreconditionError("unknown route '" + s + "'");
}

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Valid:
      return "VALID";
    case CertificateStatus::Invalid:
      return "INVALID";
    case CertificateStatus::Partial:
      return "PARTIAL";
  }
  return "INVALID";
}

CertificateStatus status_from_string(const std::string& s) {
  if (s == "VALID")
    return CertificateStatus::Valid;
  if (s == "PARTIAL")
    return CertificateStatus::Partial;
  if (s == "INVALID")
    return CertificateStatus::Invalid;
  throw PreconditionError("unknown certificate status '" + s + "'");
}

std::string to_string(IsoResult r) {
  switch (r) {
    case IsoResult::Isomorphic:
      return "isomorphic";
    case IsoResult::NotIsomorphic:
      return "not-isomorphic";
    case IsoResult::Skipped:
      return "SKIPPED";
  }
  return "SKIPPED";
}

std::vector<Permutation> product_generators(const std::vector<FiniteHom>& factors) {
  if (factors.empty())
    throw PreconditionError("product of an empty family");
  const std::size_t deg = factors.front().target->degree();
  const std::size_t n = factors.size();
  const std::size_t gens = factors.front().images.size();
  for (const auto& f : factors)
    if (f.images.size() != gens || f.target->degree() != deg)
      throw PreconditionError("product factors disagree on genus or target degree");
  std::vector<Permutation> out;
  for (std::size_t x = 0; x < gens; ++x) {
    std::vector<Point> images(deg * n);
    for (std::size_t j = 0; j < n; ++j) {
      const Permutation& p = factors[j].target->element(factors[j].images[x]);
      for (std::size_t i = 0; i < deg; ++i)
        images[j * deg + i] = static_cast<Point>(j * deg + p(static_cast<Point>(i)));
    }
    out.emplace_back(std::move(images));
  }
  return out;
}

SubdirectImage build_subdirect_image(const std::vector<FiniteHom>& factors) {
  for (std::size_t j = 0; j < factors.size(); ++j)
    if (!is_surjective(factors[j]))
      throw PreconditionError("factor " + std::to_string(j) + " is not surjective");
  SubdirectImage out;
  out.k = factors.size();
  out.factor_homs = factors;
  out.generator_images = product_generators(factors);
  out.group = PermGroup::generate(out.generator_images.front().degree(), out.generator_images);
  return out;
}

SubdirectImage build_subdirect_image(const OrbitRecord& rec) { return build_subdirect_image(rec.members); }

HomRecord record_of(const FiniteHom& h) {
  HomRecord r;
  r.target = h.target->name();
  for (ElementId e : h.images) {
    const Permutation& p = h.target->element(e);
    r.images.emplace_back(p.images().begin(), p.images().end());
    r.cycles.push_back(p.cycle_string());
  }
  return r;
}

CoverCertificate forge_certificate_s3(int genus, const FiniteHom& seed_epi, const ForgeOptions& options) {
  if (genus < 2)
    throw PreconditionError("forge: genus must be >= 2");
  if (seed_epi.target->kind() != TargetKind::Symmetric3)
    throw PreconditionError("forge s3: seed must map onto S3");
  if (seed_epi.genus() != genus)
    throw PreconditionError("forge s3: seed genus differs from requested genus");
  if (!is_surjective(seed_epi))
    throw PreconditionError("forge s3: seed " + hom_to_string(seed_epi) + " is not surjective");

  CoverCertificate c;
  StageTimer timer(c.timing);
  const auto gens = options.gens.empty() ? standard_autgens(genus) : options.gens;
  const std::string label = options.gens.empty() ? kStandardAutgenSet : options.generator_set_label;
  c.route = Route::SylowS3;
  c.genus_in = genus;
  c.seed = record_of(seed_epi);
  c.seed_material = SeedMaterial{options.seed, label};

  OrbitRecord rec = orbit(seed_epi, gens, OrbitOptions{false, options.orbit_cap});
  c.orbit_size = rec.k();
  if (options.truncate_orbit) {
    rec = restrict_record(rec, seed_first(rec, *options.truncate_orbit));
    c.notes.push_back("orbit truncated to " + std::to_string(rec.k()) + " of " + std::to_string(c.orbit_size) +
                      " members");
  }
  c.k = rec.k();
  c.generator_labels = rec.generator_labels;
  timer.mark("orbit");

  CharacteristicEvidence ev = certify_characteristic(rec, gens);
  c.characteristic = CheckRecord{ev.pass, label};
  if (ev.pass)
    c.evidence = ev.permutations;
  else if (ev.witness)
    c.notes.push_back("characteristic witness: member " + std::to_string(ev.witness->member) + " under " +
                      gens[ev.witness->generator].name + " leaves the family");
  timer.mark("characteristic");

  c.surjectivity = CheckRecord{true, "per-factor"};
  if (3 * c.k > options.bsgs_point_cap) {
    c.notes.push_back("product action on " + std::to_string(3 * c.k) + " points exceeds the BSGS point cap");
    c.check_a = CheckRecord{false, "skipped"};
    c.check_b = CheckRecord{false, "skipped"};
    finish_status(c, true, "bsgs-point-cap");
    return c;
  }
  SubdirectImage img = build_subdirect_image(rec);
  const BigInt& G_order = img.group.order();
  c.G_order = G_order;
  timer.mark("bsgs");

  SubgroupWitness syl = sylow2(img.group, SylowOptions{options.seed, options.enumeration_bound});
  c.H_order = syl.sub.order();
  c.degree = syl.index;
  c.genus_out = cover_genus(genus, syl.index);
  timer.mark("sylow");

  try {
    NormalizerDecision d = normalizer_is_self(syl, NormalizerMethod::Auto, options.enumeration_bound);
    c.check_a = CheckRecord{d.self_normalizing, to_string(d.method)};
  } catch (const BudgetExceeded& e) {
    c.check_a = CheckRecord{false, "unavailable"};
    c.notes.push_back(e.what());
  }
  c.K_trivial = c.check_a.pass;
  timer.mark("check-a");

  bool is_sylow = *c.H_order == two_part(G_order) && syl.ambient.contains(syl.sub);
  c.check_b = CheckRecord{is_sylow, "sylow-conjugacy"};
  if (is_sylow && G_order <= options.enumeration_bound) {
    std::uint64_t other_seed = options.seed ? *options.seed + 1 : 1;
    SubgroupWitness other = sylow2(img.group, SylowOptions{other_seed, options.enumeration_bound});
    bool found = find_conjugator(img.group, syl.sub, other.sub, options.enumeration_bound).has_value();
    c.check_b = CheckRecord{found, "sylow-conjugacy+explicit"};
  }
  timer.mark("check-b");

  finish_status(c, false, {});
  return c;
}

CoverCertificate forge_certificate_hall_collection(int genus, unsigned p, const std::vector<FiniteHom>& members,
                                                   const ForgeOptions& options) {
  if (genus < 2)
    throw PreconditionError("forge: genus must be >= 2");
  if (members.empty())
    throw PreconditionError("forge hall: empty collection");
  const TargetPtr target = FiniteTarget::psl2(p);
  for (const auto& m : members) {
    if (m.target != target)
      throw PreconditionError("forge hall: every member must map onto psl2(" + std::to_string(p) + ")");
    if (m.genus() != genus)
      throw PreconditionError("forge hall: member genus differs from requested genus");
    if (!is_surjective(m))
      throw PreconditionError("forge hall: member " + hom_to_string(m) + " is not surjective");
  }

  CoverCertificate c;
  StageTimer timer(c.timing);
  const auto gens = options.gens.empty() ? standard_autgens(genus) : options.gens;
  const std::string label = options.gens.empty() ? kStandardAutgenSet : options.generator_set_label;
  const std::size_t n = members.size();
  c.route = Route::HallPsl2;
  c.prime = p;
  c.genus_in = genus;
  c.k = n;
  c.orbit_modded = true;
  c.seed = record_of(members.front());
  c.seed_material = SeedMaterial{options.seed, label};
  c.generator_labels.clear();
  for (const auto& s : gens)
    c.generator_labels.push_back(s.name);

  std::vector<FiniteHom> canon;
  std::map<std::vector<ElementId>, std::size_t> first_seen;
  for (std::size_t i = 0; i < n; ++i) {
    canon.push_back(canonical_representative(members[i]));
    auto [it, fresh] = first_seen.emplace(canon.back().images, i);
    if (!fresh && !c.equivalent_pair)
      c.equivalent_pair = std::make_pair(it->second, i);
  }
  const bool hall_ok = !c.equivalent_pair;
  timer.mark("hall-hypothesis");

  const BigInt target_order = target->order();
  const BigInt full_order = boost::multiprecision::pow(target_order, static_cast<unsigned>(n));
  const std::size_t block = target->degree();
  std::optional<SubdirectImage> img;
  if (n <= options.hall_bsgs_factor_cap && block * n <= options.bsgs_point_cap) {
    img = build_subdirect_image(members);
    c.G_order = img->group.order();
    c.surjectivity = CheckRecord{hall_ok && img->group.order() == full_order, "hall-lemma+bsgs"};
    if (hall_ok && img->group.order() != full_order)
      throw InvariantBreach("Hall hypothesis holds but the product image is not the full product");
  } else {
    c.surjectivity = CheckRecord{hall_ok, "hall-lemma"};
    if (hall_ok)
      c.G_order = full_order;
    c.notes.push_back("BSGS cross-check of the product skipped: " + std::to_string(n) + " factors on " +
                      std::to_string(block * n) + " points exceed the configured caps");
  }
  timer.mark("surjectivity");

  SubgroupWitness borel = borel_subgroup(p);
  c.H_order = boost::multiprecision::pow(borel.sub.order(), static_cast<unsigned>(n));
  c.degree = boost::multiprecision::pow(BigInt(p + 1), static_cast<unsigned>(n));
  c.genus_out = cover_genus(genus, *c.degree);
  if (!hall_ok) {
    c.notes.push_back("members " + std::to_string(c.equivalent_pair->first) + " and " +
                      std::to_string(c.equivalent_pair->second) + " differ by a target automorphism");
    c.degree.reset();
    c.genus_out.reset();
    c.H_order.reset();
  }

  NormalizerDecision factor = normalizer_is_self(borel, NormalizerMethod::Enumeration, options.enumeration_bound);
  c.check_a = CheckRecord{factor.self_normalizing, "factorwise"};
  if (hall_ok && img && img->group.order() <= options.enumeration_bound) {
    PermGroup H = block_product(borel.sub.generators(), block, n);
    NormalizerDecision whole =
        normalizer_is_self(SubgroupWitness::make(img->group, H), NormalizerMethod::Enumeration, options.enumeration_bound);
    c.check_a = CheckRecord{factor.self_normalizing && whole.self_normalizing, "factorwise+enumeration"};
  }
  c.K_trivial = c.check_a.pass;
  timer.mark("check-a");

  auto outer = target->outer_automorphism_representative();
  bool outer_ok = false;
  if (outer) {
    std::vector<Permutation> moved;
    for (const auto& h : borel.sub.generators())
      moved.push_back(conjugate(*outer, h));
    PermGroup image = PermGroup::generate(target->degree(), moved);
    outer_ok = find_conjugator(target->group(), borel.sub, image, options.enumeration_bound).has_value();
  }
  c.check_b = CheckRecord{outer_ok, "explicit"};
  timer.mark("check-b");

  OrbitRecord rec;
  rec.seed = canon.front();
  rec.modded_by_target_auts = true;
  rec.generator_labels = c.generator_labels;
  rec.members = canon;
  std::sort(rec.members.begin(), rec.members.end());
  rec.members.erase(std::unique(rec.members.begin(), rec.members.end()), rec.members.end());
  CharacteristicEvidence ev = certify_characteristic(rec, gens);
  c.characteristic = CheckRecord{ev.pass, label};
  if (ev.pass)
    c.evidence = ev.permutations;
  timer.mark("characteristic");

  finish_status(c, !img, "bsgs-factor-cap");
  return c;
}

CoverCertificate forge_certificate_hall(int genus, unsigned p, const FiniteHom& seed_epi,
                                        std::optional<std::size_t> collection, const ForgeOptions& options) {
  const TargetPtr target = FiniteTarget::psl2(p);
  if (seed_epi.target != target)
    throw PreconditionError("forge hall: seed must map onto psl2(" + std::to_string(p) + ")");
  if (!is_surjective(seed_epi))
    throw PreconditionError("forge hall: seed " + hom_to_string(seed_epi) + " is not surjective");
  const auto gens = options.gens.empty() ? standard_autgens(genus) : options.gens;
  auto t0 = Clock::now();
  OrbitRecord rec = orbit(seed_epi, gens, OrbitOptions{true, options.orbit_cap});
  double orbit_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  std::size_t n = rec.k();
  if (collection && *collection > 0)
    n = std::min(n, *collection);
  CoverCertificate c = forge_certificate_hall_collection(genus, p, seed_first(rec, n), options);
  c.orbit_size = rec.k();
  c.timing["orbit"] = orbit_seconds;
  if (n < rec.k())
    c.notes.push_back("collection of " + std::to_string(n) + " classes out of a maximal " +
                      std::to_string(rec.k()));
  return c;
}

CosetAction coset_action(const std::vector<Permutation>& generator_images, const PermGroup& H, std::uint64_t bound) {
  if (generator_images.empty())
    throw PreconditionError("coset_action: no generators");
  std::vector<Permutation> elements = H.elements(bound);
  auto key = [&](const Permutation& x) {
    Permutation best = elements.front() * x;
    for (const auto& h : elements) {
      Permutation y = h * x;
      if (y < best)
        best = std::move(y);
    }
    return best;
  };
  const std::size_t degree = generator_images.front().degree();
  std::map<Permutation, std::size_t> index;
  std::vector<Permutation> reps{Permutation::identity(degree)};
  index.emplace(key(reps.front()), 0);
  std::vector<std::vector<Point>> images(generator_images.size());
  for (std::size_t c = 0; c < reps.size(); ++c) {
    for (std::size_t s = 0; s < generator_images.size(); ++s) {
      Permutation next = reps[c] * generator_images[s];
      Permutation k = key(next);
      auto it = index.find(k);
      if (it == index.end()) {
        it = index.emplace(std::move(k), reps.size()).first;
        reps.push_back(std::move(next));
      }
      images[s].push_back(static_cast<Point>(it->second));
    }
  }
  CosetAction out;
  for (auto& im : images)
    out.generators.emplace_back(std::move(im));
  return out;
}

IsoResult gamma_set_isomorphic(const CosetAction& x, const CosetAction& y, std::size_t bound) {
  if (x.generators.size() != y.generators.size() || x.degree() != y.degree())
    return IsoResult::NotIsomorphic;
  const std::size_t d = x.degree();
  if (d > bound)
    return IsoResult::Skipped;
  if (d == 0)
    return IsoResult::Isomorphic;
  for (std::size_t target = 0; target < d; ++target) {
    std::vector<std::ptrdiff_t> f(d, -1), finv(d, -1);
    f[0] = static_cast<std::ptrdiff_t>(target);
    finv[target] = 0;
    std::deque<std::size_t> queue{0};
    bool ok = true;
    while (!queue.empty() && ok) {
      std::size_t c = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < x.generators.size() && ok; ++s) {
        std::size_t u = x.generators[s](static_cast<Point>(c));
        std::size_t v = y.generators[s](static_cast<Point>(f[c]));
        if (f[u] == -1 && finv[v] == -1) {
          f[u] = static_cast<std::ptrdiff_t>(v);
          finv[v] = static_cast<std::ptrdiff_t>(u);
          queue.push_back(u);
        } else if (f[u] != static_cast<std::ptrdiff_t>(v)) {
          ok = false;
        }
      }
    }
    if (ok && std::find(f.begin(), f.end(), -1) == f.end())
      return IsoResult::Isomorphic;
  }
  return IsoResult::NotIsomorphic;
}

nlohmann::json to_json(const CoverCertificate& c, bool include_timing) {
  nlohmann::json j;
  j["version"] = c.version;
  j["route"] = to_string(c.route);
  j["prime"] = c.prime;
  j["genus_in"] = c.genus_in;
  j["k"] = c.k;
  j["orbit"] = {{"size", c.orbit_size},
                {"modded_by_target_auts", c.orbit_modded},
                {"seed", {{"target", c.seed.target}, {"images", c.seed.images}, {"cycles", c.seed.cycles}}},
                {"generators", c.generator_labels},
                {"evidence", c.evidence}};
  j["G_order"] = optional_big(c.G_order);
  j["H_order"] = optional_big(c.H_order);
  j["degree"] = optional_big(c.degree);
  j["genus_out"] = optional_big(c.genus_out);
  j["checks"] = {{"a", {{"pass", c.check_a.pass}, {"method", c.check_a.method}}},
                 {"b", {{"pass", c.check_b.pass}, {"method", c.check_b.method}}},
                 {"characteristic",
                  {{"pass", c.characteristic.pass}, {"gens", c.characteristic.method}, {"scope", "generator-set-relative"}}},
                 {"surjectivity", {{"pass", c.surjectivity.pass}, {"method", c.surjectivity.method}}}};
  j["K_trivial"] = c.K_trivial;
  j["seed_material"] = {{"sylow_seed", c.seed_material.sylow_seed ? nlohmann::json(*c.seed_material.sylow_seed)
                                                                 : nlohmann::json(nullptr)},
                        {"generator_set", c.seed_material.generator_set}};
  if (include_timing)
    j["timing"] = c.timing;
  j["status"] = to_string(c.status);
  j["failing_stage"] = c.failing_stage;
  j["notes"] = c.notes;
  j["equivalent_pair"] = c.equivalent_pair ? nlohmann::json::array({c.equivalent_pair->first, c.equivalent_pair->second})
                                           : nlohmann::json(nullptr);
  return j;
}

CoverCertificate certificate_from_json(const nlohmann::json& j) {
  CoverCertificate c;
  c.version = j.at("version").get<std::string>();
  c.route = route_from_string(j.at("route").get<std::string>());
  c.prime = j.at("prime").get<unsigned>();
  c.genus_in = j.at("genus_in").get<int>();
  c.k = j.at("k").get<std::size_t>();
  const auto& o = j.at("orbit");
  c.orbit_size = o.at("size").get<std::size_t>();
  c.orbit_modded = o.at("modded_by_target_auts").get<bool>();
  c.seed.target = o.at("seed").at("target").get<std::string>();
  c.seed.images = o.at("seed").at("images").get<std::vector<std::vector<Point>>>();
  c.seed.cycles = o.at("seed").at("cycles").get<std::vector<std::string>>();
  c.generator_labels = o.at("generators").get<std::vector<std::string>>();
  c.evidence = o.at("evidence").get<std::vector<std::vector<std::size_t>>>();
  c.G_order = read_big(j.at("G_order"));
  c.H_order = read_big(j.at("H_order"));
  c.degree = read_big(j.at("degree"));
  c.genus_out = read_big(j.at("genus_out"));
  const auto& ch = j.at("checks");
  c.check_a = CheckRecord{ch.at("a").at("pass").get<bool>(), ch.at("a").at("method").get<std::string>()};
  c.check_b = CheckRecord{ch.at("b").at("pass").get<bool>(), ch.at("b").at("method").get<std::string>()};
  c.characteristic = CheckRecord{ch.at("characteristic").at("pass").get<bool>(),
                                 ch.at("characteristic").at("gens").get<std::string>()};
  c.surjectivity = CheckRecord{ch.at("surjectivity").at("pass").get<bool>(),
                               ch.at("surjectivity").at("method").get<std::string>()};
  c.K_trivial = j.at("K_trivial").get<bool>();
  const auto& sm = j.at("seed_material");
  if (!sm.at("sylow_seed").is_null())
    c.seed_material.sylow_seed = sm.at("sylow_seed").get<std::uint64_t>();
  c.seed_material.generator_set = sm.at("generator_set").get<std::string>();
  if (j.contains("timing"))
    c.timing = j.at("timing").get<std::map<std::string, double>>();
  c.status = status_from_string(j.at("status").get<std::string>());
  c.failing_stage = j.at("failing_stage").get<std::string>();
  c.notes = j.at("notes").get<std::vector<std::string>>();
  if (!j.at("equivalent_pair").is_null())
    c.equivalent_pair = std::make_pair(j.at("equivalent_pair").at(0).get<std::size_t>(),
                                       j.at("equivalent_pair").at(1).get<std::size_t>());
  return c;
}

std::string emit(const CoverCertificate& c, bool include_timing) { return to_json(c, include_timing).dump(2) + "\n"; }

CoverCertificate parse_certificate(const std::string& text) {
  try {
    return certificate_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed certificate: ") + e.what());
  }
}

SearchReport minimal_degree_search(int genus, const std::set<Route>& routes, const SearchBudget& budget) {
  SearchReport report;
  auto room = [&] { return report.examined.size() < budget.max_certificates; };

  if (routes.count(Route::SylowS3) && room()) {
    auto epis = enumerate_epis(genus, FiniteTarget::symmetric3());
    for (std::uint64_t seed : budget.seeds) {
      if (!room())
        break;
      ForgeOptions opts = budget.forge;
      opts.seed = seed;
      const FiniteHom& epi = epis[static_cast<std::size_t>(seed % epis.size())];
      report.examined.push_back({"s3/seed=" + std::to_string(seed), forge_certificate_s3(genus, epi, opts)});
    }
  }
  if (routes.count(Route::HallPsl2)) {
    for (unsigned p : budget.primes) {
      if (!room())
        break;
      auto epi = first_epimorphism(genus, FiniteTarget::psl2(p));
      if (!epi)
        throw InvariantBreach("no epimorphism onto psl2(" + std::to_string(p) + ")");
      for (std::size_t n : budget.collections) {
        if (!room())
          break;
        std::string label = "hall/p=" + std::to_string(p) + "/n=" + (n == 0 ? std::string("max") : std::to_string(n));
        report.examined.push_back(
            {label, forge_certificate_hall(genus, p, *epi, n == 0 ? std::nullopt : std::optional(n), budget.forge)});
      }
    }
  }

  for (std::size_t i = 0; i < report.examined.size(); ++i) {
    const auto& c = report.examined[i].certificate;
    if (!c.degree)
      continue;
    auto& slot = c.status == CertificateStatus::Valid ? report.best_valid : report.best_flagged;
    if (!slot || *c.degree < *report.examined[*slot].certificate.degree)
      slot = i;
  }
  return report;
}

nlohmann::json to_json(const SearchReport& r, bool include_timing) {
  nlohmann::json j;
  j["examined"] = nlohmann::json::array();
  for (const auto& e : r.examined)
    j["examined"].push_back({{"label", e.label},
                             {"status", to_string(e.certificate.status)},
                             {"degree", optional_big(e.certificate.degree)},
                             {"certificate", to_json(e.certificate, include_timing)}});
  auto best = [&](const std::optional<std::size_t>& i) {
    if (!i)
      return nlohmann::json(nullptr);
    return nlohmann::json{{"label", r.examined[*i].label}, {"degree", big_str(r.examined[*i].certificate.degree)}};
  };
  j["best_valid"] = best(r.best_valid);
  j["best_flagged"] = best(r.best_flagged);
  return j;
}

}  // namespace mcglift
