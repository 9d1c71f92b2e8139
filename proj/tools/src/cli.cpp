#include "mcglift/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "mcglift/alpha.hpp"
#include "mcglift/errors.hpp"
#include "mcglift/forge.hpp"

namespace mcglift::cli {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw PreconditionError("cannot write " + path.string());
  f << text;
}

std::string file_label(std::string label) {
  for (auto& ch : label)
    if (ch == '/' || ch == '=')
      ch = '_';
  return label;
}

TargetPtr target_for(const std::string& name, unsigned prime) {
  if (name == "psl2" && prime == 0)
    throw PreconditionError("--target psl2 needs --prime");
  return FiniteTarget::by_name(name, prime);
}

ForgeOptions forge_options(const Budgets& b, std::optional<std::uint64_t> seed) {
  ForgeOptions o;
  o.seed = seed;
  o.enumeration_bound = b.enumeration;
  o.bsgs_point_cap = b.points;
  o.hall_bsgs_factor_cap = b.hall_factors;
  o.orbit_cap = b.orbit;
  return o;
}

std::string summary(const CoverCertificate& c) {
  auto big = [](const std::optional<BigInt>& x) { return x ? x->str() : std::string("-"); };
  std::string s = "status: " + to_string(c.status) + ", route: " + to_string(c.route) + ", k: " + std::to_string(c.k) +
                  ", G_order: " + big(c.G_order) + ", H_order: " + big(c.H_order) + ", degree: " + big(c.degree) +
                  ", genus_out: " + big(c.genus_out);
  if (!c.failing_stage.empty())
    s += ", stage: " + c.failing_stage;
  return s;
}

struct SuiteLine {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
};

SchreierWord random_schreier_word(std::mt19937_64& rng, std::size_t gens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(1, static_cast<int>(gens));
  std::bernoulli_distribution inv(0.5);
  SchreierWord v;
  for (std::size_t n = len(rng); v.size() < n;) {
    int s = pick(rng) * (inv(rng) ? -1 : 1);
    if (!v.empty() && v.back() == -s)
      continue;
    v.push_back(s);
  }
  return v;
}

std::vector<SuiteLine> alpha_suites(const RSGenerators& rs, const std::set<std::string>& which, std::uint64_t seed,
                                    std::size_t samples) {
  const int genus = rs.table.genus();
  const SurfacePresentation pres(genus);
  const auto gens = standard_autgens(genus);
  std::mt19937_64 rng(seed);
  std::vector<SuiteLine> out;
  auto want = [&](const char* n) { return which.count("all") || which.count(n); };

  if (want("hom")) {
    SuiteLine line{"homomorphism-law"};
    std::vector<AutImage> images;
    for (const auto& g : gens)
      images.push_back(alpha_apply(rs, g));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j) {
        ++line.total;
        line.passed += images_equal(rs, pres, alpha_apply(rs, compose(gens[i], gens[j])),
                                    compose(images[i], images[j]));
      }
    out.push_back(line);
  }
  if (want("inner")) {
    SuiteLine line{"inner-compatibility"};
    for (std::size_t n = 0; n < samples; ++n) {
      SurfaceWord u = expand(rs, random_schreier_word(rng, rs.gens.size(), 4));
      ++line.total;
      line.passed += images_equal(rs, pres, alpha_apply(rs, inner_aut(genus, u)), inner_image(rs, rewrite(rs, u)));
    }
    out.push_back(line);
  }
  if (want("roundtrip")) {
    SuiteLine line{"rewrite-roundtrip"};
    for (std::size_t n = 0; n < samples; ++n) {
      SurfaceWord w = expand(rs, random_schreier_word(rng, rs.gens.size(), 8));
      ++line.total;
      line.passed += pres.words_equal(expand(rs, rewrite(rs, w)), w);
    }
    out.push_back(line);
  }
  if (want("containment")) {
    ContainmentEvidence ev = verify_finite_index_containment(rs);
    out.push_back(SuiteLine{"finite-index-containment (index " + std::to_string(ev.index) + ")",
                            rs.gens.size() - ev.failures.size(), rs.gens.size()});
  }
  if (want("injectivity")) {
    SuiteLine line{"injectivity-mechanism"};
    for (const auto& g : gens) {
      InjectivityEvidence ev = verify_injectivity_mechanism(rs, g);
      ++line.total;
      line.passed += ev.holds;
    }
    out.push_back(line);
  }
  return out;
}

int cmd_enumerate(int genus, const std::string& target_name, unsigned prime, const std::string& list,
                  const Budgets& b, std::ostream& out) {
  auto target = target_for(target_name, prime);
  EnumerationBudget budget{b.tuples};
  auto homs = enumerate_homs(genus, target, budget);
  std::size_t epis = 0;
  std::ofstream listing;
  if (!list.empty()) {
    listing.open(list);
    if (!listing)
      throw PreconditionError("cannot write " + list);
  }
  for (const auto& h : homs) {
    bool onto = is_surjective(h);
    epis += onto;
    if (listing)
      listing << (onto ? "epi " : "hom ") << hom_to_string(h) << '\n';
  }
  out << "homs: " << homs.size() << ", epis: " << epis << '\n';
  if (target->character_degrees())
    out << "oracle: " << count_homs_oracle(genus, target) << '\n';
  return kOk;
}

int cmd_forge(int genus, const std::string& route, unsigned prime, std::size_t collection,
              std::optional<std::uint64_t> seed, const std::string& path, const Budgets& b, std::ostream& out) {
  ForgeOptions opts = forge_options(b, seed);
  CoverCertificate c;
  if (route == "s3") {
    auto epi = first_epimorphism(genus, FiniteTarget::symmetric3());
    c = forge_certificate_s3(genus, *epi, opts);
  } else {
    unsigned p = prime == 0 ? 5 : prime;
    auto epi = first_epimorphism(genus, FiniteTarget::psl2(p));
    if (!epi)
      throw InvariantBreach("no epimorphism onto psl2(" + std::to_string(p) + ")");
    c = forge_certificate_hall(genus, p, *epi, collection == 0 ? std::nullopt : std::optional(collection), opts);
  }
  if (!path.empty())
    write_file(path, emit(c));
  out << summary(c) << '\n';
  if (!path.empty())
    out << "certificate: " << path << '\n';
  return kOk;
}

int cmd_search(int genus, const std::vector<std::string>& routes, const std::vector<std::uint64_t>& seeds,
               const std::vector<unsigned>& primes, const std::vector<std::size_t>& collections,
               const std::string& dir, const Budgets& b, std::ostream& out) {
  std::set<Route> route_set;
  for (const auto& r : routes)
    route_set.insert(route_from_string(r));
  SearchBudget budget;
  budget.max_certificates = b.certificates;
  if (!seeds.empty())
    budget.seeds = seeds;
  if (!primes.empty())
    budget.primes = primes;
  if (!collections.empty())
    budget.collections = collections;
  budget.forge = forge_options(b, std::nullopt);
  SearchReport report = minimal_degree_search(genus, route_set, budget);

  nlohmann::json j = to_json(report, false);
  for (std::size_t i = 0; i < report.examined.size(); ++i) {
    auto& entry = j["examined"][i];
    entry.erase("certificate");
    if (!dir.empty()) {
      fs::path p = fs::path(dir) / (file_label(report.examined[i].label) + ".json");
      write_file(p, emit(report.examined[i].certificate));
      entry["path"] = p.string();
    }
  }
  std::string text = j.dump(2) + "\n";
  if (!dir.empty())
    write_file(fs::path(dir) / "report.json", text);
  out << text;
  return kOk;
}

int cmd_alpha(int genus, const std::string& cover, const std::vector<std::string>& auts,
              const std::vector<std::string>& checks, std::uint64_t seed, std::size_t samples, const std::string& path,
              std::ostream& out) {
  CosetTable table = cover_by_name(cover, genus);
  RSGenerators rs = schreier_generators(table);
  out << "cover: " << cover << ", index: " << table.d << ", genus_out: " << cover_genus(genus, table.d)
      << ", schreier_generators: " << rs.gens.size() << '\n';

  nlohmann::json dump = nlohmann::json::object();
  for (const auto& spec : auts) {
    AutGen phi = parse_automorphism(genus, spec);
    AutImage img = alpha_apply(rs, phi);
    nlohmann::json values = nlohmann::json::object();
    bool identity = true;
    const SurfacePresentation pres(genus);
    for (std::size_t i = 0; i < rs.gens.size(); ++i) {
      values[rs.gens[i].label()] = to_string(rs, img.values[i]);
      identity = identity && pres.words_equal(expand(rs, img.values[i]), rs.gens[i].word);
    }
    dump[spec] = values;
    out << "alpha(" << spec << "): " << (identity ? "identity" : "non-identity") << '\n';
  }
  if (!path.empty())
    write_file(path, dump.dump(2) + "\n");

  bool all_pass = true;
  if (!checks.empty()) {
    std::set<std::string> which(checks.begin(), checks.end());
    for (const auto& line : alpha_suites(rs, which, seed, samples)) {
      bool ok = line.passed == line.total;
      all_pass = all_pass && ok;
      out << line.name << ": " << (ok ? "pass" : "FAIL") << " (" << line.passed << "/" << line.total << ")\n";
    }
    out << "summary: " << (all_pass ? "all suites pass" : "failures present") << '\n';
  }
  return kOk;
}

}  // namespace

Budgets budget_profile(const std::string& name) {
  Budgets b;
  if (name == "default" || name.empty())
    return b;
  if (name == "small") {
    b.tuples = 1'000'000;
    b.points = 3000;
    b.enumeration = 100'000;
    b.hall_factors = 16;
    b.orbit = 200'000;
    b.certificates = 3;
    return b;
  }
  if (name == "large") {
    b.tuples = 1'000'000'000;
    b.points = 100000;
    b.enumeration = 10'000'000;
    b.hall_factors = 200;
    b.orbit = 20'000'000;
    b.certificates = 32;
    return b;
  }
  throw PreconditionError("unknown budget profile '" + name + "' (small, default, large)");
}

Budgets budgets_from_environment() {
  const char* env = std::getenv("MCGLIFT_BUDGET_PROFILE");
  return budget_profile(env ? env : "default");
}

AutGen parse_automorphism(int genus, const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec[i] == '(')
      ++depth;
    else if (spec[i] == ')')
      --depth;
    else if (spec[i] == '*' && depth == 0) {
      parts.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(spec.substr(start));

  const auto standard = standard_autgens(genus);
  auto single = [&](const std::string& name) -> AutGen {
    if (name == "id")
      return identity_aut(genus);
    if (name.rfind("inn(", 0) == 0 && name.back() == ')')
      return inner_aut(genus, SurfaceWord::parse(name.substr(4, name.size() - 5)));
    bool inverse = name.size() > 3 && name.compare(name.size() - 3, 3, "^-1") == 0;
    std::string base = inverse ? name.substr(0, name.size() - 3) : name;
    for (const auto& s : standard)
      if (s.name == base)
        return inverse ? s.inverse() : s;
    throw PreconditionError("unknown automorphism '" + name + "'");
  };
  AutGen acc = single(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = compose(acc, single(parts[i]));
  acc.name = spec;
  return acc;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified characteristic covers of surfaces and the induced maps on automorphisms"};
  app.require_subcommand(1);

  int genus = 2;
  std::string target, route = "s3", cover, out_path, list_path, profile;
  unsigned prime = 0;
  std::size_t collection = 0, samples = 100;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> routes, auts, checks;
  std::vector<std::uint64_t> seeds;
  std::vector<unsigned> primes;
  std::vector<std::size_t> collections;
  std::optional<std::uint64_t> b_tuples, b_enum;
  std::optional<std::size_t> b_points, b_hall, b_orbit, b_certs;

  auto add_budgets = [&](CLI::App* sub) {
    sub->add_option("--budget-profile", profile, "small, default or large (overrides MCGLIFT_BUDGET_PROFILE)");
    sub->add_option("--budget-tuples", b_tuples, "Cap on |target|^(2g) for enumeration")->check(CLI::PositiveNumber);
    sub->add_option("--budget-points", b_points, "Largest product action given a BSGS")->check(CLI::PositiveNumber);
    sub->add_option("--budget-enum", b_enum, "Enumeration bound for oracle paths")->check(CLI::PositiveNumber);
    sub->add_option("--budget-hall-factors", b_hall, "Largest Hall collection given a BSGS")->check(CLI::PositiveNumber);
    sub->add_option("--budget-orbit", b_orbit, "Cap on orbit size")->check(CLI::PositiveNumber);
  };

  auto* en = app.add_subcommand("enumerate", "Count homomorphisms and epimorphisms onto a finite target");
  en->add_option("--genus", genus, "Surface genus (>= 2)");
  en->add_option("--target", target, "s3, c2, a5 or psl2")->required();
  en->add_option("--prime", prime, "Prime for psl2");
  en->add_option("--list", list_path, "Write every homomorphism to this file");
  add_budgets(en);

  auto* fo = app.add_subcommand("forge", "Build and certify a cover");
  fo->add_option("--genus", genus, "Surface genus (>= 2)");
  fo->add_option("--route", route, "s3 or hall")->check(CLI::IsMember({"s3", "hall"}));
  fo->add_option("--prime", prime, "Prime for the hall route (default 5)");
  fo->add_option("--collection", collection, "Hall collection size (0: maximal)");
  fo->add_option("--seed", seed, "Seed for the Sylow choice");
  fo->add_option("--out", out_path, "Certificate output path");
  add_budgets(fo);

  auto* se = app.add_subcommand("search", "Sweep routes for small certified degrees");
  se->add_option("--genus", genus, "Surface genus (>= 2)");
  se->add_option("--route", routes, "s3 and/or hall")->check(CLI::IsMember({"s3", "hall"}));
  se->add_option("--seed", seeds, "Seeds for the s3 route");
  se->add_option("--prime", primes, "Primes for the hall route");
  se->add_option("--collection", collections, "Hall collection sizes (0: maximal)");
  se->add_option("--out", out_path, "Directory for certificates and report.json");
  se->add_option("--budget-certificates", b_certs, "Number of certificates to forge");
  add_budgets(se);

  auto* al = app.add_subcommand("alpha", "Evaluate the induced map on a characteristic cover");
  al->add_option("--genus", genus, "Surface genus (>= 2)");
  al->add_option("--cover", cover, "homology2, c2 or trivial")->required();
  al->add_option("--aut", auts, "Automorphism to evaluate, e.g. Ta1, M1*Inv, inn(a1)");
  al->add_option("--check", checks, "all, hom, inner, roundtrip, containment, injectivity")
      ->check(CLI::IsMember({"all", "hom", "inner", "roundtrip", "containment", "injectivity"}));
  al->add_option("--seed", seed, "Seed for sampled checks");
  al->add_option("--samples", samples, "Samples for randomised checks");
  al->add_option("--out", out_path, "Write the evaluated images as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Budgets b = profile.empty() ? budgets_from_environment() : budget_profile(profile);
    if (b_tuples)
      b.tuples = *b_tuples;
    if (b_points)
      b.points = *b_points;
    if (b_enum)
      b.enumeration = *b_enum;
    if (b_hall)
      b.hall_factors = *b_hall;
    if (b_orbit)
      b.orbit = *b_orbit;
    if (b_certs)
      b.certificates = *b_certs;
    if (genus < 2)
      throw PreconditionError("genus must be at least 2, got " + std::to_string(genus));

    if (*en)
      return cmd_enumerate(genus, target, prime, list_path, b, out);
    if (*fo)
      return cmd_forge(genus, route, prime, collection, seed, out_path, b, out);
    if (*se) {
      if (routes.empty())
        routes = {"s3", "hall"};
      return cmd_search(genus, routes, seeds, primes, collections, out_path, b, out);
    }
    if (*al)
      return cmd_alpha(genus, cover, auts, checks, seed.value_or(0), samples, out_path, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const InvariantBreach& e) {
    err << "invariant breach: " << e.what() << '\n';
    return kInvariant;
  } catch (const CharacteristicViolation& e) {
    err << "CHARACTERISTIC-VIOLATION: " << e.what() << '\n';
    return kInvariant;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}

}  // namespace mcglift::cli
