#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mcglift/cli.hpp"
#include "mcglift/errors.hpp"
#include "mcglift/forge.hpp"

using namespace mcglift;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "mcglift");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mcglift-test-" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("enumerate") {
  auto r = invoke({"enumerate", "--genus", "2", "--target", "s3"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "homs: 486, epis: 360\noracle: 486\n");

  r = invoke({"enumerate", "--target", "c2"});
  CHECK(r.out == "homs: 16, epis: 15\noracle: 16\n");

  auto list = scratch("list.txt");
  r = invoke({"enumerate", "--target", "c2", "--list", list.string()});
  CHECK(r.code == cli::kOk);
  auto text = slurp(list);
  CHECK(std::count(text.begin(), text.end(), '\n') == 16);
  CHECK(text.rfind("hom ", 0) == 0);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"enumerate"}).code == cli::kUsage);
  CHECK(invoke({"enumerate", "--target", "psl2"}).code == cli::kUsage);
  CHECK(invoke({"enumerate", "--genus", "1", "--target", "s3"}).code == cli::kUsage);
  CHECK(invoke({"forge", "--route", "sideways"}).code == cli::kUsage);
  CHECK(invoke({"alpha", "--cover", "nope"}).code == cli::kUsage);
  CHECK(invoke({"alpha", "--cover", "c2", "--aut", "Q7"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("budget exhaustion exits with the budget code") {
  auto r = invoke({"enumerate", "--genus", "3", "--target", "a5"});
  CHECK(r.code == cli::kBudget);
  CHECK(r.err.find("budget exceeded") != std::string::npos);
  CHECK(invoke({"enumerate", "--target", "s3", "--budget-tuples", "10"}).code == cli::kBudget);
  CHECK(invoke({"forge", "--route", "s3", "--budget-orbit", "10"}).code == cli::kBudget);
}

TEST_CASE("forge writes a certificate") {
  auto path = scratch("unit.json");
  auto r = invoke({"forge", "--route", "hall", "--prime", "5", "--collection", "2", "--out", path.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("status: INVALID") == 0);
  CHECK(r.out.find("degree: 36") != std::string::npos);
  auto c = parse_certificate(slurp(path));
  CHECK(*c.degree == 36);
}

TEST_CASE("search is deterministic") {
  auto a = scratch("search-a");
  auto b = scratch("search-b");
  std::vector<std::string> common{"search", "--route", "hall", "--collection", "1", "--collection", "2"};
  auto ra = common, rb = common;
  ra.insert(ra.end(), {"--out", a.string()});
  rb.insert(rb.end(), {"--out", b.string()});
  auto x = invoke(ra);
  auto y = invoke(rb);
  REQUIRE(x.code == cli::kOk);
  REQUIRE(y.code == cli::kOk);
  CHECK(slurp(a / "hall_p_5_n_1.json").size() > 0);
  auto strip = [](std::string s, const std::string& dir) {
    for (std::size_t pos; (pos = s.find(dir)) != std::string::npos;)
      s.erase(pos, dir.size());
    return s;
  };
  CHECK(strip(slurp(a / "report.json"), a.string()) == strip(slurp(b / "report.json"), b.string()));
  auto j = nlohmann::json::parse(slurp(a / "report.json"));
  CHECK(j["examined"].size() == 2);
}

TEST_CASE("zero certificate budget examines nothing") {
  auto r = invoke({"search", "--budget-certificates", "0"});
  CHECK(r.code == cli::kOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["examined"].empty());
}

TEST_CASE("alpha subcommand") {
  auto r = invoke({"alpha", "--cover", "homology2", "--check", "all", "--samples", "20"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("index: 16") != std::string::npos);
  CHECK(r.out.find("schreier_generators: 49") != std::string::npos);
  CHECK(r.out.find("summary: all suites pass") != std::string::npos);

  r = invoke({"alpha", "--cover", "homology2", "--aut", "inn(a1a1)", "--aut", "id"});
  CHECK(r.out.find("alpha(id): identity") != std::string::npos);

  r = invoke({"alpha", "--cover", "c2", "--aut", "Inv"});
  CHECK(r.code == cli::kInvariant);
  CHECK(r.err.find("CHARACTERISTIC-VIOLATION") != std::string::npos);
}

TEST_CASE("automorphism parsing") {
  SurfacePresentation pres(2);
  auto x = cli::parse_automorphism(2, "Ta1*Ta1^-1");
  for (int g = 1; g <= 4; ++g)
    CHECK(pres.words_equal(x.apply(SurfaceWord{g}), SurfaceWord{g}));
  auto m = cli::parse_automorphism(2, "M1*Inv");
  CHECK(is_well_defined(pres, m));
  CHECK(cli::parse_automorphism(2, "inn(a1B2)").apply(SurfaceWord{gen_a(1)}) ==
        SurfaceWord::parse("a1B2a1b2A1"));
  CHECK_THROWS_AS(cli::parse_automorphism(2, "Tz9"), PreconditionError);
}

TEST_CASE("budget profiles") {
  CHECK(cli::budget_profile("small").tuples < cli::budget_profile("default").tuples);
  CHECK(cli::budget_profile("large").tuples > cli::budget_profile("default").tuples);
  CHECK_THROWS_AS(cli::budget_profile("huge"), PreconditionError);

  ::setenv("MCGLIFT_BUDGET_PROFILE", "small", 1);
  CHECK(cli::budgets_from_environment().tuples == cli::budget_profile("small").tuples);
  CHECK(invoke({"enumerate", "--genus", "2", "--target", "a5"}).code == cli::kBudget);
  CHECK(invoke({"enumerate", "--genus", "2", "--target", "a5", "--budget-profile", "default"}).code == cli::kOk);
  ::unsetenv("MCGLIFT_BUDGET_PROFILE");
  CHECK(cli::budgets_from_environment().tuples == cli::budget_profile("default").tuples);
}
