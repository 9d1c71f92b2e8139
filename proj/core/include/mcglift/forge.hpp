#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcglift/autact.hpp"
#include "mcglift/finquot.hpp"
#include "mcglift/sylow.hpp"

namespace mcglift {

inline constexpr const char* kCertificateVersion = "1";

enum class Route { SylowS3, HallPsl2 };
std::string to_string(Route r);
Route route_from_string(const std::string& s);

enum class CertificateStatus { Valid, Invalid, Partial };
std::string to_string(CertificateStatus s);
CertificateStatus status_from_string(const std::string& s);

/// The product homomorphism rho_1 x ... x rho_k and its image G.
struct SubdirectImage {
  std::size_t k = 0;
  std::vector<FiniteHom> factor_homs;
  /// Images of a_1, ..., b_g; factor j acts on block [j*deg, (j+1)*deg).
  std::vector<Permutation> generator_images;
  PermGroup group;
};

/// Images of the standard generators under the product hom, without a BSGS.
std::vector<Permutation> product_generators(const std::vector<FiniteHom>& factors);

/// Throws PreconditionError if a factor is not surjective or the factors disagree on genus or target.
SubdirectImage build_subdirect_image(const std::vector<FiniteHom>& factors);
SubdirectImage build_subdirect_image(const OrbitRecord& rec);

struct CheckRecord {
  bool pass = false;
  std::string method;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct HomRecord {
  std::string target;
  std::vector<std::vector<Point>> images;
  std::vector<std::string> cycles;
  friend bool operator==(const HomRecord&, const HomRecord&) = default;
};

HomRecord record_of(const FiniteHom& h);

struct SeedMaterial {
  std::optional<std::uint64_t> sylow_seed;
  std::string generator_set;
  friend bool operator==(const SeedMaterial&, const SeedMaterial&) = default;
};

struct CoverCertificate {
  std::string version = kCertificateVersion;
  Route route = Route::SylowS3;
  unsigned prime = 0;
  int genus_in = 0;
  std::size_t k = 0;           // factors in the product
  std::size_t orbit_size = 0;  // size of the closed orbit (classes when modded)
  bool orbit_modded = false;
  HomRecord seed;
  std::vector<std::string> generator_labels;
  std::vector<std::vector<std::size_t>> evidence;
  std::optional<BigInt> G_order;
  std::optional<BigInt> H_order;
  std::optional<BigInt> degree;
  std::optional<BigInt> genus_out;
  CheckRecord check_a;
  CheckRecord check_b;
  CheckRecord characteristic;
  CheckRecord surjectivity;
  bool K_trivial = false;
  SeedMaterial seed_material;
  std::map<std::string, double> timing;
  CertificateStatus status = CertificateStatus::Invalid;
  std::string failing_stage;
  std::vector<std::string> notes;
  std::optional<std::pair<std::size_t, std::size_t>> equivalent_pair;

  friend bool operator==(const CoverCertificate&, const CoverCertificate&) = default;
};

nlohmann::json to_json(const CoverCertificate& c, bool include_timing = true);
CoverCertificate certificate_from_json(const nlohmann::json& j);
std::string emit(const CoverCertificate& c, bool include_timing = true);
CoverCertificate parse_certificate(const std::string& text);

struct ForgeOptions {
  /// Unset: deterministic Sylow choice.
  std::optional<std::uint64_t> seed;
  std::uint64_t enumeration_bound = kDefaultEnumerationBound;
  /// Largest product action (points) that gets a BSGS; beyond it the certificate is PARTIAL.
  std::size_t bsgs_point_cap = 30000;
  /// Hall route: largest factor count whose product gets a BSGS cross-check.
  std::size_t hall_bsgs_factor_cap = 64;
  std::size_t orbit_cap = 2'000'000;
  /// Keep only the first n orbit members (seed first). Used for the k = 1 regression pipeline.
  std::optional<std::size_t> truncate_orbit;
  /// Empty: standard_autgens(g).
  std::vector<AutGen> gens;
  std::string generator_set_label;
};

/// Throws PreconditionError unless seed_epi is a surjection onto S3 of genus g.
CoverCertificate forge_certificate_s3(int genus, const FiniteHom& seed_epi, const ForgeOptions& options = {});

/**
 * Hall route with target PSL_2(F_p): the orbit of seed_epi modulo target
 * automorphisms, then the first `collection` classes (seed first; all when
 * unset). Throws PreconditionError unless seed_epi is onto psl2(p).
 */
CoverCertificate forge_certificate_hall(int genus, unsigned p, const FiniteHom& seed_epi,
                                        std::optional<std::size_t> collection = std::nullopt,
                                        const ForgeOptions& options = {});

/// Hall route on an explicit collection of epimorphisms onto psl2(p).
CoverCertificate forge_certificate_hall_collection(int genus, unsigned p, const std::vector<FiniteHom>& members,
                                                   const ForgeOptions& options = {});

/// Right-coset action of the generators on G/H: coset Hx goes to H x rho(gamma).
struct CosetAction {
  std::vector<Permutation> generators;
  std::size_t degree() const noexcept { return generators.empty() ? 0 : generators.front().degree(); }
};

/// Throws BudgetExceeded when |H| exceeds the bound.
CosetAction coset_action(const std::vector<Permutation>& generator_images, const PermGroup& H,
                         std::uint64_t bound = kDefaultEnumerationBound);

enum class IsoResult { Isomorphic, NotIsomorphic, Skipped };
std::string to_string(IsoResult r);

/// Transitive actions of the same generators, compared by relabelling search over the image of point 0.
IsoResult gamma_set_isomorphic(const CosetAction& x, const CosetAction& y, std::size_t bound = 100000);

struct SearchBudget {
  /// Number of certificates that may be forged.
  std::size_t max_certificates = 0;
  std::vector<std::uint64_t> seeds{0};
  std::vector<unsigned> primes{5};
  /// Hall collection sizes; 0 means the full maximal collection.
  std::vector<std::size_t> collections{1, 2, 0};
  ForgeOptions forge;
};

struct SearchEntry {
  std::string label;
  CoverCertificate certificate;
};

struct SearchReport {
  std::vector<SearchEntry> examined;
  std::optional<std::size_t> best_valid;    // index into examined
  std::optional<std::size_t> best_flagged;  // smallest degree among non-VALID certificates
};

/// Sweeps candidates in a fixed order (s3 seeds, then hall primes x collections) until the budget is spent.
SearchReport minimal_degree_search(int genus, const std::set<Route>& routes, const SearchBudget& budget);

nlohmann::json to_json(const SearchReport& r, bool include_timing = true);

}  // namespace mcglift
