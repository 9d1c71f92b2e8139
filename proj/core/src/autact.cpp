#include "mcglift/autact.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mcglift/errors.hpp"

namespace mcglift {

namespace {

SurfaceWord substitute(const std::vector<SurfaceWord>& images, const SurfaceWord& w) {
  std::vector<Letter> out;
  for (Letter x : w.letters()) {
    std::size_t g = static_cast<std::size_t>(std::abs(x)) - 1;
    if (g >= images.size())
      throw PreconditionError("word " + w.to_string() + " uses a generator beyond the automorphism's genus");
    const auto& img = images[g].letters();
    if (x > 0)
      out.insert(out.end(), img.begin(), img.end());
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it)
        out.push_back(-*it);
  }
  return free_reduce(SurfaceWord(std::move(out)));
}

std::vector<SurfaceWord> generator_words(int genus) {
  std::vector<SurfaceWord> out;
  for (int x = 1; x <= 2 * genus; ++x)
    out.push_back(SurfaceWord{x});
  return out;
}

SurfaceWord w(std::initializer_list<Letter> letters) { return SurfaceWord(letters); }

AutGen twist_a(int genus, int i) {
  AutGen s{"Ta" + std::to_string(i), generator_words(genus), generator_words(genus)};
  s.images[gen_b(i) - 1] = w({gen_b(i), gen_a(i)});
  s.inverse_images[gen_b(i) - 1] = w({gen_b(i), -gen_a(i)});
  return s;
}

AutGen twist_b(int genus, int i) {
  AutGen s{"Tb" + std::to_string(i), generator_words(genus), generator_words(genus)};
  s.images[gen_a(i) - 1] = w({gen_a(i), gen_b(i)});
  s.inverse_images[gen_a(i) - 1] = w({gen_a(i), -gen_b(i)});
  return s;
}

// Handle-mixing move on handles i and i+1. The underlying map
//   b_i -> a_i^-1 b_{i+1} b_i,  a_{i+1} -> a_i^-1 b_{i+1} a_{i+1}
// sends the product of the two handle commutators to its conjugate by
// c = b_{i+1} a_i^-1; conjugating the four handle images back by c makes
// the full relator map to itself letter for letter.
AutGen mixing(int genus, int i) {
  const Letter a1 = gen_a(i), b1 = gen_b(i), a2 = gen_a(i + 1), b2 = gen_b(i + 1);
  AutGen s{"M" + std::to_string(i), generator_words(genus), generator_words(genus)};
  const SurfaceWord c = w({b2, -a1});
  const SurfaceWord ci = c.inverse();

  std::vector<SurfaceWord> fwd{w({a1}), w({-a1, b2, b1}), w({-a1, b2, a2}), w({b2})};
  std::vector<SurfaceWord> bwd{w({a1}), w({-b2, a1, b1}), w({-b2, a1, a2}), w({b2})};
  const Letter handle[4] = {a1, b1, a2, b2};
  for (int j = 0; j < 4; ++j) {
    s.images[handle[j] - 1] = free_reduce(ci * fwd[j] * c);
    s.inverse_images[handle[j] - 1] = free_reduce(c * bwd[j] * ci);
  }
  return s;
}

AutGen inversion(int genus) {
  AutGen s{"Inv", generator_words(genus), {}};
  for (int i = 1; i <= genus; ++i) {
    s.images[gen_a(i) - 1] = w({gen_b(genus + 1 - i)});
    s.images[gen_b(i) - 1] = w({gen_a(genus + 1 - i)});
  }
  s.inverse_images = s.images;
  return s;
}

}  // namespace

SurfaceWord AutGen::apply(const SurfaceWord& x) const { return substitute(images, x); }

SurfaceWord AutGen::apply_inverse(const SurfaceWord& x) const { return substitute(inverse_images, x); }

AutGen AutGen::inverse() const {
  return AutGen{name.empty() ? std::string() : name + "^-1", inverse_images, images};
}

AutGen compose(const AutGen& sigma, const AutGen& tau) {
  if (sigma.images.size() != tau.images.size())
    throw PreconditionError("compose: automorphisms of different genus");
  AutGen out{sigma.name + "*" + tau.name, {}, {}};
  for (const auto& x : tau.images)
    out.images.push_back(sigma.apply(x));
  for (const auto& x : sigma.inverse_images)
    out.inverse_images.push_back(tau.apply_inverse(x));
  return out;
}

AutGen identity_aut(int genus) { return AutGen{"id", generator_words(genus), generator_words(genus)}; }

AutGen inner_aut(int genus, const SurfaceWord& u, std::string name) {
  if (name.empty())
    name = "inn(" + u.to_string() + ")";
  AutGen s{std::move(name), {}, {}};
  const SurfaceWord ui = u.inverse();
  for (const auto& x : generator_words(genus)) {
    s.images.push_back(free_reduce(u * x * ui));
    s.inverse_images.push_back(free_reduce(ui * x * u));
  }
  return s;
}

std::vector<AutGen> standard_autgens(int genus) {
  if (genus < 2)
    throw PreconditionError("standard_autgens: genus must be >= 2");
  std::vector<AutGen> out;
  for (int i = 1; i <= genus; ++i) {
    out.push_back(twist_a(genus, i));
    out.push_back(twist_b(genus, i));
  }
  for (int i = 1; i < genus; ++i)
    out.push_back(mixing(genus, i));
  out.push_back(inversion(genus));
  for (int x = 1; x <= 2 * genus; ++x)
    out.push_back(inner_aut(genus, SurfaceWord{x}, "inn(" + SurfaceWord{x}.to_string() + ")"));
  return out;
}

bool is_well_defined(const SurfacePresentation& pres, const AutGen& sigma) {
  return pres.is_trivial(sigma.apply(pres.relator()));
}

bool inverse_pair_holds(const SurfacePresentation& pres, const AutGen& sigma) {
  for (int x = 1; x <= pres.generator_count(); ++x) {
    SurfaceWord g{x};
    if (!pres.words_equal(sigma.apply(sigma.apply_inverse(g)), g) ||
        !pres.words_equal(sigma.apply_inverse(sigma.apply(g)), g))
      return false;
  }
  return true;
}

FiniteHom precompose(const FiniteHom& rho, const AutGen& sigma) {
  if (rho.images.size() != sigma.images.size())
    throw PreconditionError("precompose: genus mismatch");
  FiniteHom out{rho.target, {}};
  out.images.reserve(rho.images.size());
  for (const auto& img : sigma.images)
    out.images.push_back(evaluate(rho, img));
  if (!satisfies_relator(out.target, out.images))
    throw InvariantBreach("precomposition with " + sigma.name + " broke the relator");
  return out;
}

FiniteHom canonical_representative(const FiniteHom& rho) {
  const auto& auts = rho.target->automorphisms();
  if (auts.empty()) {
    TargetKind k = rho.target->kind();
    if (k == TargetKind::Trivial || k == TargetKind::Cyclic2)
      return rho;
    throw PreconditionError("no automorphism group stored for " + rho.target->name());
  }
  std::vector<ElementId> best = rho.images;
  std::vector<ElementId> cand(rho.images.size());
  for (const auto& a : auts) {
    for (std::size_t i = 0; i < cand.size(); ++i)
      cand[i] = a[rho.images[i]];
    if (cand < best)
      best = cand;
  }
  return FiniteHom{rho.target, std::move(best)};
}

bool target_equivalent(const FiniteHom& a, const FiniteHom& b) {
  return canonical_representative(a).images == canonical_representative(b).images;
}

std::optional<std::size_t> OrbitRecord::index_of(const FiniteHom& h) const {
  auto it = std::lower_bound(members.begin(), members.end(), h,
                             [](const FiniteHom& x, const FiniteHom& y) { return x.images < y.images; });
  if (it == members.end() || it->images != h.images)
    return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

OrbitRecord orbit(const FiniteHom& rho, const std::vector<AutGen>& gens, const OrbitOptions& options) {
  if (!is_surjective(rho))
    throw PreconditionError("orbit: seed " + hom_to_string(rho) + " is not surjective");
  auto normal = [&](FiniteHom h) { return options.mod_target_auts ? canonical_representative(h) : h; };

  OrbitRecord rec;
  rec.seed = normal(rho);
  rec.modded_by_target_auts = options.mod_target_auts;
  for (const auto& s : gens)
    rec.generator_labels.push_back(s.name);

  std::set<std::vector<ElementId>> seen{rec.seed.images};
  std::deque<FiniteHom> frontier{rec.seed};
  while (!frontier.empty()) {
    FiniteHom cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : gens) {
      FiniteHom next = normal(precompose(cur, s));
      if (seen.insert(next.images).second) {
        if (seen.size() > options.cap)
          throw BudgetExceeded("orbit closure exceeds the cap of " + std::to_string(options.cap) + " members");
        frontier.push_back(std::move(next));
      }
    }
  }
  for (const auto& imgs : seen)
    rec.members.push_back(FiniteHom{rho.target, imgs});
  return rec;
}

CharacteristicEvidence certify_characteristic(const OrbitRecord& rec, const std::vector<AutGen>& gens) {
  CharacteristicEvidence ev;
  for (const auto& s : gens)
    ev.generator_labels.push_back(s.name);
  for (std::size_t s = 0; s < gens.size(); ++s) {
    std::vector<std::size_t> perm(rec.members.size());
    for (std::size_t i = 0; i < rec.members.size(); ++i) {
      FiniteHom img = precompose(rec.members[i], gens[s]);
      if (rec.modded_by_target_auts)
        img = canonical_representative(img);
      auto j = rec.index_of(img);
      if (!j) {
        ev.pass = false;
        ev.witness = CharacteristicWitness{i, s, std::move(img)};
        return ev;
      }
      perm[i] = *j;
    }
    ev.permutations.push_back(std::move(perm));
  }
  ev.pass = true;
  return ev;
}

Mod2Matrix mod2_action(const AutGen& sigma) {
  const std::size_t n = sigma.images.size();
  Mod2Matrix m(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (Letter x : sigma.images[j].letters())
      m[static_cast<std::size_t>(std::abs(x)) - 1][j] ^= 1;
  return m;
}

Mod2Matrix mod2_multiply(const Mod2Matrix& x, const Mod2Matrix& y) {
  const std::size_t n = x.size();
  Mod2Matrix out(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (x[i][k])
        for (std::size_t j = 0; j < n; ++j)
          out[i][j] ^= y[k][j];
  return out;
}

bool is_symplectic_mod2(const Mod2Matrix& m) {
  const std::size_t n = m.size();
  auto form = [&](std::size_t u, std::size_t v) {
    // J applied to columns u and v of m.
    std::uint8_t s = 0;
    for (std::size_t i = 0; i + 1 < n; i += 2)
      s ^= static_cast<std::uint8_t>((m[i][u] & m[i + 1][v]) ^ (m[i + 1][u] & m[i][v]));
    return s;
  };
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      std::uint8_t expected = (u / 2 == v / 2 && u != v) ? 1 : 0;
      if (form(u, v) != expected)
        return false;
    }
  return true;
}

}  // namespace mcglift
