#include "mcglift/alpha.hpp"

#include <algorithm>
#include <cstdlib>

#include "mcglift/errors.hpp"

namespace mcglift {

namespace {

std::vector<Letter> letter_order(int genus) {
  std::vector<Letter> out;
  for (int x = 1; x <= 2 * genus; ++x)
    out.push_back(x);
  for (int x = 1; x <= 2 * genus; ++x)
    out.push_back(-x);
  return out;
}

}  // namespace

std::size_t CosetTable::act(std::size_t c, Letter x) const {
  const std::size_t g = static_cast<std::size_t>(std::abs(x)) - 1;
  return x > 0 ? forward.at(g)[c] : backward.at(g)[c];
}

std::size_t CosetTable::act(std::size_t c, const SurfaceWord& w) const {
  for (Letter x : w.letters())
    c = act(c, x);
  return c;
}

CosetTable build_coset_table(const FiniteHom& hom, const PermGroup& sub) {
  const auto& t = *hom.target;
  if (!is_surjective(hom))
    throw PreconditionError("build_coset_table: " + hom_to_string(hom) + " is not surjective");
  if (!t.group().contains(sub))
    throw PreconditionError("build_coset_table: subgroup is not contained in " + t.name());

  std::vector<ElementId> members;
  for (const auto& h : sub.elements(t.order()))
    members.push_back(t.index_of(h));
  std::vector<std::int64_t> coset_of(t.order(), -1);

  CosetTable table;
  table.hom = hom;
  const int genus = hom.genus();
  table.forward.assign(static_cast<std::size_t>(2 * genus), {});
  table.backward.assign(static_cast<std::size_t>(2 * genus), {});

  std::vector<ElementId> rep_elements;
  auto coset_id = [&](ElementId q) -> std::pair<std::size_t, bool> {
    if (coset_of[q] >= 0)
      return {static_cast<std::size_t>(coset_of[q]), false};
    const auto id = static_cast<std::int64_t>(rep_elements.size());
    for (ElementId h : members)
      coset_of[t.mul(h, q)] = id;
    rep_elements.push_back(q);
    return {static_cast<std::size_t>(id), true};
  };

  coset_id(FiniteTarget::identity());
  table.reps.push_back(SurfaceWord());
  table.tree.emplace_back(0, 0);
  const auto letters = letter_order(genus);
  for (std::size_t c = 0; c < rep_elements.size(); ++c) {
    for (Letter x : letters) {
      const std::size_t g = static_cast<std::size_t>(std::abs(x)) - 1;
      ElementId img = x > 0 ? hom.images[g] : t.inv(hom.images[g]);
      auto [next, fresh] = coset_id(t.mul(rep_elements[c], img));
      if (fresh) {
        table.reps.push_back(table.reps[c] * SurfaceWord{x});
        table.tree.emplace_back(c, x);
      }
    }
  }
  table.d = rep_elements.size();
  for (std::size_t g = 0; g < static_cast<std::size_t>(2 * genus); ++g) {
    table.forward[g].resize(table.d);
    table.backward[g].resize(table.d);
    for (std::size_t c = 0; c < table.d; ++c) {
      table.forward[g][c] = static_cast<std::uint32_t>(coset_of[t.mul(rep_elements[c], hom.images[g])]);
      table.backward[g][c] = static_cast<std::uint32_t>(coset_of[t.mul(rep_elements[c], t.inv(hom.images[g]))]);
    }
  }

  if (table.d * members.size() != t.order())
    throw InvariantBreach("coset count times subgroup order differs from the target order");
  for (std::size_t c = 0; c < table.d; ++c) {
    if (table.act(0, table.reps[c]) != c)
      throw InvariantBreach("transversal word does not reach its coset");
    if (table.act(c, SurfacePresentation(genus).relator()) != c)
      throw InvariantBreach("relator moves a coset");
  }
  return table;
}

CosetTable build_kernel_table(const FiniteHom& hom) {
  return build_coset_table(hom, PermGroup::trivial(hom.target->degree()));
}

std::string SchreierGenerator::label() const {
  return "s[" + std::to_string(coset) + "," + SurfaceWord{letter}.to_string() + "]";
}

RSGenerators schreier_generators(const CosetTable& table) {
  RSGenerators rs;
  rs.table = table;
  std::vector<std::pair<std::size_t, Letter>> tree_pairs;
  for (std::size_t c = 1; c < table.d; ++c) {
    auto [parent, x] = table.tree[c];
    tree_pairs.emplace_back(x > 0 ? parent : c, std::abs(x));
  }
  std::sort(tree_pairs.begin(), tree_pairs.end());
  for (std::size_t c = 0; c < table.d; ++c)
    for (Letter x = 1; x <= 2 * table.genus(); ++x) {
      if (std::binary_search(tree_pairs.begin(), tree_pairs.end(), std::make_pair(c, x)))
        continue;
      std::size_t next = table.act(c, x);
      SurfaceWord w = free_reduce(table.reps[c] * SurfaceWord{x} * table.reps[next].inverse());
      rs.lookup.emplace(std::make_pair(c, x), rs.gens.size());
      rs.gens.push_back(SchreierGenerator{c, x, std::move(w)});
    }
  const std::size_t expected = 2 * static_cast<std::size_t>(table.genus()) * table.d - (table.d - 1);
  if (rs.gens.size() != expected)
    throw InvariantBreach("Schreier generator count " + std::to_string(rs.gens.size()) + " differs from " +
                          std::to_string(expected));
  return rs;
}

SurfaceWord expand(const RSGenerators& rs, const SchreierWord& v) {
  std::vector<Letter> out;
  for (int s : v) {
    const auto& w = rs.gens.at(static_cast<std::size_t>(std::abs(s)) - 1).word;
    const SurfaceWord piece = s > 0 ? w : w.inverse();
    out.insert(out.end(), piece.letters().begin(), piece.letters().end());
  }
  return free_reduce(SurfaceWord(std::move(out)));
}

SchreierWord rewrite(const RSGenerators& rs, const SurfaceWord& w) {
  const auto& table = rs.table;
  SchreierWord out;
  auto emit = [&](int s) {
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  };
  std::size_t c = 0;
  for (Letter x : w.letters()) {
    if (std::abs(x) > 2 * table.genus())
      throw PreconditionError("rewrite: word uses a generator beyond the table's genus");
    if (x > 0) {
      auto it = rs.lookup.find({c, x});
      if (it != rs.lookup.end())
        emit(static_cast<int>(it->second) + 1);
      c = table.act(c, x);
    } else {
      std::size_t prev = table.act(c, x);
      auto it = rs.lookup.find({prev, -x});
      if (it != rs.lookup.end())
        emit(-(static_cast<int>(it->second) + 1));
      c = prev;
    }
  }
  if (c != 0)
    throw NotInSubgroup("word " + w.to_string() + " ends at coset " + std::to_string(c), c);
  return out;
}

std::string to_string(const RSGenerators& rs, const SchreierWord& v) {
  if (v.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ' ';
    out += rs.gens.at(static_cast<std::size_t>(std::abs(v[i])) - 1).label();
    if (v[i] < 0)
      out += "^-1";
  }
  return out;
}

AutImage alpha_apply(const RSGenerators& rs, const AutGen& phi) {
  if (phi.genus() != rs.table.genus())
    throw PreconditionError("alpha_apply: genus mismatch");
  AutImage out{phi.name, {}};
  for (const auto& s : rs.gens) {
    SurfaceWord image = phi.apply(s.word);
    try {
      out.values.push_back(rewrite(rs, image));
    } catch (const NotInSubgroup& e) {
      throw CharacteristicViolation(phi.name + " sends " + s.label() + " to coset " + std::to_string(e.coset()));
    }
  }
  return out;
}

AutImage identity_image(const RSGenerators& rs) {
  AutImage out{"id", {}};
  for (std::size_t i = 0; i < rs.gens.size(); ++i)
    out.values.push_back({static_cast<int>(i) + 1});
  return out;
}

AutImage inner_image(const RSGenerators& rs, const SchreierWord& u) {
  SchreierWord ui(u.rbegin(), u.rend());
  for (auto& s : ui)
    s = -s;
  AutImage out{"inn", {}};
  for (std::size_t i = 0; i < rs.gens.size(); ++i) {
    SchreierWord v = u;
    v.push_back(static_cast<int>(i) + 1);
    v.insert(v.end(), ui.begin(), ui.end());
    out.values.push_back(std::move(v));
  }
  return out;
}

SchreierWord substitute(const AutImage& outer, const SchreierWord& v) {
  SchreierWord out;
  for (int s : v) {
    const auto& img = outer.values.at(static_cast<std::size_t>(std::abs(s)) - 1);
    if (s > 0)
      out.insert(out.end(), img.begin(), img.end());
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it)
        out.push_back(-*it);
  }
  return out;
}

AutImage compose(const AutImage& phi, const AutImage& psi) {
  AutImage out{phi.source + "*" + psi.source, {}};
  for (const auto& v : psi.values)
    out.values.push_back(substitute(phi, v));
  return out;
}

bool images_equal(const RSGenerators& rs, const SurfacePresentation& pres, const AutImage& x, const AutImage& y) {
  if (x.values.size() != y.values.size())
    return false;
  for (std::size_t i = 0; i < x.values.size(); ++i)
    if (!pres.words_equal(expand(rs, x.values[i]), expand(rs, y.values[i])))
      return false;
  return true;
}

ContainmentEvidence verify_finite_index_containment(const RSGenerators& rs) {
  ContainmentEvidence ev;
  ev.index = rs.table.d;
  const SurfacePresentation pres(rs.table.genus());
  for (std::size_t i = 0; i < rs.gens.size(); ++i) {
    AutImage lhs = alpha_apply(rs, inner_aut(rs.table.genus(), rs.gens[i].word));
    AutImage rhs = inner_image(rs, {static_cast<int>(i) + 1});
    if (!images_equal(rs, pres, lhs, rhs))
      ev.failures.push_back(i);
  }
  ev.pass = ev.failures.empty() && ev.index >= 1;
  return ev;
}

InjectivityEvidence verify_injectivity_mechanism(const RSGenerators& rs, const AutGen& phi) {
  const SurfacePresentation pres(rs.table.genus());
  InjectivityEvidence ev;
  ev.alpha_fixes_all = images_equal(rs, pres, alpha_apply(rs, phi), identity_image(rs));
  ev.phi_fixes_all = true;
  for (int x = 1; x <= pres.generator_count() && ev.phi_fixes_all; ++x)
    ev.phi_fixes_all = pres.words_equal(phi.apply(SurfaceWord{x}), SurfaceWord{x});
  ev.holds = !ev.alpha_fixes_all || ev.phi_fixes_all;
  return ev;
}

FiniteHom homology_mod2_hom(int genus) {
  const unsigned rank = static_cast<unsigned>(2 * genus);
  auto target = FiniteTarget::elementary_abelian2(rank);
  std::vector<ElementId> images;
  for (unsigned i = 0; i < rank; ++i)
    images.push_back(target->index_of(Permutation::from_cycles(
        2 * rank, "(" + std::to_string(2 * i) + " " + std::to_string(2 * i + 1) + ")")));
  return make_hom(target, std::move(images));
}

CosetTable cover_by_name(const std::string& name, int genus) {
  if (genus < 2)
    throw PreconditionError("covers need genus >= 2");
  if (name == "homology2")
    return build_kernel_table(homology_mod2_hom(genus));
  if (name == "c2") {
    auto target = FiniteTarget::cyclic2();
    std::vector<ElementId> images(static_cast<std::size_t>(2 * genus), FiniteTarget::identity());
    images[0] = target->index_of(Permutation::from_cycles(2, "(0 1)"));
    return build_kernel_table(make_hom(target, std::move(images)));
  }
  if (name == "trivial") {
    auto target = FiniteTarget::trivial();
    return build_kernel_table(
        make_hom(target, std::vector<ElementId>(static_cast<std::size_t>(2 * genus), FiniteTarget::identity())));
  }
  throw PreconditionError("unknown cover '" + name + "' (expected homology2, c2 or trivial)");
}

}  // namespace mcglift
