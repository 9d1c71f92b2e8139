#include "mcglift/sylow.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <random>

#include "mcglift/errors.hpp"

namespace mcglift {

SubgroupWitness SubgroupWitness::make(PermGroup ambient, PermGroup sub) {
  if (ambient.degree() != sub.degree())
    throw DegreeMismatch("subgroup witness: degrees differ");
  if (!ambient.contains(sub))
    throw PreconditionError("subgroup witness: a generator of the subgroup is not in the ambient group");
  if (ambient.order() % sub.order() != 0)
    throw InvariantBreach("subgroup order does not divide ambient order");
  BigInt index = ambient.order() / sub.order();
  return SubgroupWitness{std::move(ambient), std::move(sub), std::move(index)};
}

std::string to_string(NormalizerMethod m) {
  switch (m) {
    case NormalizerMethod::Auto:
      return "auto";
    case NormalizerMethod::Enumeration:
      return "enumeration";
    case NormalizerMethod::Structural:
      return "structural";
  }
  return "unknown";
}

namespace {

// Action of a permutation on block j, as images of {0,1,2}.
using Local = std::array<std::uint8_t, 3>;

constexpr Local kLocalId{0, 1, 2};

Local local_of(const Permutation& x, std::size_t j) {
  Local out{};
  for (std::size_t i = 0; i < 3; ++i)
    out[i] = static_cast<std::uint8_t>(x(static_cast<Point>(3 * j + i)) - 3 * j);
  return out;
}

Local compose_local(const Local& a, const Local& b) {
  return Local{a[b[0]], a[b[1]], a[b[2]]};
}

bool is_odd(const Local& l) {
  // A permutation of three points is odd iff it fixes exactly one point.
  int fixed = (l[0] == 0) + (l[1] == 1) + (l[2] == 2);
  return fixed == 1;
}

// Even locals as elements of Z/3, with (0 1 2) -> 1.
int c3_value(const Local& l) {
  if (l == kLocalId)
    return 0;
  if (l == Local{1, 2, 0})
    return 1;
  if (l == Local{2, 0, 1})
    return 2;
  throw InvariantBreach("c3_value on an odd block permutation");
}

Local c3_local(int v) {
  switch (((v % 3) + 3) % 3) {
    case 0:
      return kLocalId;
    case 1:
      return Local{1, 2, 0};
    default:
      return Local{2, 0, 1};
  }
}

std::vector<std::uint8_t> sign_vector(const Permutation& x, std::size_t k) {
  std::vector<std::uint8_t> v(k);
  for (std::size_t j = 0; j < k; ++j)
    v[j] = is_odd(local_of(x, j)) ? 1 : 0;
  return v;
}

Permutation from_c3_vector(const std::vector<std::uint8_t>& v) {
  std::vector<Point> images(3 * v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    Local l = c3_local(v[j]);
    for (std::size_t i = 0; i < 3; ++i)
      images[3 * j + i] = static_cast<Point>(3 * j + l[i]);
  }
  return Permutation(std::move(images));
}

// Reduced row echelon basis over F_p for p in {2, 3}.
class EchelonBasis {
 public:
  explicit EchelonBasis(unsigned p) : p_(p) {}

  // Returns true if v was independent of the current rows.
  bool insert(std::vector<std::uint8_t> v) {
    reduce(v);
    auto pivot = std::find_if(v.begin(), v.end(), [](std::uint8_t c) { return c != 0; });
    if (pivot == v.end())
      return false;
    std::size_t col = static_cast<std::size_t>(pivot - v.begin());
    // Normalise pivot to 1.
    std::uint8_t inv = (p_ == 3 && *pivot == 2) ? 2 : 1;
    for (auto& c : v)
      c = static_cast<std::uint8_t>((c * inv) % p_);
    // Clear this column from existing rows.
    for (auto& row : rows_) {
      std::uint8_t f = row[col];
      if (f == 0)
        continue;
      for (std::size_t i = 0; i < row.size(); ++i)
        row[i] = static_cast<std::uint8_t>((row[i] + (p_ - f) * v[i]) % p_);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(col);
    return true;
  }

  const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }
  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(std::vector<std::uint8_t>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint8_t f = v[pivots_[r]];
      if (f == 0)
        continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = static_cast<std::uint8_t>((v[i] + (p_ - f) * rows_[r][i]) % p_);
    }
  }

  unsigned p_;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::vector<std::size_t> pivots_;
};

// Solves sum_i x_i * basis[i][col] == rhs for each (col, rhs) over F3.
// Free variables take values from `free_value`.
std::optional<std::vector<std::uint8_t>> solve_f3(
    const std::vector<std::vector<std::uint8_t>>& basis,
    const std::vector<std::pair<std::size_t, std::uint8_t>>& constraints,
    const std::function<std::uint8_t()>& free_value) {
  const std::size_t n = basis.size();
  // Augmented matrix: one row per constraint.
  std::vector<std::vector<std::uint8_t>> m;
  m.reserve(constraints.size());
  for (const auto& [col, rhs] : constraints) {
    std::vector<std::uint8_t> row(n + 1);
    for (std::size_t i = 0; i < n; ++i)
      row[i] = basis[i][col];
    row[n] = rhs;
    m.push_back(std::move(row));
  }
  std::vector<std::ptrdiff_t> pivot_row_of(n, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c] == 0)
      ++sel;
    if (sel == m.size())
      continue;
    std::swap(m[r], m[sel]);
    std::uint8_t inv = m[r][c] == 2 ? 2 : 1;
    for (auto& x : m[r])
      x = static_cast<std::uint8_t>((x * inv) % 3);
    for (std::size_t o = 0; o < m.size(); ++o) {
      if (o == r || m[o][c] == 0)
        continue;
      std::uint8_t f = m[o][c];
      for (std::size_t i = 0; i <= n; ++i)
        m[o][i] = static_cast<std::uint8_t>((m[o][i] + (3 - f) * m[r][i]) % 3);
    }
    pivot_row_of[c] = static_cast<std::ptrdiff_t>(r);
    ++r;
  }
  for (std::size_t o = r; o < m.size(); ++o)
    if (m[o][n] != 0)
      return std::nullopt;
  std::vector<std::uint8_t> x(n, 0);
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_row_of[c] < 0)
      x[c] = free_value();
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_row_of[c] < 0)
      continue;
    const auto& row = m[static_cast<std::size_t>(pivot_row_of[c])];
    int v = row[n];
    for (std::size_t i = 0; i < n; ++i)
      if (i != c && pivot_row_of[i] < 0)
        v -= row[i] * x[i];
    x[c] = static_cast<std::uint8_t>(((v % 3) + 3) % 3);
  }
  return x;
}

SubgroupWitness sylow2_s3_product(const PermGroup& g, std::size_t k, const SylowOptions& options) {
  const auto& gens = g.generators();
  const std::size_t n = g.degree();

  // Transversal of the sign image E = G / (G n C3^k), an elementary abelian 2-group.
  std::map<std::vector<std::uint8_t>, Permutation> transversal;
  std::vector<std::vector<std::uint8_t>> order;
  std::vector<std::uint8_t> zero(k, 0);
  transversal.emplace(zero, Permutation::identity(n));
  order.push_back(zero);
  std::vector<std::vector<std::uint8_t>> gen_signs;
  for (const auto& s : gens)
    gen_signs.push_back(sign_vector(s, k));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto e = order[i];
    for (std::size_t si = 0; si < gens.size(); ++si) {
      std::vector<std::uint8_t> f(k);
      for (std::size_t j = 0; j < k; ++j)
        f[j] = e[j] ^ gen_signs[si][j];
      if (!transversal.count(f)) {
        transversal.emplace(f, gens[si] * transversal.at(e));
        order.push_back(f);
      }
    }
  }

  // Schreier generators of the kernel N = G n C3^k, as F3 vectors.
  EchelonBasis kernel(3);
  for (const auto& e : order) {
    const Permutation& te = transversal.at(e);
    for (std::size_t si = 0; si < gens.size(); ++si) {
      Permutation u = gens[si] * te;
      std::vector<std::uint8_t> f(k);
      for (std::size_t j = 0; j < k; ++j)
        f[j] = e[j] ^ gen_signs[si][j];
      Permutation nelem = transversal.at(f).inverse() * u;
      std::vector<std::uint8_t> v(k);
      for (std::size_t j = 0; j < k; ++j)
        v[j] = static_cast<std::uint8_t>(c3_value(local_of(nelem, j)));
      kernel.insert(std::move(v));
    }
  }

  // |G| = |E| * 3^rank, independently of Schreier-Sims.
  BigInt two_order = order.size();
  BigInt three_order = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(kernel.rank()));
  if (two_order * three_order != g.order())
    throw InvariantBreach("S3^k order cross-check failed: |E| * 3^rank = " +
                          BigInt(two_order * three_order).str() + " but BSGS order is " +
                          g.order().str());

  // Basis of E chosen greedily in transversal order.
  EchelonBasis e_basis(2);
  std::vector<std::vector<std::uint8_t>> basis_vectors;
  for (const auto& e : order)
    if (e_basis.insert(e))
      basis_vectors.push_back(e);

  std::mt19937_64 rng(options.seed.value_or(0));
  std::function<std::uint8_t()> free_value = [&]() -> std::uint8_t {
    if (!options.seed)
      return 0;
    return static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 2)(rng));
  };
  if (options.seed)
    std::shuffle(basis_vectors.begin(), basis_vectors.end(), rng);

  std::vector<std::optional<Local>> assigned(k);
  std::vector<Permutation> involutions;
  for (const auto& e : basis_vectors) {
    Permutation t = power(transversal.at(e), 3);
    std::vector<std::pair<std::size_t, std::uint8_t>> constraints;
    for (std::size_t j = 0; j < k; ++j) {
      if (!e[j]) {
        constraints.emplace_back(j, 0);
      } else if (assigned[j]) {
        Local tj = local_of(t, j);
        constraints.emplace_back(j, static_cast<std::uint8_t>(c3_value(compose_local(*assigned[j], tj))));
      }
    }
    auto lambda = solve_f3(kernel.rows(), constraints, free_value);
    if (!lambda)
      throw InvariantBreach("Sylow construction stalled: no involution extends the current 2-subgroup");
    std::vector<std::uint8_t> nvec(k, 0);
    for (std::size_t i = 0; i < lambda->size(); ++i)
      for (std::size_t j = 0; j < k; ++j)
        nvec[j] = static_cast<std::uint8_t>((nvec[j] + (*lambda)[i] * kernel.rows()[i][j]) % 3);
    Permutation y = from_c3_vector(nvec) * t;
    for (std::size_t j = 0; j < k; ++j)
      if (e[j] && !assigned[j])
        assigned[j] = local_of(y, j);
    involutions.push_back(std::move(y));
  }

  PermGroup h = PermGroup::generate(n, std::move(involutions));
  if (h.order() != two_order)
    throw InvariantBreach("Sylow construction stalled at order " + h.order().str() +
                          " below the 2-part " + two_order.str());
  return SubgroupWitness::make(g, std::move(h));
}

SubgroupWitness sylow2_generic(const PermGroup& g, const SylowOptions& options) {
  const BigInt target = two_part(g.order());
  if (g.order() > options.enumeration_bound)
    throw BudgetExceeded("sylow2: group order " + g.order().str() +
                         " exceeds the enumeration bound and the group is not a subgroup of S3^k");
  std::vector<Permutation> two_elements;
  g.for_each_element([&](const Permutation& x) {
    if (!x.is_identity() && two_part(x.order()) == x.order())
      two_elements.push_back(x);
    return true;
  });
  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    std::shuffle(two_elements.begin(), two_elements.end(), rng);
  }
  std::vector<Permutation> gens;
  PermGroup h = PermGroup::trivial(g.degree());
  while (h.order() < target) {
    bool grown = false;
    for (const auto& x : two_elements) {
      if (h.contains(x) || !normalizes(x, h))
        continue;
      gens.push_back(x);
      h = PermGroup::generate(g.degree(), gens);
      grown = true;
      break;
    }
    if (!grown)
      throw InvariantBreach("sylow2 stalled at order " + h.order().str() + " below the 2-part " +
                            target.str());
  }
  if (h.order() != target)
    throw InvariantBreach("sylow2 overshot the 2-part");
  return SubgroupWitness::make(g, std::move(h));
}

bool block_generates_s3(const std::vector<Permutation>& gens, std::size_t j) {
  std::vector<Local> closure{kLocalId};
  for (std::size_t i = 0; i < closure.size(); ++i)
    for (const auto& s : gens) {
      Local next = compose_local(local_of(s, j), closure[i]);
      if (std::find(closure.begin(), closure.end(), next) == closure.end())
        closure.push_back(next);
    }
  return closure.size() == 6;
}

}  // namespace

std::optional<std::size_t> s3_product_factors(const PermGroup& g) {
  if (g.degree() == 0 || g.degree() % 3 != 0)
    return std::nullopt;
  for (const auto& s : g.generators())
    for (Point x = 0; x < g.degree(); ++x)
      if (s(x) / 3 != x / 3)
        return std::nullopt;
  return g.degree() / 3;
}

bool is_subdirect_s3_product(const PermGroup& g) {
  auto k = s3_product_factors(g);
  if (!k)
    return false;
  for (std::size_t j = 0; j < *k; ++j)
    if (!block_generates_s3(g.generators(), j))
      return false;
  return true;
}

SubgroupWitness sylow2(const PermGroup& g, const SylowOptions& options) {
  if (auto k = s3_product_factors(g))
    return sylow2_s3_product(g, *k, options);
  return sylow2_generic(g, options);
}

bool normalizes(const Permutation& x, const PermGroup& h) {
  for (const auto& s : h.generators())
    if (!h.contains(conjugate(x, s)))
      return false;
  return true;
}

bool same_subgroup(const PermGroup& a, const PermGroup& b) {
  return a.degree() == b.degree() && a.order() == b.order() && a.contains(b);
}

namespace {

bool normalizer_by_enumeration(const SubgroupWitness& w) {
  bool self = true;
  w.ambient.for_each_element([&](const Permutation& y) {
    if (!w.sub.contains(y) && normalizes(y, w.sub)) {
      self = false;
      return false;
    }
    return true;
  });
  return self;
}

bool normalizer_by_structure(const SubgroupWitness& w) {
  auto k = s3_product_factors(w.ambient);
  if (!k)
    throw PreconditionError("structural normaliser test needs a subgroup of S3^k in block form");
  if (!is_subdirect_s3_product(w.ambient))
    throw PreconditionError("structural normaliser test needs every projection r_j onto S3");
  if (w.sub.order() != two_part(w.ambient.order()))
    throw PreconditionError("structural normaliser test needs a Sylow 2-subgroup");

  std::vector<std::optional<Local>> x(*k);
  for (const auto& h : w.sub.generators()) {
    for (std::size_t j = 0; j < *k; ++j) {
      Local l = local_of(h, j);
      if (l == kLocalId)
        continue;
      if (!is_odd(l))
        return false;
      if (x[j] && *x[j] != l)
        return false;
      x[j] = l;
    }
  }
  return std::all_of(x.begin(), x.end(), [](const auto& v) { return v.has_value(); });
}

}  // namespace

NormalizerDecision normalizer_is_self(const SubgroupWitness& w, NormalizerMethod method,
                                      std::uint64_t bound) {
  if (method == NormalizerMethod::Auto) {
    if (w.ambient.order() <= bound)
      method = NormalizerMethod::Enumeration;
    else if (s3_product_factors(w.ambient))
      method = NormalizerMethod::Structural;
    else
      throw BudgetExceeded("normaliser test: order " + w.ambient.order().str() +
                           " exceeds the enumeration bound and no structural path applies");
  }
  if (method == NormalizerMethod::Enumeration) {
    if (w.ambient.order() > bound)
      throw BudgetExceeded("normaliser enumeration: order " + w.ambient.order().str() +
                           " exceeds bound " + std::to_string(bound));
    return {normalizer_by_enumeration(w), method};
  }
  return {normalizer_by_structure(w), method};
}

PermGroup conjugate_subgroup(const PermGroup& g, const PermGroup& h, const Permutation& x) {
  if (!g.contains(x))
    throw PreconditionError("conjugate_subgroup: conjugator is not in the ambient group");
  if (!g.contains(h))
    throw PreconditionError("conjugate_subgroup: h is not a subgroup of the ambient group");
  std::vector<Permutation> gens;
  for (const auto& s : h.generators())
    gens.push_back(conjugate(x, s));
  return PermGroup::generate(g.degree(), std::move(gens));
}

std::optional<Permutation> find_conjugator(const PermGroup& g, const PermGroup& a,
                                           const PermGroup& b, std::uint64_t bound) {
  if (g.order() > bound)
    throw BudgetExceeded("find_conjugator: order " + g.order().str() + " exceeds bound");
  if (a.order() != b.order())
    return std::nullopt;
  std::optional<Permutation> found;
  g.for_each_element([&](const Permutation& x) {
    for (const auto& s : a.generators())
      if (!b.contains(conjugate(x, s)))
        return true;
    found = x;
    return false;
  });
  return found;
}

}  // namespace mcglift
