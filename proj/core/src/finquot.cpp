#include "mcglift/finquot.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcglift/errors.hpp"

namespace mcglift {

namespace {

constexpr std::size_t kTableLimit = 4096;

// Action of [[a, b], [c, d]] on the projective line; point p is infinity.
Permutation projective_action(unsigned p, long a, long b, long c, long d) {
  auto mod = [p](long x) { return static_cast<unsigned>(((x % static_cast<long>(p)) + p) % p); };
  auto inv = [p, &mod](unsigned x) {
    // Fermat inverse; x != 0.
    unsigned long long r = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1)
        r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return mod(static_cast<long>(r));
  };
  std::vector<Point> images(p + 1);
  for (unsigned x = 0; x < p; ++x) {
    unsigned num = mod(a * x + b);
    unsigned den = mod(c * x + d);
    images[x] = den == 0 ? p : static_cast<Point>(num * static_cast<unsigned long long>(inv(den)) % p);
  }
  unsigned cc = mod(c);
  images[p] = cc == 0 ? p : static_cast<Point>(mod(a) * static_cast<unsigned long long>(inv(cc)) % p);
  return Permutation(std::move(images));
}

unsigned smallest_nonresidue(unsigned p) {
  for (unsigned r = 2; r < p; ++r) {
    bool square = false;
    for (unsigned x = 1; x < p && !square; ++x)
      square = (x * x) % p == r;
    if (!square)
      return r;
  }
  throw InvariantBreach("no quadratic non-residue found");
}

unsigned primitive_root(unsigned p) {
  for (unsigned g = 2; g < p; ++g) {
    unsigned x = 1;
    unsigned ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1)
      return g;
  }
  throw InvariantBreach("no primitive root found");
}

std::vector<unsigned> psl2_character_degrees(unsigned p) {
  std::vector<unsigned> d{1, p};
  if (p % 4 == 1) {
    d.push_back((p + 1) / 2);
    d.push_back((p + 1) / 2);
    for (unsigned i = 0; i < (p - 5) / 4; ++i)
      d.push_back(p + 1);
    for (unsigned i = 0; i < (p - 1) / 4; ++i)
      d.push_back(p - 1);
  } else {
    d.push_back((p - 1) / 2);
    d.push_back((p - 1) / 2);
    for (unsigned i = 0; i < (p - 3) / 4; ++i)
      d.push_back(p + 1);
    for (unsigned i = 0; i < (p - 3) / 4; ++i)
      d.push_back(p - 1);
  }
  return d;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2)
    return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

FiniteTarget::FiniteTarget(TargetKind kind, unsigned parameter, std::string name, PermGroup group,
                           std::vector<Permutation> normalizing,
                           std::optional<std::vector<unsigned>> degrees)
    : kind_(kind),
      parameter_(parameter),
      name_(std::move(name)),
      group_(std::move(group)),
      char_degrees_(std::move(degrees)),
      normalizing_(std::move(normalizing)) {
  elements_ = group_.elements(std::numeric_limits<std::uint32_t>::max());
  std::sort(elements_.begin(), elements_.end());
  lookup_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    lookup_.emplace(elements_[i], static_cast<ElementId>(i));

  const std::size_t n = elements_.size();
  inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    inverse_[i] = lookup_.at(elements_[i].inverse());
  if (n <= kTableLimit) {
    table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        table_[i * n + j] = lookup_.at(elements_[i] * elements_[j]);
  }

  if (!normalizing_.empty()) {
    for (const auto& s : normalizing_)
      for (const auto& g : group_.generators())
        if (!group_.contains(conjugate(s, g)))
          throw InvariantBreach("normalising generator does not normalise " + name_);
    PermGroup norm = PermGroup::generate(group_.degree(), normalizing_);
    std::set<std::vector<ElementId>> seen;
    std::vector<ElementId> identity_map(n);
    for (std::size_t i = 0; i < n; ++i)
      identity_map[i] = static_cast<ElementId>(i);
    automorphisms_.push_back(identity_map);
    seen.insert(identity_map);
    norm.for_each_element([&](const Permutation& c) {
      std::vector<ElementId> map(n);
      for (std::size_t i = 0; i < n; ++i)
        map[i] = lookup_.at(conjugate(c, elements_[i]));
      if (seen.insert(map).second)
        automorphisms_.push_back(std::move(map));
      return true;
    });
  }
}

ElementId FiniteTarget::index_of(const Permutation& p) const {
  auto it = lookup_.find(p);
  if (it == lookup_.end())
    throw PreconditionError(p.cycle_string() + " is not an element of " + name_);
  return it->second;
}

ElementId FiniteTarget::mul(ElementId a, ElementId b) const {
  if (!table_.empty())
    return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return lookup_.at(elements_[a] * elements_[b]);
}

std::optional<Permutation> FiniteTarget::outer_automorphism_representative() const {
  for (const auto& s : normalizing_)
    if (!group_.contains(s))
      return s;
  return std::nullopt;
}

TargetPtr FiniteTarget::trivial() {
  static const TargetPtr t(new FiniteTarget(TargetKind::Trivial, 0, "trivial", PermGroup::trivial(1), {},
                                            std::vector<unsigned>{1}));
  return t;
}

TargetPtr FiniteTarget::cyclic2() {
  static const TargetPtr t(new FiniteTarget(TargetKind::Cyclic2, 0, "c2",
                                            PermGroup::generate({Permutation::from_cycles(2, "(0 1)")}),
                                            {}, std::vector<unsigned>{1, 1}));
  return t;
}

TargetPtr FiniteTarget::symmetric3() {
  static const TargetPtr t = [] {
    std::vector<Permutation> gens{Permutation::from_cycles(3, "(0 1)"), Permutation::from_cycles(3, "(0 1 2)")};
    return TargetPtr(new FiniteTarget(TargetKind::Symmetric3, 0, "s3", PermGroup::generate(gens), gens,
                                      std::vector<unsigned>{1, 1, 2}));
  }();
  return t;
}

TargetPtr FiniteTarget::alternating5() {
  static const TargetPtr t = [] {
    std::vector<Permutation> gens{Permutation::from_cycles(5, "(0 1 2 3 4)"),
                                  Permutation::from_cycles(5, "(0 1 2)")};
    std::vector<Permutation> normalizing = gens;
    normalizing.push_back(Permutation::from_cycles(5, "(0 1)"));
    return TargetPtr(new FiniteTarget(TargetKind::Alternating5, 0, "a5", PermGroup::generate(gens),
                                      normalizing, std::vector<unsigned>{1, 3, 3, 4, 5}));
  }();
  return t;
}

TargetPtr FiniteTarget::psl2(unsigned p) {
  if (p < 5 || !is_prime(p))
    throw PreconditionError("psl2 needs a prime p >= 5, got " + std::to_string(p));
  static std::mutex mutex;
  static std::map<unsigned, TargetPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p];
  if (!slot) {
    std::vector<Permutation> gens{projective_action(p, 1, 1, 0, 1), projective_action(p, 0, -1, 1, 0)};
    std::vector<Permutation> normalizing = gens;
    normalizing.push_back(projective_action(p, smallest_nonresidue(p), 0, 0, 1));
    slot.reset(new FiniteTarget(TargetKind::Psl2, p, "psl2(" + std::to_string(p) + ")",
                                PermGroup::generate(gens), normalizing, psl2_character_degrees(p)));
  }
  return slot;
}

TargetPtr FiniteTarget::elementary_abelian2(unsigned rank) {
  if (rank == 0)
    return trivial();
  static std::mutex mutex;
  static std::map<unsigned, TargetPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[rank];
  if (!slot) {
    std::vector<Permutation> gens;
    for (unsigned i = 0; i < rank; ++i)
      gens.push_back(Permutation::from_cycles(2 * rank, "(" + std::to_string(2 * i) + " " +
                                                            std::to_string(2 * i + 1) + ")"));
    std::vector<unsigned> degrees(std::size_t{1} << rank, 1u);
    slot.reset(new FiniteTarget(TargetKind::ElementaryAbelian2, rank, "c2^" + std::to_string(rank),
                                PermGroup::generate(gens), {}, std::move(degrees)));
  }
  return slot;
}

TargetPtr FiniteTarget::custom(std::string name, PermGroup group) {
  return TargetPtr(new FiniteTarget(TargetKind::Custom, 0, std::move(name), std::move(group), {}, std::nullopt));
}

TargetPtr FiniteTarget::by_name(const std::string& name, unsigned parameter) {
  if (name == "s3")
    return symmetric3();
  if (name == "c2")
    return cyclic2();
  if (name == "a5")
    return alternating5();
  if (name == "psl2")
    return psl2(parameter);
  if (name == "trivial")
    return trivial();
  if (name.rfind("c2^", 0) == 0)
    return elementary_abelian2(static_cast<unsigned>(std::stoul(name.substr(3))));
  throw PreconditionError("unknown target '" + name + "'");
}

bool satisfies_relator(const TargetPtr& target, const std::vector<ElementId>& images) {
  ElementId acc = FiniteTarget::identity();
  for (std::size_t j = 0; j + 1 < images.size(); j += 2) {
    ElementId x = images[j];
    ElementId y = images[j + 1];
    ElementId c = target->mul(target->mul(x, y), target->mul(target->inv(x), target->inv(y)));
    acc = target->mul(acc, c);
  }
  return acc == FiniteTarget::identity();
}

FiniteHom make_hom(TargetPtr target, std::vector<ElementId> images) {
  if (images.size() % 2 != 0 || images.size() < 4)
    throw PreconditionError("a surface group hom needs 2g >= 4 images");
  for (ElementId x : images)
    if (x >= target->order())
      throw PreconditionError("element index out of range for " + target->name());
  if (!satisfies_relator(target, images))
    throw PreconditionError("images do not satisfy the surface relator");
  return FiniteHom{std::move(target), std::move(images)};
}

ElementId evaluate(const FiniteHom& hom, const SurfaceWord& w) {
  const auto& t = *hom.target;
  ElementId acc = FiniteTarget::identity();
  for (Letter x : w.letters()) {
    std::size_t g = static_cast<std::size_t>(std::abs(x)) - 1;
    if (g >= hom.images.size())
      throw PreconditionError("word uses a generator beyond the hom's genus");
    ElementId e = hom.images[g];
    acc = t.mul(acc, x > 0 ? e : t.inv(e));
  }
  return acc;
}

Permutation evaluate_permutation(const FiniteHom& hom, const SurfaceWord& w) {
  const auto& t = *hom.target;
  Permutation acc = Permutation::identity(t.degree());
  for (Letter x : w.letters()) {
    const Permutation& e = t.element(hom.images.at(static_cast<std::size_t>(std::abs(x)) - 1));
    acc = acc * (x > 0 ? e : e.inverse());
  }
  return acc;
}

bool satisfies_relator_by_permutations(const FiniteHom& hom) {
  const auto& t = *hom.target;
  Permutation acc = Permutation::identity(t.degree());
  for (std::size_t j = 0; j + 1 < hom.images.size(); j += 2) {
    const Permutation& x = t.element(hom.images[j]);
    const Permutation& y = t.element(hom.images[j + 1]);
    acc = compose(acc, compose(compose(x, y), compose(x.inverse(), y.inverse())));
  }
  return acc.is_identity();
}

std::vector<Permutation> image_permutations(const FiniteHom& hom) {
  std::vector<Permutation> out;
  for (ElementId e : hom.images)
    out.push_back(hom.target->element(e));
  return out;
}

PermGroup image_group(const FiniteHom& hom) {
  return PermGroup::generate(hom.target->degree(), image_permutations(hom));
}

bool is_surjective(const FiniteHom& hom) {
  return image_group(hom).order() == hom.target->order();
}

std::string hom_to_string(const FiniteHom& hom) {
  std::ostringstream out;
  out << hom.target->name() << '[';
  for (std::size_t i = 0; i < hom.images.size(); ++i) {
    if (i)
      out << ", ";
    out << hom.target->element(hom.images[i]).cycle_string();
  }
  out << ']';
  return out.str();
}

std::vector<FiniteHom> enumerate_homs(int genus, const TargetPtr& target, const EnumerationBudget& budget) {
  if (genus < 2)
    throw PreconditionError("enumerate_homs: genus must be >= 2");
  const std::size_t n = target->order();
  BigInt tuples = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(2 * genus));
  if (tuples > budget.max_tuples)
    throw BudgetExceeded("enumeration of " + tuples.str() + " tuples for " + target->name() + " at genus " +
                         std::to_string(genus) + " exceeds the tuple budget " +
                         std::to_string(budget.max_tuples) + "; raise --budget-tuples or use the seeded construction in forge");

  // comm[x*n + y] = [x, y]; solutions[x] lists y grouped by commutator value.
  std::vector<ElementId> comm(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto xi = static_cast<ElementId>(x), yi = static_cast<ElementId>(y);
      comm[x * n + y] = target->mul(target->mul(xi, yi), target->mul(target->inv(xi), target->inv(yi)));
    }
  std::vector<std::vector<ElementId>> by_value(n * n);  // [x*n + c] -> ys ascending
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      by_value[x * n + comm[x * n + y]].push_back(static_cast<ElementId>(y));

  std::vector<FiniteHom> out;
  std::vector<ElementId> tuple(2 * static_cast<std::size_t>(genus));
  const std::size_t last = static_cast<std::size_t>(genus) - 1;

  auto recurse = [&](auto&& self, std::size_t handle, ElementId prefix) -> void {
    if (handle == last) {
      ElementId need = target->inv(prefix);
      for (std::size_t x = 0; x < n; ++x) {
        tuple[2 * handle] = static_cast<ElementId>(x);
        for (ElementId y : by_value[x * n + need]) {
          tuple[2 * handle + 1] = y;
          out.push_back(FiniteHom{target, tuple});
        }
      }
      return;
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        tuple[2 * handle] = static_cast<ElementId>(x);
        tuple[2 * handle + 1] = static_cast<ElementId>(y);
        self(self, handle + 1, target->mul(prefix, comm[x * n + y]));
      }
  };
  recurse(recurse, 0, FiniteTarget::identity());
  return out;
}

std::vector<FiniteHom> enumerate_epis(int genus, const TargetPtr& target, const EnumerationBudget& budget) {
  auto homs = enumerate_homs(genus, target, budget);
  std::vector<FiniteHom> out;
  for (auto& h : homs)
    if (is_surjective(h))
      out.push_back(std::move(h));
  return out;
}

BigInt count_homs_oracle(int genus, const TargetPtr& target) {
  using boost::multiprecision::cpp_rational;
  const auto& degrees = target->character_degrees();
  if (!degrees)
    throw PreconditionError("no character degree list stored for " + target->name());
  const unsigned e = static_cast<unsigned>(2 * genus - 2);
  cpp_rational sum = 0;
  BigInt square_sum = 0;
  for (unsigned d : *degrees) {
    sum += cpp_rational(1, boost::multiprecision::pow(BigInt(d), e));
    square_sum += BigInt(d) * d;
  }
  if (square_sum != target->order())
    throw InvariantBreach("character degrees of " + target->name() + " do not square-sum to the order");
  cpp_rational value = sum * cpp_rational(boost::multiprecision::pow(BigInt(target->order()),
                                                                      static_cast<unsigned>(2 * genus - 1)));
  if (denominator(value) != 1)
    throw InvariantBreach("character-sum count for " + target->name() + " is not an integer");
  return numerator(value);
}

SubgroupWitness borel_subgroup(unsigned p) {
  auto target = FiniteTarget::psl2(p);
  unsigned r = primitive_root(p);
  // diag(r, r^-1) acts as x -> r^2 x.
  unsigned r_inv = 1;
  while ((r * r_inv) % p != 1)
    ++r_inv;
  std::vector<Permutation> gens{projective_action(p, 1, 1, 0, 1), projective_action(p, r, 0, 0, r_inv)};
  PermGroup borel = PermGroup::generate(p + 1, gens);
  return SubgroupWitness::make(target->group(), std::move(borel));
}

std::optional<FiniteHom> first_epimorphism(int genus, const TargetPtr& target) {
  if (genus < 2)
    throw PreconditionError("first_epimorphism: genus must be >= 2");
  const std::size_t n = target->order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<ElementId> images(2 * static_cast<std::size_t>(genus), FiniteTarget::identity());
      images[0] = static_cast<ElementId>(x);
      images[1] = static_cast<ElementId>(y);
      images[2] = static_cast<ElementId>(y);
      images[3] = static_cast<ElementId>(x);
      FiniteHom h = make_hom(target, std::move(images));
      if (is_surjective(h))
        return h;
    }
  return std::nullopt;
}

}  // namespace mcglift
