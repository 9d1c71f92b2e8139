#include "mcglift/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mcglift/errors.hpp"

namespace mcglift {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw PreconditionError("image array is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::from_images_unchecked(std::vector<Point> images) {
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), Point{0});
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < cycles.size() && (cycles[i] == ' ' || cycles[i] == ','))
      ++i;
  };
  while (true) {
    skip_space();
    if (i == cycles.size())
      break;
    if (cycles[i] != '(')
      throw PreconditionError("malformed cycle string: " + std::string(cycles));
    ++i;
    std::vector<Point> cycle;
    while (true) {
      skip_space();
      if (i == cycles.size())
        throw PreconditionError("unterminated cycle: " + std::string(cycles));
      if (cycles[i] == ')') {
        ++i;
        break;
      }
      std::size_t value = 0;
      bool any = false;
      while (i < cycles.size() && cycles[i] >= '0' && cycles[i] <= '9') {
        value = value * 10 + static_cast<std::size_t>(cycles[i] - '0');
        ++i;
        any = true;
      }
      if (!any || value >= degree || used[value])
        throw PreconditionError("bad point in cycle string: " + std::string(cycles));
      used[value] = true;
      cycle.push_back(static_cast<Point>(value));
    }
    for (std::size_t j = 0; j < cycle.size(); ++j)
      images[cycle[j]] = cycle[(j + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x)
      return false;
  return true;
}

Point Permutation::first_moved() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x)
      return static_cast<Point>(x);
  return static_cast<Point>(images_.size());
}

Permutation Permutation::inverse() const {
  std::vector<Point> r(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x)
    r[images_[x]] = static_cast<Point>(x);
  return from_images_unchecked(std::move(r));
}

BigInt Permutation::order() const {
  BigInt result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x])
      continue;
    std::uint64_t len = 0;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    result = boost::multiprecision::lcm(result, BigInt(len));
  }
  return result;
}

std::string Permutation::cycle_string() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x)
      continue;
    any = true;
    out << '(';
    bool first = true;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      if (!first)
        out << ' ';
      out << y;
      first = false;
    }
    out << ')';
  }
  return any ? out.str() : std::string("()");
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw DegreeMismatch("compose: degrees " + std::to_string(p.degree()) + " and " +
                         std::to_string(q.degree()));
  std::vector<Point> images(p.degree());
  auto pi = p.images();
  auto qi = q.images();
  for (std::size_t x = 0; x < images.size(); ++x)
    images[x] = pi[qi[x]];
  return Permutation::from_images_unchecked(std::move(images));
}

Permutation conjugate(const Permutation& x, const Permutation& h) {
  return x * h * x.inverse();
}

Permutation power(const Permutation& p, std::uint64_t e) {
  Permutation result = Permutation::identity(p.degree());
  Permutation base = p;
  while (e) {
    if (e & 1u)
      result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Stabiliser chain

struct PermGroup::Level {
  Point base = 0;
  std::vector<Permutation> gens;
  std::vector<std::int32_t> slot;  // point -> index into orbit, or -1
  std::vector<Point> orbit;
  std::vector<Permutation> reps;      // reps[i](base) == orbit[i]
  std::vector<Permutation> reps_inv;
};

struct PermGroup::Chain {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<Level> levels;
  BigInt order = 1;
};

namespace {

class SchreierSims {
 public:
  explicit SchreierSims(std::size_t degree) : degree_(degree) {}

  template <class L>
  void run(std::vector<L>& levels, const std::vector<Permutation>& gens) {
    for (const auto& g : gens)
      add(levels, 0, g);
  }

  template <class L>
  static std::pair<Permutation, std::size_t> strip(const std::vector<L>& levels, Permutation g,
                                                   std::size_t from) {
    for (std::size_t j = from; j < levels.size(); ++j) {
      const auto& lv = levels[j];
      std::int32_t s = lv.slot[g(lv.base)];
      if (s < 0)
        return {std::move(g), j};
      g = lv.reps_inv[static_cast<std::size_t>(s)] * g;
    }
    return {std::move(g), levels.size()};
  }

 private:
  template <class L>
  void add(std::vector<L>& levels, std::size_t level, const Permutation& g) {
    auto [h, depth] = strip(levels, g, level);
    if (depth == levels.size() && h.is_identity())
      return;
    if (depth == levels.size()) {
      L lv;
      lv.base = h.first_moved();
      lv.slot.assign(degree_, -1);
      lv.slot[lv.base] = 0;
      lv.orbit.push_back(lv.base);
      lv.reps.push_back(Permutation::identity(degree_));
      lv.reps_inv.push_back(Permutation::identity(degree_));
      levels.push_back(std::move(lv));
    }
    for (std::size_t l = depth + 1; l-- > level;)
      extend(levels, l, h);
  }

  template <class L>
  void extend(std::vector<L>& levels, std::size_t l, const Permutation& h) {
    levels[l].gens.push_back(h);
    const std::size_t old_points = levels[l].orbit.size();
    for (std::size_t i = 0; i < old_points; ++i)
      process(levels, l, i, h);
    for (std::size_t i = old_points; i < levels[l].orbit.size(); ++i) {
      for (std::size_t gi = 0; gi < levels[l].gens.size(); ++gi) {
        Permutation s = levels[l].gens[gi];
        process(levels, l, i, s);
      }
    }
  }

  template <class L>
  void process(std::vector<L>& levels, std::size_t l, std::size_t i, const Permutation& s) {
    Point q = s(levels[l].orbit[i]);
    Permutation t = s * levels[l].reps[i];
    std::int32_t slot = levels[l].slot[q];
    if (slot < 0) {
      auto& lv = levels[l];
      lv.slot[q] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(q);
      lv.reps_inv.push_back(t.inverse());
      lv.reps.push_back(std::move(t));
      return;
    }
    Permutation schreier = levels[l].reps_inv[static_cast<std::size_t>(slot)] * t;
    if (!schreier.is_identity())
      add(levels, l + 1, schreier);
  }

  std::size_t degree_;
};

}  // namespace

PermGroup PermGroup::generate(std::size_t degree, std::vector<Permutation> generators) {
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw DegreeMismatch("generator degree " + std::to_string(g.degree()) +
                           " differs from group degree " + std::to_string(degree));
  auto chain = std::make_shared<Chain>();
  chain->degree = degree;
  chain->generators = std::move(generators);
  SchreierSims(degree).run(chain->levels, chain->generators);
  chain->order = 1;
  for (const auto& lv : chain->levels)
    chain->order *= lv.orbit.size();
  PermGroup g;
  g.chain_ = std::move(chain);
  return g;
}

PermGroup PermGroup::generate(std::vector<Permutation> generators) {
  if (generators.empty())
    throw PreconditionError("generate: empty generator list needs an explicit degree");
  std::size_t degree = generators.front().degree();
  return generate(degree, std::move(generators));
}

PermGroup PermGroup::trivial(std::size_t degree) { return generate(degree, {}); }

std::size_t PermGroup::degree() const noexcept { return chain_ ? chain_->degree : 0; }

const std::vector<Permutation>& PermGroup::generators() const noexcept {
  static const std::vector<Permutation> empty;
  return chain_ ? chain_->generators : empty;
}

const BigInt& PermGroup::order() const noexcept {
  static const BigInt one = 1;
  return chain_ ? chain_->order : one;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree())
    throw DegreeMismatch("membership test: element degree " + std::to_string(p.degree()) +
                         ", group degree " + std::to_string(degree()));
  if (!chain_)
    return p.is_identity();
  auto [residue, depth] = SchreierSims::strip(chain_->levels, p, 0);
  return depth == chain_->levels.size() && residue.is_identity();
}

bool PermGroup::contains(const PermGroup& other) const {
  return std::all_of(other.generators().begin(), other.generators().end(),
                     [&](const Permutation& g) { return contains(g); });
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> out;
  if (chain_)
    for (const auto& lv : chain_->levels)
      out.push_back(lv.base);
  return out;
}

std::vector<std::size_t> PermGroup::orbit_lengths() const {
  std::vector<std::size_t> out;
  if (chain_)
    for (const auto& lv : chain_->levels)
      out.push_back(lv.orbit.size());
  return out;
}

std::vector<Permutation> PermGroup::strong_generators() const {
  std::vector<Permutation> out;
  if (!chain_)
    return out;
  for (const auto& lv : chain_->levels)
    for (const auto& g : lv.gens)
      if (std::find(out.begin(), out.end(), g) == out.end())
        out.push_back(g);
  return out;
}

std::vector<Point> PermGroup::orbit(Point x) const {
  std::vector<Point> out{x};
  std::vector<bool> seen(degree(), false);
  seen[x] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : generators()) {
      Point y = g(out[i]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  Permutation result = Permutation::identity(degree());
  if (!chain_)
    return result;
  for (const auto& lv : chain_->levels) {
    std::uniform_int_distribution<std::size_t> pick(0, lv.orbit.size() - 1);
    result = result * lv.reps[pick(rng)];
  }
  return result;
}

void PermGroup::for_each_element(const std::function<bool(const Permutation&)>& fn) const {
  if (!chain_ || chain_->levels.empty()) {
    fn(Permutation::identity(degree()));
    return;
  }
  const auto& levels = chain_->levels;
  const std::size_t depth = levels.size();
  // Every element is uniquely reps_0[i_0] * reps_1[i_1] * ... .
  std::vector<std::size_t> idx(depth, 0);
  std::vector<Permutation> prefix(depth + 1);
  prefix[0] = Permutation::identity(degree());
  for (std::size_t d = 0; d < depth; ++d)
    prefix[d + 1] = prefix[d] * levels[d].reps[0];
  while (true) {
    if (!fn(prefix[depth]))
      return;
    std::size_t d = depth;
    while (true) {
      if (d == 0)
        return;
      --d;
      if (++idx[d] < levels[d].orbit.size())
        break;
      idx[d] = 0;
    }
    for (std::size_t e = d; e < depth; ++e)
      prefix[e + 1] = prefix[e] * levels[e].reps[idx[e]];
  }
}

std::vector<Permutation> PermGroup::elements(std::uint64_t bound) const {
  if (order() > bound)
    throw BudgetExceeded("group of order " + order().str() + " exceeds enumeration bound " +
                         std::to_string(bound));
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(order()));
  for_each_element([&](const Permutation& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

BigInt order_from_orbits(const PermGroup& g) {
  BigInt n = 1;
  for (std::size_t len : g.orbit_lengths())
    n *= len;
  return n;
}

BigInt two_part(const BigInt& n) { return prime_part(n, 2); }

BigInt prime_part(const BigInt& n, unsigned p) {
  if (n <= 0)
    throw PreconditionError("prime_part: non-positive argument");
  BigInt m = n;
  BigInt part = 1;
  while (m % p == 0) {
    m /= p;
    part *= p;
  }
  return part;
}

}  // namespace mcglift
