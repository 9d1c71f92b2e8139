#include "mcglift/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "mcglift/errors.hpp"

namespace mcglift {

SurfaceWord::SurfaceWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (Letter x : letters_)
    if (x == 0)
      throw PreconditionError("surface word contains the zero letter");
}

SurfaceWord SurfaceWord::parse(std::string_view text) {
  std::vector<Letter> out;
  if (text == "1")
    return SurfaceWord();
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '*' || c == '.') {
      ++i;
      continue;
    }
    bool inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower != 'a' && lower != 'b')
      throw PreconditionError("bad letter '" + std::string(1, c) + "' in word " + std::string(text));
    ++i;
    int index = 0;
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      index = index * 10 + (text[i] - '0');
      ++i;
      any = true;
    }
    if (!any || index < 1)
      throw PreconditionError("missing handle index in word " + std::string(text));
    Letter x = lower == 'a' ? gen_a(index) : gen_b(index);
    out.push_back(inverse ? -x : x);
  }
  return SurfaceWord(std::move(out));
}

int SurfaceWord::max_generator() const noexcept {
  int m = 0;
  for (Letter x : letters_)
    m = std::max(m, std::abs(x));
  return m;
}

SurfaceWord SurfaceWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& x : out)
    x = -x;
  SurfaceWord w;
  w.letters_ = std::move(out);
  return w;
}

std::string SurfaceWord::to_string() const {
  std::string out;
  for (Letter x : letters_) {
    int g = std::abs(x);
    bool is_a = (g % 2) == 1;
    char c = is_a ? 'a' : 'b';
    if (x < 0)
      c = static_cast<char>(std::toupper(c));
    out += c;
    out += std::to_string((g + 1) / 2);
  }
  return out;
}

SurfaceWord operator*(const SurfaceWord& u, const SurfaceWord& v) {
  SurfaceWord w;
  w.letters_.reserve(u.size() + v.size());
  w.letters_ = u.letters_;
  w.letters_.insert(w.letters_.end(), v.letters_.begin(), v.letters_.end());
  return w;
}

SurfaceWord free_reduce(const SurfaceWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter x : w.letters()) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return SurfaceWord(std::move(out));
}

SurfaceWord cyclic_reduce(const SurfaceWord& w) {
  std::vector<Letter> r = free_reduce(w).letters();
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return SurfaceWord(std::vector<Letter>(r.begin() + static_cast<std::ptrdiff_t>(lo),
                                         r.begin() + static_cast<std::ptrdiff_t>(hi)));
}

SurfaceWord commutator(const SurfaceWord& u, const SurfaceWord& v) {
  return u * v * u.inverse() * v.inverse();
}

SurfacePresentation::SurfacePresentation(int genus) : genus_(genus) {
  if (genus < 2)
    throw PreconditionError("surface presentations need genus >= 2, got " + std::to_string(genus));
  std::vector<Letter> r;
  for (int j = 1; j <= genus; ++j) {
    r.push_back(gen_a(j));
    r.push_back(gen_b(j));
    r.push_back(-gen_a(j));
    r.push_back(-gen_b(j));
  }
  relator_ = SurfaceWord(r);

  const std::size_t length = r.size();
  const std::size_t piece = 2 * static_cast<std::size_t>(genus) + 1;
  for (const auto& base : {relator_.letters(), relator_.inverse().letters()}) {
    for (std::size_t shift = 0; shift < length; ++shift) {
      std::vector<Letter> rotated(length);
      for (std::size_t i = 0; i < length; ++i)
        rotated[i] = base[(shift + i) % length];
      std::vector<Letter> head(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(piece));
      std::vector<Letter> tail(rotated.begin() + static_cast<std::ptrdiff_t>(piece), rotated.end());
      std::reverse(tail.begin(), tail.end());
      for (auto& x : tail)
        x = -x;
      pieces_.emplace(std::move(head), std::move(tail));
    }
  }
}

void SurfacePresentation::check_word(const SurfaceWord& w) const {
  if (w.max_generator() > generator_count())
    throw PreconditionError("word " + w.to_string() + " uses a generator beyond genus " +
                            std::to_string(genus_));
}

// Left-to-right Dehn reduction with a stack: after each push, the top 2g+1
// letters are compared with the relator pieces; a hit is replaced by the
// shorter complement, fed back through the input so that new cancellations
// are found. Every replacement shortens the word by 2.
std::vector<Letter> SurfacePresentation::reduce_linear(std::vector<Letter> input) const {
  const std::size_t piece = 2 * static_cast<std::size_t>(genus_) + 1;
  std::vector<Letter> pending(input.rbegin(), input.rend());
  std::vector<Letter> out;
  out.reserve(input.size());
  std::vector<Letter> key(piece);
  while (!pending.empty()) {
    Letter x = pending.back();
    pending.pop_back();
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
      continue;
    }
    out.push_back(x);
    if (out.size() < piece)
      continue;
    std::copy(out.end() - static_cast<std::ptrdiff_t>(piece), out.end(), key.begin());
    auto it = pieces_.find(key);
    if (it == pieces_.end())
      continue;
    out.resize(out.size() - piece);
    const auto& replacement = it->second;
    for (auto r = replacement.rbegin(); r != replacement.rend(); ++r)
      pending.push_back(*r);
  }
  return out;
}

bool SurfacePresentation::find_cyclic_piece(const std::vector<Letter>& w, std::size_t& start) const {
  const std::size_t piece = 2 * static_cast<std::size_t>(genus_) + 1;
  const std::size_t n = w.size();
  if (n < piece)
    return false;
  std::vector<Letter> key(piece);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < piece; ++j)
      key[j] = w[(i + j) % n];
    if (pieces_.count(key)) {
      start = i;
      return true;
    }
  }
  return false;
}

SurfaceWord SurfacePresentation::dehn_reduce(const SurfaceWord& w) const {
  check_word(w);
  std::vector<Letter> cur = reduce_linear(w.letters());
  while (true) {
    cur = cyclic_reduce(SurfaceWord(std::move(cur))).letters();
    std::size_t start = 0;
    if (!find_cyclic_piece(cur, start))
      break;
    std::rotate(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(start), cur.end());
    cur = reduce_linear(std::move(cur));
  }
  return SurfaceWord(std::move(cur));
}

bool SurfacePresentation::is_trivial(const SurfaceWord& w) const { return dehn_reduce(w).empty(); }

bool SurfacePresentation::words_equal(const SurfaceWord& u, const SurfaceWord& v) const {
  return is_trivial(u * v.inverse());
}

BigInt cover_genus(int genus, const BigInt& degree) {
  if (genus < 2)
    throw PreconditionError("cover_genus: genus must be >= 2");
  if (degree < 1)
    throw PreconditionError("cover_genus: degree must be >= 1");
  return degree * (genus - 1) + 1;
}

}  // namespace mcglift
