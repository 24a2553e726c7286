#include "transchrome/abelianp.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "transchrome/arith.hpp"
#include "transchrome/error.hpp"

namespace transchrome {

namespace {
constexpr std::uint64_t kAmbientCap = 1'000'000;
constexpr std::uint64_t kEnumerationCap = 10'000;
}  // namespace

HomocyclicGroup::HomocyclicGroup(unsigned p, unsigned rank, unsigned exponent)
    : p_(p), rank_(rank), exponent_(exponent) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  auto mod = checked_pow(p, exponent);
  auto ord = mod ? checked_pow(*mod, rank) : std::nullopt;
  if (!ord || *ord > kAmbientCap)
    throw Error(ErrorKind::ResourceLimit, "(Z/" + std::to_string(p) + "^" + std::to_string(exponent) + ")^" +
                                              std::to_string(rank) + " is too large");
  modulus_ = static_cast<std::uint32_t>(*mod);
  order_ = static_cast<std::uint32_t>(*ord);
}

std::vector<int> HomocyclicGroup::coords(std::uint32_t code) const {
  std::vector<int> out(rank_);
  for (unsigned i = rank_; i-- > 0;) {
    out[i] = static_cast<int>(code % modulus_);
    code /= modulus_;
  }
  return out;
}

std::uint32_t HomocyclicGroup::code(std::span<const int> coords) const {
  std::uint32_t c = 0;
  for (int v : coords) {
    const auto m = static_cast<int>(modulus_);
    c = c * modulus_ + static_cast<std::uint32_t>(((v % m) + m) % m);
  }
  return c;
}

std::uint32_t HomocyclicGroup::add(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0, place = 1;
  for (unsigned i = 0; i < rank_; ++i) {
    out += ((a % modulus_ + b % modulus_) % modulus_) * place;
    a /= modulus_;
    b /= modulus_;
    place *= modulus_;
  }
  return out;
}

std::uint32_t HomocyclicGroup::scale(std::uint32_t a, std::uint64_t c) const {
  c %= modulus_;
  std::uint32_t out = 0, place = 1;
  for (unsigned i = 0; i < rank_; ++i) {
    out += static_cast<std::uint32_t>((a % modulus_) * c % modulus_) * place;
    a /= modulus_;
    place *= modulus_;
  }
  return out;
}

std::uint32_t HomocyclicGroup::basis(unsigned i) const {
  std::vector<int> v(rank_, 0);
  v[i] = 1;
  return code(v);
}

std::uint32_t HomocyclicGroup::pairing(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t s = 0;
  for (unsigned i = 0; i < rank_; ++i) {
    s += static_cast<std::uint64_t>(a % modulus_) * (b % modulus_);
    a /= modulus_;
    b /= modulus_;
  }
  return static_cast<std::uint32_t>(s % modulus_);
}

// ---------------------------------------------------------------- AbSubgroup

namespace {

/// Breadth-first closure of a generating set inside the ambient group.
std::vector<std::uint32_t> closure(const HomocyclicGroup& A, std::span<const std::uint32_t> gens) {
  std::vector<char> member(A.order(), 0);
  std::vector<std::uint32_t> elements{0};
  member[0] = 1;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (auto g : gens) {
      auto next = A.add(elements[head], g);
      if (!member[next]) {
        member[next] = 1;
        elements.push_back(next);
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

}  // namespace

AbSubgroup AbSubgroup::generated_by(const HomocyclicGroup& ambient, std::span<const std::uint32_t> gens) {
  for (auto g : gens)
    if (g >= ambient.order()) throw Error(ErrorKind::BadParameters, "element code out of range");
  return from_sorted_elements(ambient, closure(ambient, gens));
}

AbSubgroup AbSubgroup::trivial(const HomocyclicGroup& ambient) { return from_sorted_elements(ambient, {0}); }

AbSubgroup AbSubgroup::full(const HomocyclicGroup& ambient) {
  std::vector<std::uint32_t> all(ambient.order());
  for (std::uint32_t i = 0; i < ambient.order(); ++i) all[i] = i;
  return from_sorted_elements(ambient, std::move(all));
}

AbSubgroup AbSubgroup::from_sorted_elements(const HomocyclicGroup& ambient, std::vector<std::uint32_t> elements) {
  AbSubgroup s;
  s.ambient_ = ambient;
  s.elements_ = std::move(elements);
  return s;
}

bool AbSubgroup::contains(std::uint32_t code) const {
  return std::binary_search(elements_.begin(), elements_.end(), code);
}

bool AbSubgroup::is_subgroup_of(const AbSubgroup& other) const {
  return ambient_ == other.ambient_ &&
         std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

bool AbSubgroup::is_valid() const {
  if (elements_.empty() || elements_.front() != 0) return false;
  if (!exact_log(elements_.size(), ambient_.p())) return false;
  for (auto a : elements_)
    for (auto b : elements_)
      if (!contains(ambient_.add(a, b))) return false;
  return true;
}

std::vector<std::uint32_t> AbSubgroup::generators() const {
  std::vector<std::uint32_t> gens;
  std::vector<std::uint32_t> span{0};
  for (auto x : elements_) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = closure(ambient_, gens);
    if (span.size() == elements_.size()) break;
  }
  return gens;
}

std::string AbSubgroup::generators_string() const {
  std::string out;
  bool first = true;
  for (auto g : generators()) {
    if (!first) out += ',';
    first = false;
    out += '(';
    auto c = ambient_.coords(g);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out;
}

AbSubgroup AbSubgroup::parse_generators(const HomocyclicGroup& ambient, std::string_view text) {
  std::vector<std::uint32_t> gens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw Error(ErrorKind::ParseError, "expected '(' in subgroup generators");
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw Error(ErrorKind::ParseError, "unterminated generator");
    std::vector<int> coords;
    std::string_view body = text.substr(i + 1, close - i - 1);
    std::size_t j = 0;
    while (j < body.size()) {
      if (body[j] == ',' || body[j] == ' ') {
        ++j;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(body[j])))
        throw Error(ErrorKind::ParseError, "bad coordinate in subgroup generators");
      int v = 0;
      while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) v = v * 10 + (body[j++] - '0');
      coords.push_back(v);
    }
    if (coords.size() != ambient.rank())
      throw Error(ErrorKind::ParseError, "generator has wrong number of coordinates");
    gens.push_back(ambient.code(coords));
    i = close + 1;
  }
  return generated_by(ambient, gens);
}

AbSubgroup intersect(const AbSubgroup& a, const AbSubgroup& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return AbSubgroup::from_sorted_elements(a.ambient(), std::move(out));
}

AbSubgroup project_tail(const AbSubgroup& U, unsigned rank) {
  const auto& A = U.ambient();
  if (rank > A.rank()) throw Error(ErrorKind::BadParameters, "projection rank exceeds ambient rank");
  HomocyclicGroup target(A.p(), rank, A.exponent());
  std::vector<std::uint32_t> out;
  out.reserve(U.order());
  for (auto e : U.elements()) out.push_back(e % target.order());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return AbSubgroup::from_sorted_elements(target, std::move(out));
}

std::vector<AbSubgroup> enumerate_subgroups(unsigned h, unsigned p, unsigned K, std::uint64_t order) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  auto total = checked_pow(p, K * h);
  if (!total || *total > kEnumerationCap)
    throw Error(ErrorKind::ResourceLimit, "subgroup enumeration needs p^{Kh} <= 10^4");
  auto m = exact_log(order, p);
  if (!m || *m > K * h) throw Error(ErrorKind::BadParameters, "order must be p^m with m <= K*h");

  HomocyclicGroup A(p, h, K);
  // Every subgroup of order p^{j+1} is S + <x> for some S of order p^j with
  // x outside S and p*x inside S. Grow layer by layer.
  std::set<std::vector<std::uint32_t>> layer{{0}};
  for (unsigned j = 0; j < *m; ++j) {
    std::set<std::vector<std::uint32_t>> next;
    for (const auto& S : layer) {
      std::vector<char> covered(A.order(), 0);
      for (auto s : S) covered[s] = 1;
      for (std::uint32_t x = 0; x < A.order(); ++x) {
        if (covered[x] || !std::binary_search(S.begin(), S.end(), A.scale(x, p))) continue;
        std::vector<std::uint32_t> T;
        T.reserve(S.size() * p);
        std::uint32_t shift = 0;
        for (unsigned c = 0; c < p; ++c) {
          for (auto s : S) T.push_back(A.add(s, shift));
          shift = A.add(shift, x);
        }
        std::sort(T.begin(), T.end());
        for (auto t : T) covered[t] = 1;
        next.insert(std::move(T));
      }
    }
    layer = std::move(next);
  }
  std::vector<AbSubgroup> out;
  out.reserve(layer.size());
  for (const auto& els : layer) out.push_back(AbSubgroup::from_sorted_elements(A, els));
  return out;
}

AbSubgroup annihilator(const AbSubgroup& U) {
  const auto& A = U.ambient();
  auto gens = U.generators();
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < A.order(); ++y) {
    bool ok = std::all_of(gens.begin(), gens.end(), [&](std::uint32_t x) { return A.pairing(x, y) == 0; });
    if (ok) out.push_back(y);
  }
  return AbSubgroup::from_sorted_elements(A, std::move(out));
}

std::uint64_t count_sublattices(unsigned h, unsigned p, unsigned m) {
  if (h == 0) throw Error(ErrorKind::BadParameters, "rank must be at least 1");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  // Hermite normal form: index-p^m sublattices of Z^h with diagonal
  // p^{a_1}, ..., p^{a_h}; column i carries (i-1)*a_i free entries.
  std::uint64_t total = 0;
  std::function<void(unsigned, unsigned, unsigned)> rec = [&](unsigned i, unsigned left, unsigned weight) {
    if (i == h) {
      if (left == 0) {
        if (__builtin_add_overflow(total, ipow(p, weight), &total))
          throw Error(ErrorKind::ResourceLimit, "sublattice count overflows 64 bits");
      }
      return;
    }
    for (unsigned a = 0; a <= left; ++a) rec(i + 1, left - a, weight + i * a);
  };
  rec(0, m, 0);
  return total;
}

std::uint64_t sub_leq_count(unsigned h, unsigned p, unsigned k) {
  std::uint64_t total = 0;
  for (unsigned m = 0; m <= k; ++m) total += count_sublattices(h, p, m);
  return total;
}

}  // namespace transchrome
