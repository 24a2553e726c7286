#include "transchrome/permcore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_set>

#include "transchrome/arith.hpp"
#include "transchrome/error.hpp"

namespace transchrome {

// ---------------------------------------------------------------- Perm

Perm::Perm(std::size_t degree) {
  if (degree > kMaxDegree)
    throw Error(ErrorKind::BadParameters, "degree " + std::to_string(degree) + " exceeds " +
                                              std::to_string(kMaxDegree));
  degree_ = static_cast<std::uint8_t>(degree);
  for (std::size_t i = 0; i < kMaxDegree; ++i) images_[i] = static_cast<std::uint8_t>(i);
}

Perm Perm::from_images(std::span<const int> images) {
  Perm p(images.size());
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    int v = images[i];
    if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[v])
      throw Error(ErrorKind::BadParameters, "image list is not a permutation");
    seen[v] = true;
    p.images_[i] = static_cast<std::uint8_t>(v);
  }
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles) {
  Perm p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (int x : cycle) {
      if (x < 0 || static_cast<std::size_t>(x) >= degree)
        throw Error(ErrorKind::ParseError, "point " + std::to_string(x) + " out of range for degree " +
                                               std::to_string(degree));
      if (used[x]) throw Error(ErrorKind::ParseError, "point " + std::to_string(x) + " repeated");
      used[x] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      p.images_[cycle[i]] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
  }
  return p;
}

Perm Perm::parse(std::string_view text, std::size_t degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorKind::ParseError, "expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i >= text.size()) throw Error(ErrorKind::ParseError, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(ErrorKind::ParseError, "unexpected character in \"" + std::string(text) + "\"");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      cycle.push_back(v);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

std::vector<int> Perm::images() const { return {images_.begin(), images_.begin() + degree_}; }

Perm Perm::operator*(const Perm& rhs) const {
  if (degree_ != rhs.degree_) throw Error(ErrorKind::DegreeMismatch, "composing permutations of different degree");
  Perm r = *this;
  for (std::size_t i = 0; i < degree_; ++i) r.images_[i] = images_[rhs.images_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r = *this;
  for (std::size_t i = 0; i < degree_; ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Perm Perm::pow(std::uint64_t e) const {
  Perm result(degree_);
  Perm base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < degree_; ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(degree_, false);
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t x = i; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::uint64_t Perm::order() const {
  std::uint64_t r = 1;
  for (int len : cycle_type()) r = std::lcm(r, static_cast<std::uint64_t>(len));
  return r;
}

std::uint64_t Perm::key() const noexcept {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < kMaxDegree; ++i) k |= static_cast<std::uint64_t>(images_[i]) << (4 * i);
  return k;
}

std::string Perm::to_string() const {
  std::string out;
  std::vector<bool> seen(degree_, false);
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    bool first = true;
    for (std::size_t x = i; !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::vector<Perm> parse_perm_list(std::string_view text, std::size_t degree) {
  std::vector<Perm> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(Perm::parse(text.substr(start, end - start), degree));
    start = end + 1;
  }
  return out;
}

std::string format_perm_list(std::span<const Perm> perms) {
  std::string out;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i) out += ';';
    out += perms[i].to_string();
  }
  return out;
}

// ---------------------------------------------------------------- PermGroup

PermGroup PermGroup::from_sorted(std::size_t degree, std::vector<Perm> elements, std::vector<Perm> gens) {
  auto d = std::make_shared<Data>();
  d->degree = degree;
  d->elements = std::move(elements);
  d->generators = std::move(gens);
  d->index.reserve(d->elements.size() * 2);
  for (std::size_t i = 0; i < d->elements.size(); ++i)
    d->index.emplace(d->elements[i].key(), static_cast<std::uint32_t>(i));
  PermGroup g;
  g.data_ = std::move(d);
  return g;
}

PermGroup PermGroup::generate(std::size_t degree, std::span<const Perm> gens, std::optional<std::size_t> limit) {
  const std::size_t cap = limit.value_or(max_group_elements());
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw Error(ErrorKind::DegreeMismatch, "generator " + g.to_string() + " has degree " +
                                                 std::to_string(g.degree()) + ", expected " + std::to_string(degree));
  Perm id(degree);
  std::vector<Perm> elements{id};
  std::unordered_set<std::uint64_t> seen{id.key()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      Perm next = elements[head] * g;
      if (seen.insert(next.key()).second) {
        elements.push_back(next);
        if (elements.size() > cap)
          throw Error(ErrorKind::ResourceLimit, "group closure exceeds " + std::to_string(cap) + " elements");
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return from_sorted(degree, std::move(elements), {gens.begin(), gens.end()});
}

PermGroup PermGroup::symmetric(std::size_t degree) {
  if (degree > kMaxDegree) throw Error(ErrorKind::BadParameters, "degree too large");
  const std::size_t cap = max_group_elements();
  std::uint64_t n_fact = 1;
  for (std::size_t i = 2; i <= degree; ++i) {
    n_fact *= i;
    if (n_fact > cap)
      throw Error(ErrorKind::ResourceLimit, "Sigma_" + std::to_string(degree) + " exceeds " + std::to_string(cap) +
                                                " elements");
  }
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Perm> elements;
  elements.reserve(n_fact);
  do {
    elements.push_back(Perm::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  std::vector<Perm> gens;
  if (degree >= 2) {
    gens.push_back(Perm::from_cycles(degree, {{0, 1}}));
    std::vector<int> cycle(degree);
    std::iota(cycle.begin(), cycle.end(), 0);
    if (degree > 2) gens.push_back(Perm::from_cycles(degree, {cycle}));
  }
  return from_sorted(degree, std::move(elements), std::move(gens));
}

PermGroup PermGroup::block_symmetric(std::size_t block_size, std::size_t count) {
  const std::size_t degree = block_size * count;
  std::vector<Perm> gens;
  for (std::size_t b = 0; b < count; ++b) {
    const int base = static_cast<int>(b * block_size);
    if (block_size >= 2) gens.push_back(Perm::from_cycles(degree, {{base, base + 1}}));
    if (block_size >= 3) {
      std::vector<int> cycle(block_size);
      std::iota(cycle.begin(), cycle.end(), base);
      gens.push_back(Perm::from_cycles(degree, {cycle}));
    }
  }
  return generate(degree, gens);
}

PermGroup PermGroup::from_subgroup_elements(std::size_t degree, std::vector<Perm> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (const auto& e : elements)
    if (e.degree() != degree) throw Error(ErrorKind::DegreeMismatch, "element degree differs from group degree");
  return from_sorted(degree, std::move(elements), {});
}

std::size_t PermGroup::degree() const noexcept { return data_ ? data_->degree : 0; }
std::size_t PermGroup::order() const noexcept { return data_ ? data_->elements.size() : 0; }

const std::vector<Perm>& PermGroup::elements() const noexcept {
  static const std::vector<Perm> empty;
  return data_ ? data_->elements : empty;
}

const std::vector<Perm>& PermGroup::generators() const noexcept {
  static const std::vector<Perm> empty;
  return data_ ? data_->generators : empty;
}

std::optional<std::size_t> PermGroup::index_of(const Perm& g) const {
  if (!data_ || g.degree() != data_->degree) return std::nullopt;
  auto it = data_->index.find(g.key());
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

bool PermGroup::contains(const Perm& g) const { return index_of(g).has_value(); }

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree() != other.degree()) return false;
  return std::all_of(elements().begin(), elements().end(), [&](const Perm& g) { return other.contains(g); });
}

bool PermGroup::is_symmetric() const noexcept {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= degree(); ++i) f *= i;
  return order() == f;
}

bool PermGroup::is_closed() const {
  const auto& els = elements();
  if (els.empty() || !els.front().is_identity()) return false;
  for (const auto& a : els) {
    if (!contains(a.inverse())) return false;
    for (const auto& b : els)
      if (!contains(a * b)) return false;
  }
  return true;
}

bool PermGroup::is_abelian() const {
  const auto& els = elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = i + 1; j < els.size(); ++j)
      if (els[i] * els[j] != els[j] * els[i]) return false;
  return true;
}

// ---------------------------------------------------------------- cosets

bool Coset::contains(const Perm& g) const { return subgroup.contains(representative.inverse() * g); }

Perm canonical_coset_representative(const Perm& g, const PermGroup& subgroup) {
  Perm best = g;
  for (const auto& h : subgroup.elements()) best = std::min(best, g * h);
  return best;
}

namespace {

void require_subgroup(const PermGroup& H, const PermGroup& G) {
  if (!H.is_subgroup_of(G)) throw Error(ErrorKind::NotSubgroup, "subgroup is not contained in the ambient group");
}

void require_members(const PermGroup& G, std::span<const Perm> S) {
  for (const auto& s : S)
    if (!G.contains(s)) throw Error(ErrorKind::NotInGroup, s.to_string() + " is not in the group");
}

}  // namespace

CosetSpace::CosetSpace(PermGroup ambient, PermGroup subgroup)
    : ambient_(std::move(ambient)), subgroup_(std::move(subgroup)) {
  require_subgroup(subgroup_, ambient_);
  constexpr auto kUnassigned = static_cast<std::uint32_t>(-1);
  const auto& els = ambient_.elements();
  coset_by_element_.assign(els.size(), kUnassigned);
  // Elements are visited in increasing order, so the first unassigned
  // element of a coset is its minimum.
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (coset_by_element_[i] != kUnassigned) continue;
    const auto idx = static_cast<std::uint32_t>(representatives_.size());
    representatives_.push_back(els[i]);
    for (const auto& h : subgroup_.elements()) coset_by_element_[*ambient_.index_of(els[i] * h)] = idx;
  }
}

std::size_t CosetSpace::coset_of(const Perm& g) const {
  auto pos = ambient_.index_of(g);
  if (!pos) throw Error(ErrorKind::NotInGroup, g.to_string() + " is not in the ambient group");
  return coset_by_element_[*pos];
}

std::vector<std::size_t> CosetSpace::fixed(std::span<const Perm> S) const {
  require_members(ambient_, S);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < representatives_.size(); ++i) {
    const Perm& g = representatives_[i];
    const Perm g_inv = g.inverse();
    bool ok = std::all_of(S.begin(), S.end(), [&](const Perm& s) { return subgroup_.contains(g_inv * s * g); });
    if (ok) out.push_back(i);
  }
  return out;
}

std::vector<CosetSpace::Orbit> CosetSpace::orbits(const PermGroup& C, std::span<const std::size_t> cosets) const {
  require_members(ambient_, C.elements());
  std::vector<std::size_t> sorted(cosets.begin(), cosets.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::unordered_map<std::size_t, bool> visited;
  for (auto c : sorted) visited.emplace(c, false);

  std::vector<Orbit> out;
  for (auto start : sorted) {
    if (visited.at(start)) continue;
    const Perm& g = representatives_[start];
    Orbit orbit{start, {}, {}};
    std::vector<Perm> stab;
    for (const auto& c : C.elements()) {
      auto image = coset_of(c * g);
      auto it = visited.find(image);
      if (it == visited.end())
        throw Error(ErrorKind::ActionNotClosed, "acting group moves a coset outside the given set");
      if (!it->second) {
        it->second = true;
        orbit.members.push_back(image);
      }
      if (image == start) stab.push_back(c);
    }
    std::sort(orbit.members.begin(), orbit.members.end());
    orbit.stabilizer = PermGroup::from_subgroup_elements(C.degree(), std::move(stab));
    out.push_back(std::move(orbit));
  }
  return out;
}

PermGroup centralizer(const PermGroup& ambient, std::span<const Perm> S) {
  require_members(ambient, S);
  std::vector<Perm> out;
  for (const auto& g : ambient.elements()) {
    bool ok = std::all_of(S.begin(), S.end(), [&](const Perm& s) { return g * s == s * g; });
    if (ok) out.push_back(g);
  }
  return PermGroup::from_subgroup_elements(ambient.degree(), std::move(out));
}

std::vector<Coset> left_cosets(const PermGroup& G, const PermGroup& H) {
  CosetSpace space(G, H);
  std::vector<Coset> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(space.coset(i));
  return out;
}

std::vector<Coset> fixed_cosets(const PermGroup& G, const PermGroup& H, std::span<const Perm> S) {
  require_members(G, S);
  CosetSpace space(G, H);
  std::vector<Coset> out;
  for (auto i : space.fixed(S)) out.push_back(space.coset(i));
  return out;
}

std::vector<CosetOrbit> coset_orbits(const PermGroup& C, std::span<const Coset> cosets) {
  std::vector<CosetOrbit> out;
  if (cosets.empty()) return out;
  const PermGroup& H = cosets.front().subgroup;
  std::vector<Perm> reps;
  for (const auto& c : cosets) reps.push_back(canonical_coset_representative(c.representative, H));
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  std::unordered_map<std::uint64_t, bool> visited;
  for (const auto& r : reps) visited.emplace(r.key(), false);

  for (const auto& start : reps) {
    if (visited.at(start.key())) continue;
    std::vector<Perm> stab;
    std::size_t size = 0;
    for (const auto& c : C.elements()) {
      Perm image = canonical_coset_representative(c * start, H);
      auto it = visited.find(image.key());
      if (it == visited.end())
        throw Error(ErrorKind::ActionNotClosed, "acting group moves a coset outside the given list");
      if (!it->second) {
        it->second = true;
        ++size;
      }
      if (image == start) stab.push_back(c);
    }
    // reps are processed in increasing order, so start is the orbit minimum.
    out.push_back(CosetOrbit{Coset{start, H}, PermGroup::from_subgroup_elements(C.degree(), std::move(stab)), size});
  }
  return out;
}

std::optional<Perm> conjugating_element(const PermGroup& G, std::span<const Perm> a, std::span<const Perm> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::BadParameters, "tuples have different lengths");
  require_members(G, a);
  require_members(G, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].cycle_type() != b[i].cycle_type()) return std::nullopt;
  for (const auto& g : G.elements()) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = (g * a[i] == b[i] * g);
    if (ok) return g;
  }
  return std::nullopt;
}

}  // namespace transchrome
