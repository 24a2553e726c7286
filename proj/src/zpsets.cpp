#include "transchrome/zpsets.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "transchrome/arith.hpp"
#include "transchrome/error.hpp"

namespace transchrome {

namespace {
constexpr std::size_t kMaxClasses = 200'000;
constexpr std::size_t kMaxFixedCosets = 100'000;
}  // namespace

std::strong_ordering compare(const OrbitType& a, const OrbitType& b) {
  if (auto c = a.kernel.index() <=> b.kernel.index(); c != 0) return c;
  if (auto c = a.kernel.elements() <=> b.kernel.elements(); c != 0) return c;
  return b.multiplicity <=> a.multiplicity;
}

// ---------------------------------------------------------------- HomClass

HomClass::HomClass(Lambda lambda, std::vector<OrbitType> orbit_types) : lambda_(std::move(lambda)) {
  std::sort(orbit_types.begin(), orbit_types.end(),
            [](const OrbitType& a, const OrbitType& b) { return a.kernel < b.kernel; });
  for (auto& t : orbit_types) {
    if (t.multiplicity == 0) continue;
    if (!orbit_types_.empty() && orbit_types_.back().kernel == t.kernel)
      orbit_types_.back().multiplicity += t.multiplicity;
    else
      orbit_types_.push_back(std::move(t));
  }
  std::sort(orbit_types_.begin(), orbit_types_.end(),
            [](const OrbitType& a, const OrbitType& b) { return compare(a, b) < 0; });
}

std::size_t HomClass::degree() const noexcept {
  std::size_t d = 0;
  for (const auto& t : orbit_types_) d += t.multiplicity * t.orbit_size();
  return d;
}

std::string HomClass::id() const {
  std::string out = "p" + std::to_string(lambda_.p()) + ".k" + std::to_string(lambda_.exponent()) + ".h" +
                    std::to_string(lambda_.rank()) + ":[";
  for (std::size_t i = 0; i < orbit_types_.size(); ++i) {
    if (i) out += ';';
    const auto& t = orbit_types_[i];
    out += "(U<" + t.kernel.generators_string() + ">:idx" + std::to_string(t.orbit_size()) + ",m" +
           std::to_string(t.multiplicity) + ")";
  }
  return out + "]";
}

HomClass HomClass::parse_id(std::string_view id) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ParseError, "bad class id \"" + std::string(id) + "\": " + why);
  };
  std::size_t pos = 0;
  auto number = [&] {
    unsigned v = 0;
    std::size_t start = pos;
    while (pos < id.size() && std::isdigit(static_cast<unsigned char>(id[pos]))) v = v * 10 + (id[pos++] - '0');
    if (pos == start) throw fail("expected a number");
    return v;
  };
  auto expect = [&](std::string_view lit) {
    if (id.substr(pos, lit.size()) != lit) throw fail("expected \"" + std::string(lit) + "\"");
    pos += lit.size();
  };
  expect("p");
  const unsigned p = number();
  expect(".k");
  const unsigned k = number();
  expect(".h");
  const unsigned h = number();
  expect(":[");
  Lambda lambda(p, h, k);
  std::vector<OrbitType> types;
  while (pos < id.size() && id[pos] != ']') {
    if (!types.empty()) expect(";");
    expect("(U<");
    auto close = id.find('>', pos);
    if (close == std::string_view::npos) throw fail("unterminated generator list");
    auto kernel = AbSubgroup::parse_generators(lambda, id.substr(pos, close - pos));
    pos = close + 1;
    expect(":idx");
    const unsigned idx = number();
    expect(",m");
    const unsigned mult = number();
    expect(")");
    if (kernel.index() != idx) throw fail("index does not match the kernel");
    types.push_back(OrbitType{std::move(kernel), mult});
  }
  expect("]");
  if (pos != id.size()) throw fail("trailing characters");
  HomClass hc(std::move(lambda), std::move(types));
  if (hc.id() != id) throw fail("not in canonical form");
  return hc;
}

std::strong_ordering operator<=>(const HomClass& a, const HomClass& b) {
  if (auto c = a.lambda_.p() <=> b.lambda_.p(); c != 0) return c;
  if (auto c = a.lambda_.exponent() <=> b.lambda_.exponent(); c != 0) return c;
  if (auto c = a.lambda_.rank() <=> b.lambda_.rank(); c != 0) return c;
  const auto& x = a.orbit_types_;
  const auto& y = b.orbit_types_;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
    if (auto c = compare(x[i], y[i]); c != 0) return c;
  return x.size() <=> y.size();
}

// ---------------------------------------------------------------- enumeration

std::vector<AbSubgroup> transitive_kernels(const Lambda& lambda) {
  // Index-p^j subgroups are the annihilators of the order-p^j subgroups.
  std::vector<AbSubgroup> out;
  for (unsigned j = 0; j <= lambda.exponent(); ++j) {
    auto dual = enumerate_subgroups(lambda.rank(), lambda.p(), lambda.exponent(), ipow(lambda.p(), j));
    std::vector<AbSubgroup> level;
    level.reserve(dual.size());
    for (const auto& V : dual) level.push_back(annihilator(V));
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<HomClass> enumerate_hom_classes(unsigned p, unsigned h, unsigned k) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (h == 0) throw Error(ErrorKind::BadParameters, "rank h must be at least 1");
  auto points = checked_pow(p, k);
  auto lambda_order = checked_pow(p, k * h);
  if (!points || *points > 16 || !lambda_order || *lambda_order > 10'000)
    throw Error(ErrorKind::ResourceLimit, "hom-class enumeration needs p^k <= 16 and p^{kh} <= 10^4");

  Lambda lambda(p, h, k);
  const auto kernels = transitive_kernels(lambda);
  std::vector<HomClass> out;
  std::vector<OrbitType> current;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t remaining) {
    if (remaining == 0) {
      out.emplace_back(lambda, current);
      if (out.size() > kMaxClasses) throw Error(ErrorKind::ResourceLimit, "too many hom classes");
      return;
    }
    if (i == kernels.size()) return;
    const auto size = kernels[i].index();
    for (unsigned mult = static_cast<unsigned>(remaining / size); mult > 0; --mult) {
      current.push_back(OrbitType{kernels[i], mult});
      rec(i + 1, remaining - mult * size);
      current.pop_back();
    }
    rec(i + 1, remaining);
  };
  rec(0, *points);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- realize / classify

namespace {

/// Coset label of every element of Lambda modulo U, labels assigned in
/// order of each coset's smallest element.
std::vector<std::uint32_t> coset_labels(const Lambda& lambda, const AbSubgroup& U) {
  constexpr auto kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(lambda.order(), kNone);
  std::uint32_t next = 0;
  for (std::uint32_t x = 0; x < lambda.order(); ++x) {
    if (label[x] != kNone) continue;
    for (auto u : U.elements()) label[lambda.add(x, u)] = next;
    ++next;
  }
  return label;
}

struct Layout {
  std::size_t degree = 0;
  // first point of copy c of type i
  std::vector<std::vector<std::size_t>> offsets;
};

Layout layout_of(const HomClass& hc) {
  Layout l;
  for (const auto& t : hc.orbit_types()) {
    std::vector<std::size_t> offs;
    for (unsigned c = 0; c < t.multiplicity; ++c) {
      offs.push_back(l.degree);
      l.degree += t.orbit_size();
    }
    l.offsets.push_back(std::move(offs));
  }
  return l;
}

std::vector<std::vector<std::size_t>> orbits_of(std::span<const Perm> perms, std::size_t degree) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(degree, false);
  for (std::size_t x = 0; x < degree; ++x) {
    if (seen[x]) continue;
    std::vector<std::size_t> orbit{x};
    seen[x] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const auto& s : perms) {
        auto y = static_cast<std::size_t>(s[orbit[head]]);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace

CommutingTuple realize(const HomClass& hc) {
  const Lambda& lambda = hc.lambda();
  const Layout layout = layout_of(hc);
  std::vector<std::vector<int>> images(lambda.rank(), std::vector<int>(layout.degree));
  for (std::size_t i = 0; i < hc.orbit_types().size(); ++i) {
    const auto& kernel = hc.orbit_types()[i].kernel;
    auto label = coset_labels(lambda, kernel);
    // smallest element of each coset
    std::vector<std::uint32_t> rep(kernel.index(), 0);
    std::vector<bool> have(kernel.index(), false);
    for (std::uint32_t x = 0; x < lambda.order(); ++x)
      if (!have[label[x]]) {
        have[label[x]] = true;
        rep[label[x]] = x;
      }
    for (unsigned j = 0; j < lambda.rank(); ++j) {
      const auto e = lambda.basis(j);
      for (auto off : layout.offsets[i])
        for (std::uint32_t c = 0; c < kernel.index(); ++c)
          images[j][off + c] = static_cast<int>(off + label[lambda.add(rep[c], e)]);
    }
  }
  CommutingTuple t{layout.degree, {}};
  for (const auto& im : images) t.perms.push_back(Perm::from_images(im));
  return t;
}

HomClass classify_action(std::span<const Perm> perms, const Lambda& lambda) {
  if (perms.size() != lambda.rank())
    throw Error(ErrorKind::BadParameters, "tuple length differs from the rank of Lambda");
  const std::size_t degree = perms.empty() ? 0 : perms.front().degree();
  for (const auto& s : perms)
    if (s.degree() != degree) throw Error(ErrorKind::DegreeMismatch, "tuple entries have different degrees");
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = i + 1; j < perms.size(); ++j)
      if (perms[i] * perms[j] != perms[j] * perms[i])
        throw Error(ErrorKind::NotCommuting, perms[i].to_string() + " and " + perms[j].to_string() + " do not commute");
  for (const auto& s : perms)
    if (!s.pow(lambda.modulus()).is_identity())
      throw Error(ErrorKind::OrderNotPPower, s.to_string() + " has order not dividing " + std::to_string(lambda.modulus()));

  // powers[i][c] = perms[i]^c
  std::vector<std::vector<Perm>> powers(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    Perm cur(degree);
    for (std::uint32_t c = 0; c < lambda.modulus(); ++c) {
      powers[i].push_back(cur);
      cur = cur * perms[i];
    }
  }
  std::vector<OrbitType> types;
  for (const auto& orbit : orbits_of(perms, degree)) {
    const auto x = static_cast<int>(orbit.front());
    std::vector<std::uint32_t> kernel;
    for (std::uint32_t code = 0; code < lambda.order(); ++code) {
      auto c = lambda.coords(code);
      int y = x;
      for (std::size_t i = 0; i < c.size(); ++i) y = powers[i][c[i]][y];
      if (y == x) kernel.push_back(code);
    }
    types.push_back(OrbitType{AbSubgroup::from_sorted_elements(lambda, std::move(kernel)), 1});
  }
  return HomClass(lambda, std::move(types));
}

HomClass classify(const CommutingTuple& t, const Lambda& lambda) {
  if (t.degree != lambda.modulus())
    throw Error(ErrorKind::DegreeMismatch, "tuple degree " + std::to_string(t.degree) + " is not p^k = " +
                                               std::to_string(lambda.modulus()));
  for (const auto& s : t.perms)
    if (s.degree() != t.degree) throw Error(ErrorKind::DegreeMismatch, "tuple entry has the wrong degree");
  return classify_action(t.perms, lambda);
}

// ---------------------------------------------------------------- invariants

std::uint64_t centralizer_order(const HomClass& hc) {
  std::uint64_t r = 1;
  for (const auto& t : hc.orbit_types())
    r = checked_mul(r, checked_mul(ipow(t.orbit_size(), t.multiplicity), factorial(t.multiplicity)));
  return r;
}

std::vector<Perm> centralizer_generators(const HomClass& hc) {
  const auto tuple = realize(hc);
  const Layout layout = layout_of(hc);
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < hc.orbit_types().size(); ++i) {
    const auto size = hc.orbit_types()[i].orbit_size();
    const auto& offs = layout.offsets[i];
    // Lambda/U acting on the first copy alone.
    for (const auto& s : tuple.perms) {
      std::vector<int> im(layout.degree);
      std::iota(im.begin(), im.end(), 0);
      for (std::size_t c = 0; c < size; ++c) im[offs[0] + c] = s[offs[0] + c];
      Perm g = Perm::from_images(im);
      if (!g.is_identity()) gens.push_back(g);
    }
    // Permuting copies: a transposition and a full cycle of copies.
    auto copy_perm = [&](const std::vector<std::size_t>& target) {
      std::vector<int> im(layout.degree);
      std::iota(im.begin(), im.end(), 0);
      for (std::size_t j = 0; j < offs.size(); ++j)
        for (std::size_t c = 0; c < size; ++c) im[offs[j] + c] = static_cast<int>(offs[target[j]] + c);
      return Perm::from_images(im);
    };
    if (offs.size() >= 2) {
      std::vector<std::size_t> swap(offs.size()), cycle(offs.size());
      std::iota(swap.begin(), swap.end(), 0);
      std::swap(swap[0], swap[1]);
      for (std::size_t j = 0; j < offs.size(); ++j) cycle[j] = (j + 1) % offs.size();
      gens.push_back(copy_perm(swap));
      if (offs.size() > 2) gens.push_back(copy_perm(cycle));
    }
  }
  return gens;
}

unsigned minimal_level(const HomClass& hc) {
  unsigned m = 0;
  for (const auto& t : hc.orbit_types()) m = std::max(m, *exact_log(t.orbit_size(), hc.lambda().p()));
  return m;
}

bool is_isotypic(const HomClass& hc) { return hc.orbit_types().size() == 1; }

AbSubgroup dual_image(const HomClass& hc) {
  AbSubgroup ker = AbSubgroup::full(hc.lambda());
  for (const auto& t : hc.orbit_types()) ker = intersect(ker, t.kernel);
  return annihilator(ker);
}

// ---------------------------------------------------------------- block fibers

namespace {

using Partition = std::vector<std::uint8_t>;  // block index of each point

std::vector<Partition> stable_partitions(const CommutingTuple& alpha, std::size_t block_size, std::size_t count) {
  const auto orbits = orbits_of(alpha.perms, alpha.degree);
  std::vector<Partition> out;
  Partition current(alpha.degree, 0);
  std::vector<std::size_t> room(count, block_size);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == orbits.size()) {
      out.push_back(current);
      if (out.size() > kMaxFixedCosets) throw Error(ErrorKind::ResourceLimit, "more than 10^5 fixed cosets");
      return;
    }
    for (std::size_t b = 0; b < count; ++b) {
      if (room[b] < orbits[i].size()) continue;
      room[b] -= orbits[i].size();
      for (auto x : orbits[i]) current[x] = static_cast<std::uint8_t>(b);
      rec(i + 1);
      room[b] += orbits[i].size();
    }
  };
  rec(0);
  return out;
}

void check_block(const HomClass& hc, BlockSpec block) {
  const auto block_size = ipow(hc.lambda().p(), block.m);
  if (block.count == 0 || block_size * block.count != hc.degree())
    throw Error(ErrorKind::BadParameters, "block spec does not tile the points");
}

}  // namespace

std::size_t count_fixed_block_partitions(const HomClass& hc, BlockSpec block) {
  check_block(hc, block);
  return stable_partitions(realize(hc), ipow(hc.lambda().p(), block.m), block.count).size();
}

std::vector<FiberOrbit> coset_fiber(const HomClass& hc, BlockSpec block) {
  check_block(hc, block);
  const std::size_t block_size = ipow(hc.lambda().p(), block.m);
  const auto alpha = realize(hc);
  const auto partitions = stable_partitions(alpha, block_size, block.count);
  std::map<Partition, std::size_t> position;
  for (std::size_t i = 0; i < partitions.size(); ++i) position.emplace(partitions[i], i);

  // Minimal coset representative: block j's points map increasingly onto P_j.
  auto coset_rep = [&](const Partition& part) {
    std::vector<int> im(alpha.degree);
    std::vector<std::size_t> fill(block.count, 0);
    for (std::size_t x = 0; x < alpha.degree; ++x) {
      auto b = part[x];
      im[b * block_size + fill[b]++] = static_cast<int>(x);
    }
    return Perm::from_images(im);
  };

  const auto gens = centralizer_generators(hc);
  const auto c_order = centralizer_order(hc);
  std::vector<bool> seen(partitions.size(), false);
  std::vector<FiberOrbit> out;
  std::set<std::vector<HomClass>> distinct;
  for (std::size_t start = 0; start < partitions.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> orbit{start};
    seen[start] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const auto& part = partitions[orbit[head]];
      for (const auto& c : gens) {
        Partition moved(alpha.degree);
        for (std::size_t x = 0; x < alpha.degree; ++x) moved[c[x]] = part[x];
        auto it = position.find(moved);
        if (it == position.end())
          throw Error(ErrorKind::ActionNotClosed, "centralizer moves a stable partition to an unstable one");
        if (!seen[it->second]) {
          seen[it->second] = true;
          orbit.push_back(it->second);
        }
      }
    }
    Perm best = coset_rep(partitions[orbit.front()]);
    for (auto i : orbit) best = std::min(best, coset_rep(partitions[i]));

    FiberOrbit rec;
    rec.coset_representative = best;
    rec.orbit_size = orbit.size();
    rec.stabilizer_order = c_order / orbit.size();
    const Perm g_inv = best.inverse();
    for (std::size_t b = 0; b < block.count; ++b) {
      std::vector<Perm> restricted;
      for (const auto& s : alpha.perms) {
        Perm conj = g_inv * s * best;
        std::vector<int> im(block_size);
        for (std::size_t r = 0; r < block_size; ++r) im[r] = conj[b * block_size + r] - static_cast<int>(b * block_size);
        restricted.push_back(Perm::from_images(im));
      }
      rec.block_classes.push_back(classify_action(restricted, hc.lambda()));
    }
    distinct.insert(rec.block_classes);
    out.push_back(std::move(rec));
  }
  if (distinct.size() != out.size())
    throw Error(ErrorKind::InternalMismatch, "two centralizer orbits of fixed cosets share a block class");
  std::sort(out.begin(), out.end(),
            [](const FiberOrbit& a, const FiberOrbit& b) { return a.coset_representative < b.coset_representative; });
  return out;
}

}  // namespace transchrome
