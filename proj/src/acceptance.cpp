#include "transchrome/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "transchrome/abelianp.hpp"
#include "transchrome/arith.hpp"
#include "transchrome/charfun.hpp"
#include "transchrome/decomp.hpp"
#include "transchrome/error.hpp"
#include "transchrome/fgl.hpp"
#include "transchrome/permcore.hpp"
#include "transchrome/zpsets.hpp"

namespace transchrome {

namespace {

struct Checker {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

std::string summary(const Checker& c, const std::string& what) {
  if (c.ok()) return std::to_string(c.checks) + " checks: " + what;
  std::string out = std::to_string(c.failures.size()) + " of " + std::to_string(c.checks) + " checks failed: ";
  for (std::size_t i = 0; i < c.failures.size() && i < 3; ++i) out += (i ? "; " : "") + c.failures[i];
  return out;
}

GenClassFunction random_function(const ClassIndexPtr& index, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 12);
  std::vector<Rational> values;
  for (std::size_t i = 0; i < index->size(); ++i) values.emplace_back(num(rng), den(rng));
  return GenClassFunction(index, std::move(values));
}

struct GroupPair {
  std::string name;
  unsigned p = 0, k = 0;
  PermGroup G, H;
};

std::vector<GroupPair> theorem_pairs() {
  const std::vector<Perm> four_cycle{Perm::parse("(0 1 2 3)", 4)};
  const std::vector<Perm> three_cycle{Perm::parse("(0 1 2)", 3)};
  return {
      {"(S4, S2xS2)", 2, 2, PermGroup::symmetric(4), PermGroup::block_symmetric(2, 2)},
      {"(S4, Z/4)", 2, 2, PermGroup::symmetric(4), PermGroup::generate(4, four_cycle)},
      {"(S3, A3)", 3, 1, PermGroup::symmetric(3), PermGroup::generate(3, three_cycle)},
      {"(S8, S4xS4)", 2, 3, PermGroup::symmetric(8), PermGroup::block_symmetric(4, 2)},
      {"(S9, S3^3)", 3, 2, PermGroup::symmetric(9), PermGroup::block_symmetric(3, 3)},
  };
}

// ---------------------------------------------------------------- criteria

std::string criterion1(Checker& c, std::uint64_t) {
  const auto n = enumerate_hom_classes(2, 1, 2).size();
  c.expect(n == 4, "(2,1,2) gave " + std::to_string(n) + " classes");
  for (unsigned p : {2u, 3u, 5u}) {
    const auto m = enumerate_hom_classes(p, 1, 1).size();
    c.expect(m == 2, "(" + std::to_string(p) + ",1,1) gave " + std::to_string(m) + " classes");
  }
  return "4 classes for (2,1,2); 2 classes for (p,1,1), p = 2, 3, 5";
}

std::size_t count_of_order(const PermGroup& G, std::uint64_t order) {
  return static_cast<std::size_t>(
      std::count_if(G.elements().begin(), G.elements().end(), [&](const Perm& g) { return g.order() == order; }));
}

std::string criterion2(Checker& c, std::uint64_t) {
  const Lambda lambda(2, 1, 2);
  const PermGroup S4 = PermGroup::symmetric(4);
  const auto classes = enumerate_hom_classes(2, 1, 2);
  std::vector<std::uint64_t> orders;
  for (const auto& hc : classes) orders.push_back(centralizer_order(hc));
  c.expect(orders == std::vector<std::uint64_t>{24, 4, 8, 4}, "centralizer orders are not (24, 4, 8, 4)");

  // Representatives in the order of the class list: e, (01), (01)(23), (0123).
  const char* reps[] = {"()", "(0 1)", "(0 1)(2 3)", "(0 1 2 3)"};
  for (std::size_t i = 0; i < 4 && i < classes.size(); ++i) {
    const std::vector<Perm> alpha{Perm::parse(reps[i], 4)};
    c.expect(classify(CommutingTuple{4, alpha}, lambda) == classes[i], std::string("class ") + std::to_string(i) +
                                                                         " is not the class of " + reps[i]);
    const PermGroup C = centralizer(S4, alpha);
    c.expect(C.order() == orders[i], std::string("|C(") + reps[i] + ")| = " + std::to_string(C.order()));
    switch (i) {
      case 0:
        c.expect(C == S4, "C(e) is not S4");
        break;
      case 1:  // Klein four: abelian, every element of order <= 2
        c.expect(C.is_abelian() && count_of_order(C, 2) == 3, "C((01)) is not a Klein four group");
        break;
      case 2:  // dihedral of order 8: non-abelian with five involutions
        c.expect(!C.is_abelian() && count_of_order(C, 2) == 5 && count_of_order(C, 4) == 2,
                 "C((01)(23)) is not dihedral of order 8");
        break;
      case 3:
        c.expect(count_of_order(C, 4) == 2 && C.is_abelian(), "C((0123)) is not cyclic of order 4");
        break;
    }
  }
  return "orders (24, 4, 8, 4); S4, Klein four, D8, Z/4";
}

std::string criterion3(Checker& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t functions = 0;
  for (const auto& pair : theorem_pairs()) {
    for (unsigned h : {1u, 2u}) {
      const Lambda lambda(pair.p, h, pair.k);
      const Induction ind(ClassIndex::build(pair.H, lambda), ClassIndex::build(pair.G, lambda));
      for (int trial = 0; trial < 20; ++trial) {
        const auto chi = random_function(ind.subgroup_index(), rng);
        c.expect(ind.induce(chi) == ind.induce_grouped(chi),
                 pair.name + " h=" + std::to_string(h) + " trial " + std::to_string(trial));
        ++functions;
      }
    }
  }
  return std::to_string(functions) + " random class functions over 5 pairs, h = 1, 2";
}

std::string criterion4(Checker& c, std::uint64_t) {
  std::size_t classes = 0;
  for (const auto& pair : theorem_pairs()) {
    for (unsigned h : {1u, 2u}) {
      const Lambda lambda(pair.p, h, pair.k);
      const auto H_index = ClassIndex::build(pair.H, lambda);
      const auto G_index = ClassIndex::build(pair.G, lambda);
      const Induction ind(H_index, G_index);
      // i_*: H-classes -> G-classes, computed by classifying each H-class in G.
      std::vector<std::set<std::string>> preimage(G_index->size());
      for (const auto& entry : H_index->classes())
        preimage[G_index->position_of(entry.representative)].insert(entry.id);
      for (std::size_t a = 0; a < G_index->size(); ++a) {
        const auto& datum = ind.datum(a);
        std::set<std::string> hit;
        for (const auto& o : datum.orbits) hit.insert(o.subgroup_class);
        c.expect(datum.orbits.size() == preimage[a].size() && hit == preimage[a],
                 pair.name + " h=" + std::to_string(h) + " class " + datum.alpha_class + ": " +
                     std::to_string(datum.orbits.size()) + " orbits, " + std::to_string(preimage[a].size()) +
                     " preimages");
        ++classes;
      }
    }
  }
  return std::to_string(classes) + " classes: orbits of C(im alpha) on fixed cosets match i_*^-1([alpha])";
}

std::string criterion5(Checker& c, std::uint64_t) {
  const unsigned cases[][3] = {{2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 2, 1}, {2, 2, 2}, {3, 1, 1}, {3, 1, 2}, {3, 2, 1}};
  std::size_t index_one_differs = 0, classes = 0;
  for (const auto& [p, h, k] : cases) {
    const std::string name = "(" + std::to_string(p) + "," + std::to_string(h) + "," + std::to_string(k) + ")";
    try {
      const auto report = decompose(p, h + 1, 1, k);
      c.expect(report.nontrivial_count() == sub_leq_count(h, p, k),
               name + ": " + std::to_string(report.nontrivial_count()) + " non-trivial components");
      for (const auto& rec : report.components)
        c.expect(rec.ideal_trivial == !rec.isotypic, name + ": criteria disagree on " + rec.hom_class.id());

      // The stricter "some orbit of index 1" rule, for the record.
      const auto degree = static_cast<std::size_t>(ipow(p, k));
      const Lambda lambda(p, h, k);
      const Induction ind(ClassIndex::build(PermGroup::block_symmetric(degree / p, p), lambda),
                          ClassIndex::build(PermGroup::symmetric(degree), lambda));
      for (std::size_t i = 0; i < report.components.size(); ++i) {
        const auto& orbits = ind.datum(i).orbits;
        const bool index_one = std::any_of(orbits.begin(), orbits.end(), [](const TransferOrbit& o) { return o.index == 1; });
        if (index_one != report.components[i].ideal_trivial) ++index_one_differs;
        if (index_one) c.expect(report.components[i].ideal_trivial, name + ": index-1 orbit on a non-trivial class");
        ++classes;
      }
    } catch (const Error& e) {
      c.expect(false, name + ": " + e.what());
    }
  }
  return "8 cases, " + std::to_string(classes) + " classes; coprime-index rule equals the diagonal rule (index-1 rule differs on " +
         std::to_string(index_one_differs) + ")";
}

struct DegreeCase {
  unsigned p, n, t, k;
};
const DegreeCase kDegreeCases[] = {{2, 2, 1, 1}, {2, 2, 1, 2}, {3, 2, 1, 1}, {2, 3, 1, 1}, {2, 3, 2, 1}};

std::uint64_t brute_count(unsigned h, unsigned p, unsigned m) {
  return enumerate_subgroups(h, p, m, ipow(p, m)).size();
}

std::string criterion6(Checker& c, std::uint64_t) {
  for (const auto& [p, n, t, k] : kDegreeCases) {
    const std::string name =
        "(" + std::to_string(p) + "," + std::to_string(n) + "," + std::to_string(t) + "," + std::to_string(k) + ")";
    const auto report = decompose(p, n, t, k);
    const auto d = count_sublattices(n, p, k);
    c.expect(report.rank_sum == d, name + ": fiber ranks add up to " + std::to_string(report.rank_sum));
    c.expect(d == brute_count(n, p, k), name + ": closed form differs from enumeration");
  }
  // spot values: h, p, m, expected
  const unsigned spots[][4] = {{2, 2, 1, 3}, {2, 2, 2, 7}, {2, 3, 2, 13}, {3, 3, 1, 13}, {3, 2, 1, 7}};
  for (const auto& [h, p, m, expected] : spots) {
    c.expect(count_sublattices(h, p, m) == expected && brute_count(h, p, m) == expected,
             "spot value h=" + std::to_string(h) + " p=" + std::to_string(p) + " m=" + std::to_string(m));
  }
  return "5 reports; spot values 3, 7, 13, 13, 7 by formula and enumeration";
}

std::string criterion7(Checker& c, std::uint64_t) {
  for (const auto& [p, n, t, k] : kDegreeCases) {
    const std::string name =
        "(" + std::to_string(p) + "," + std::to_string(n) + "," + std::to_string(t) + "," + std::to_string(k) + ")";
    const auto report = decompose(p, n, t, k);
    const auto check = verify_triangle(report);
    c.expect(check.ok, name + ": " + check.diagnostic);
    const auto full = ipow(p, k);
    for (const auto& rec : report.components) {
      if (rec.ideal_trivial) continue;
      if (rec.L.order() == 1)
        c.expect(rec.fiber_rank == count_sublattices(t, p, k), name + ": fiber over e");
      if (rec.L.order() == full)
        c.expect(rec.fiber_rank == ipow(p, k * t), name + ": fiber over a subgroup of order p^k");
    }
  }
  return "triangle verified on 5 reports; fiber(e) = Sub_k count of height t, fiber(order p^k) = p^{kt}";
}

std::string criterion8(Checker& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct Case {
    std::string name;
    unsigned p, k;
    PermGroup G, H;
  };
  std::vector<Case> cases{{"(S4, S2xS2)", 2, 2, PermGroup::symmetric(4), PermGroup::block_symmetric(2, 2)},
                          {"(S8, S4xS4)", 2, 3, PermGroup::symmetric(8), PermGroup::block_symmetric(4, 2)},
                          {"(S9, S3^3)", 3, 2, PermGroup::symmetric(9), PermGroup::block_symmetric(3, 3)}};
  for (unsigned p : {2u, 3u, 5u})
    cases.push_back({"(S" + std::to_string(p) + ", e)", p, 1, PermGroup::symmetric(p), PermGroup::block_symmetric(1, p)});
  for (const auto& cs : cases) {
    const Lambda lambda(cs.p, 1, cs.k);
    const auto degree = static_cast<int>(ipow(cs.p, cs.k));
    std::vector<int> cycle(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) cycle[static_cast<std::size_t>(i)] = i;
    const std::vector<Perm> alpha{Perm::from_cycles(static_cast<std::size_t>(degree), {cycle})};

    const Induction ind(ClassIndex::build(cs.H, lambda), ClassIndex::build(cs.G, lambda));
    const auto pos = ind.group_classes().position_of(alpha);
    const auto& datum = ind.datum(pos);
    c.expect(datum.empty() && datum.fixed_coset_count == 0, cs.name + ": transfer datum of the cycle is not empty");
    const auto one = GenClassFunction::constant(ind.subgroup_index(), Rational(1));
    const auto chi = random_function(ind.subgroup_index(), rng);
    c.expect(ind.induce(one).at(pos) == 0 && ind.induce(chi).at(pos) == 0 && ind.induce_grouped(chi).at(pos) == 0,
             cs.name + ": induced value at the cycle is non-zero");
  }
  return "p^k-cycle classes in S4, S8, S9, S2, S3, S5: empty datum, induced values 0";
}

std::string criterion9(Checker& c, std::uint64_t) {
  const unsigned ambients[][3] = {{2, 2, 2}, {3, 2, 1}, {1, 3, 2}};  // h, p, K
  std::size_t total = 0;
  for (const auto& [h, p, K] : ambients) {
    const auto full = ipow(p, K * h);
    for (unsigned m = 0; m <= K * h; ++m) {
      for (const auto& U : enumerate_subgroups(h, p, K, ipow(p, m))) {
        const auto perp = annihilator(U);
        c.expect(annihilator(perp) == U, "annihilator is not an involution");
        c.expect(U.order() * perp.order() == full, "|U| |U^perp| != p^{Kh}");
        ++total;
      }
    }
  }
  return std::to_string(total) + " subgroups of (Z/4)^2, (Z/2)^3, Z/9";
}

std::string criterion10(Checker& c, std::uint64_t) {
  struct Case {
    std::string name;
    FGLContext ctx;
    unsigned k;
  };
  std::vector<Case> cases;
  const auto mult = FGLContext::multiplicative(2, 4, 17);
  cases.push_back({"multiplicative p=2 k=1", mult, 1});
  cases.push_back({"multiplicative p=2 k=2", mult, 2});
  cases.push_back({"height 2 p=2 k=1", FGLContext::build_ptypical(2, 2, 4, 3, 17), 1});
  cases.push_back({"height 2 p=3 k=1", FGLContext::build_ptypical(3, 2, 3, 3, 82), 1});
  for (const auto& cs : cases) {
    const auto p = cs.ctx.ring()->p();
    const auto expected = ipow(p, cs.k * cs.ctx.height());
    c.expect(torsion_rank(cs.ctx, cs.k) == expected, cs.name + ": torsion rank is not p^{kn}");
    const auto g = n_series(cs.ctx, ipow(p, cs.k));
    const auto w = weierstrass_prep(cs.ctx, g, static_cast<std::size_t>(expected));
    bool distinguished = w.f.degree() == static_cast<long>(expected) && w.f[expected] == RingElem(cs.ctx.ring(), 1);
    for (std::size_t e = 0; e < expected; ++e) distinguished = distinguished && w.f[e].in_maximal_ideal();
    c.expect(distinguished, cs.name + ": f is not a distinguished polynomial");
    c.expect(w.u[0].is_unit(), cs.name + ": u is not a unit");
    c.expect(w.f * w.u == g, cs.name + ": f u != [p^k](x)");
  }
  return "degrees 2, 4, 4, 9; f u = [p^k](x) below D (D = 17, 17, 17, 82; a = 4, 4, 4, 3; b = 1, 1, 3, 3)";
}

std::string criterion11(Checker& c, std::uint64_t) {
  std::size_t triples = 0;
  for (unsigned h = 1; h <= 13; ++h) {
    for (unsigned p = 2; p <= 10'000; ++p) {
      if (!is_prime(p)) continue;
      auto ph = checked_pow(p, h);
      if (!ph || *ph > 10'000) break;
      for (unsigned m = 1;; ++m) {
        auto size = checked_pow(p, m * h);
        if (!size || *size > 10'000) break;
        const auto formula = count_sublattices(h, p, m);
        const auto brute = brute_count(h, p, m);
        c.expect(formula == brute, "h=" + std::to_string(h) + " p=" + std::to_string(p) + " m=" + std::to_string(m) +
                                       ": formula " + std::to_string(formula) + ", enumeration " +
                                       std::to_string(brute));
        ++triples;
      }
    }
  }
  return std::to_string(triples) + " triples (h, p, m), m >= 1, p^{mh} <= 10^4";
}

using CriterionFn = std::string (*)(Checker&, std::uint64_t);

struct Entry {
  const char* title;
  CriterionFn fn;
};

const Entry kCriteria[kCriterionCount] = {
    {"hom-class counts", criterion1},
    {"centralizers in S4", criterion2},
    {"induction formula instances", criterion3},
    {"fixed-coset orbits vs preimages", criterion4},
    {"component-count lemma", criterion5},
    {"degree accounting", criterion6},
    {"triangle theorem", criterion7},
    {"zero transfer for p^k-cycles", criterion8},
    {"annihilator duality", criterion9},
    {"Weierstrass degree", criterion10},
    {"sublattice formula vs enumeration", criterion11},
};

}  // namespace

CriterionResult run_criterion(unsigned number, std::uint64_t seed) {
  if (number < 1 || number > kCriterionCount) throw Error(ErrorKind::BadParameters, "no criterion " + std::to_string(number));
  const auto& entry = kCriteria[number - 1];
  CriterionResult r;
  r.number = number;
  r.title = entry.title;
  const auto start = std::chrono::steady_clock::now();
  Checker checker;
  try {
    r.detail = entry.fn(checker, seed);
    r.passed = checker.ok();
    r.detail = summary(checker, r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (unsigned i = 1; i <= kCriterionCount; ++i) {
    out.push_back(run_criterion(i, seed));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "criterion %2u  %s  %-34s (%.2f s)  ", r.number, r.passed ? "PASS" : "FAIL",
                r.title.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace transchrome
