#include "transchrome/decomp.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "transchrome/arith.hpp"
#include "transchrome/charfun.hpp"
#include "transchrome/error.hpp"
#include "transchrome/permcore.hpp"

namespace transchrome {

namespace {

constexpr const char* kConvention = "geometric-point-count";

void check_parameters(unsigned p, unsigned n, unsigned t, unsigned k) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParameters, std::to_string(p) + " is not prime");
  if (t >= n) throw Error(ErrorKind::BadParameters, "need 0 <= t < n");
  if (k == 0) throw Error(ErrorKind::BadParameters, "need k >= 1");
  auto degree = checked_pow(p, k);
  if (!degree || *degree > 9) throw Error(ErrorKind::ResourceLimit, "decompose needs p^k <= 9");
  if (n - t > 3) throw Error(ErrorKind::ResourceLimit, "decompose needs n - t <= 3");
}

/// Subgroups of (Z/p^k)^h that the non-trivial components should hit.
std::vector<AbSubgroup> triangle_targets(unsigned p, unsigned h, unsigned k, bool t_is_zero) {
  std::vector<AbSubgroup> out;
  for (unsigned m = t_is_zero ? k : 0; m <= k; ++m)
    for (auto& U : enumerate_subgroups(h, p, k, ipow(p, m))) out.push_back(std::move(U));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t DecompositionReport::nontrivial_count() const {
  return static_cast<std::size_t>(
      std::count_if(components.begin(), components.end(), [](const ComponentRecord& c) { return !c.ideal_trivial; }));
}

std::uint64_t fiber_rank(const AbSubgroup& L, unsigned p, unsigned n, unsigned t, unsigned k) {
  if (t >= n) throw Error(ErrorKind::BadParameters, "need 0 <= t < n");
  if (!(L.ambient() == HomocyclicGroup(p, n - t, k)))
    throw Error(ErrorKind::BadParameters, "L must be a subgroup of (Z/p^k)^{n-t}");
  if (L.order() > ipow(p, k)) throw Error(ErrorKind::BadParameters, "L has order above p^k");
  std::uint64_t count = 0;
  for (const auto& A : enumerate_subgroups(n, p, k, ipow(p, k)))
    if (project_tail(A, n - t) == L) ++count;
  return count;
}

DecompositionReport decompose(unsigned p, unsigned n, unsigned t, unsigned k, DecomposeOptions options) {
  check_parameters(p, n, t, k);
  const unsigned h = n - t;
  const bool t_is_zero = t == 0;
  const Lambda lambda(p, h, k);
  const auto degree = static_cast<std::size_t>(ipow(p, k));

  const PermGroup G = PermGroup::symmetric(degree);
  const PermGroup H = PermGroup::block_symmetric(degree / p, p);
  const Induction induction(ClassIndex::build(H, lambda), ClassIndex::build(G, lambda));
  const ClassIndex& classes = induction.group_classes();

  DecompositionReport report;
  report.p = p;
  report.n = n;
  report.t = t;
  report.k = k;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    ComponentRecord rec;
    rec.hom_class = HomClass::parse_id(classes.classes()[i].id);
    rec.isotypic = is_isotypic(rec.hom_class);
    rec.m = minimal_level(rec.hom_class);
    rec.L = dual_image(rec.hom_class);
    rec.ideal_trivial = ideal_trivial(induction.datum(i), p, t_is_zero);
    rec.centralizer_order = classes.classes()[i].centralizer_order;

    if (!t_is_zero && rec.ideal_trivial == rec.isotypic)
      throw Error(ErrorKind::InternalMismatch,
                  "transfer criterion says " + std::string(rec.ideal_trivial ? "trivial" : "non-trivial") +
                      " but the class is " + (rec.isotypic ? "" : "not ") + "isotypic: " + rec.hom_class.id());
    if (rec.isotypic && rec.L.order() != ipow(p, rec.m))
      throw Error(ErrorKind::InternalMismatch, "isotypic class with |L| != p^m: " + rec.hom_class.id());
    report.components.push_back(std::move(rec));
  }

  // Fiber ranks of the surviving components, one task per component.
  std::vector<std::future<std::uint64_t>> ranks(report.components.size());
  const auto policy = options.parallel ? std::launch::async : std::launch::deferred;
  for (std::size_t i = 0; i < report.components.size(); ++i) {
    if (report.components[i].ideal_trivial) continue;
    const AbSubgroup L = report.components[i].L;
    ranks[i] = std::async(policy, [L, p, n, t, k] { return fiber_rank(L, p, n, t, k); });
  }
  for (std::size_t i = 0; i < report.components.size(); ++i) {
    if (!ranks[i].valid()) continue;
    report.components[i].fiber_rank = ranks[i].get();
    report.rank_sum += *report.components[i].fiber_rank;
  }
  report.strickland_degree = count_sublattices(n, p, k);

  const std::uint64_t expected = t_is_zero ? count_sublattices(h, p, k) : sub_leq_count(h, p, k);
  if (report.nontrivial_count() != expected)
    throw Error(ErrorKind::InternalMismatch, std::to_string(report.nontrivial_count()) +
                                                 " non-trivial components, expected " + std::to_string(expected));
  if (report.rank_sum != report.strickland_degree)
    throw Error(ErrorKind::InternalMismatch, "fiber ranks add up to " + std::to_string(report.rank_sum) +
                                                 ", degree is " + std::to_string(report.strickland_degree));
  return report;
}

TriangleCheck verify_triangle(const DecompositionReport& r) {
  const unsigned h = r.n - r.t;
  const bool t_is_zero = r.t == 0;

  std::vector<AbSubgroup> images;
  std::uint64_t sum = 0;
  std::map<std::size_t, std::uint64_t> by_order;
  for (const auto& c : r.components) {
    if (c.ideal_trivial) continue;
    if (!c.fiber_rank) return {false, "non-trivial component without a fiber rank: " + c.hom_class.id()};
    images.push_back(c.L);
    sum += *c.fiber_rank;
    ++by_order[c.L.order()];
  }

  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end())
    return {false, "clause (a): two components share the same L"};
  if (images != triangle_targets(r.p, h, r.k, t_is_zero))
    return {false, "clause (a): the L of the non-trivial components are not exactly the subgroups of order " +
                       std::string(t_is_zero ? "" : "<= ") + "p^k"};

  if (sum != r.rank_sum || sum != r.strickland_degree)
    return {false, "clause (b): fiber ranks add up to " + std::to_string(sum) + ", degree is " +
                       std::to_string(r.strickland_degree)};

  for (unsigned m = 0; m <= r.k; ++m) {
    const auto order = static_cast<std::size_t>(ipow(r.p, m));
    const std::uint64_t expected = (t_is_zero && m < r.k) ? 0 : count_sublattices(h, r.p, m);
    const std::uint64_t got = by_order.count(order) ? by_order.at(order) : 0;
    if (got != expected)
      return {false, "clause (c): " + std::to_string(got) + " components with |L| = " + std::to_string(order) +
                         ", expected " + std::to_string(expected)};
  }
  return {true, ""};
}

// ---------------------------------------------------------------- JSON and text

nlohmann::json to_json(const DecompositionReport& r) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : r.components) {
    nlohmann::json gens = nlohmann::json::array();
    for (auto g : c.L.generators()) gens.push_back(c.L.ambient().coords(g));
    comps.push_back({{"class_id", c.hom_class.id()},
                     {"isotypic", c.isotypic},
                     {"m", c.m},
                     {"L", {{"order", c.L.order()}, {"generators", gens}}},
                     {"ideal_trivial", c.ideal_trivial},
                     {"fiber_rank", c.fiber_rank ? nlohmann::json(*c.fiber_rank) : nlohmann::json(nullptr)},
                     {"centralizer_order", c.centralizer_order}});
  }
  return {{"p", r.p},
          {"n", r.n},
          {"t", r.t},
          {"k", r.k},
          {"degree", r.strickland_degree},
          {"convention", kConvention},
          {"components", comps}};
}

DecompositionReport report_from_json(const nlohmann::json& j) {
  try {
    DecompositionReport r;
    r.p = j.at("p").get<unsigned>();
    r.n = j.at("n").get<unsigned>();
    r.t = j.at("t").get<unsigned>();
    r.k = j.at("k").get<unsigned>();
    r.strickland_degree = j.at("degree").get<std::uint64_t>();
    if (r.t >= r.n) throw Error(ErrorKind::ParseError, "need t < n");
    const Lambda lambda(r.p, r.n - r.t, r.k);
    for (const auto& cj : j.at("components")) {
      ComponentRecord c;
      c.hom_class = HomClass::parse_id(cj.at("class_id").get<std::string>());
      if (!(c.hom_class.lambda() == lambda)) throw Error(ErrorKind::ParseError, "class id has the wrong Lambda");
      c.isotypic = cj.at("isotypic").get<bool>();
      c.m = cj.at("m").get<unsigned>();
      std::vector<std::uint32_t> gens;
      for (const auto& g : cj.at("L").at("generators")) gens.push_back(lambda.code(g.get<std::vector<int>>()));
      c.L = AbSubgroup::generated_by(lambda, gens);
      if (c.L.order() != cj.at("L").at("order").get<std::size_t>())
        throw Error(ErrorKind::ParseError, "L order does not match its generators");
      c.ideal_trivial = cj.at("ideal_trivial").get<bool>();
      if (!cj.at("fiber_rank").is_null()) {
        c.fiber_rank = cj.at("fiber_rank").get<std::uint64_t>();
        r.rank_sum += *c.fiber_rank;
      }
      c.centralizer_order = cj.at("centralizer_order").get<std::uint64_t>();
      r.components.push_back(std::move(c));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("decomposition report: ") + e.what());
  }
}

std::string render_table(const DecompositionReport& r) {
  std::ostringstream out;
  out << "p=" << r.p << " n=" << r.n << " t=" << r.t << " k=" << r.k << "\n";
  std::size_t width = 5;
  for (const auto& c : r.components) width = std::max(width, c.hom_class.id().size());
  out << std::left;
  out.width(static_cast<std::streamsize>(width));
  out << "class" << "  iso  m  |L|  L                 trivial  rank  |C|\n";
  for (const auto& c : r.components) {
    out.width(static_cast<std::streamsize>(width));
    out << c.hom_class.id() << "  ";
    out.width(5);
    out << (c.isotypic ? "yes" : "no");
    out.width(3);
    out << c.m;
    out.width(5);
    out << c.L.order();
    out.width(18);
    out << ("<" + c.L.generators_string() + ">");
    out.width(9);
    out << (c.ideal_trivial ? "yes" : "no");
    out.width(6);
    out << (c.fiber_rank ? std::to_string(*c.fiber_rank) : "-");
    out << c.centralizer_order << "\n";
  }
  out << "non-trivial components: " << r.nontrivial_count() << "\n";
  out << "fiber rank sum: " << r.rank_sum << "\n";
  out << "degree: " << r.strickland_degree << "\n";
  return out.str();
}

}  // namespace transchrome
