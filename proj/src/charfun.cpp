#include "transchrome/charfun.hpp"

#include <algorithm>
#include <functional>

#include "transchrome/arith.hpp"
#include "transchrome/error.hpp"

namespace transchrome {

namespace {

constexpr std::size_t kMaxCosets = 100'000;

std::vector<std::uint64_t> tuple_key(std::span<const Perm> tuple) {
  std::vector<std::uint64_t> key;
  key.reserve(tuple.size());
  for (const auto& s : tuple) key.push_back(s.key());
  return key;
}

std::vector<Perm> conjugate(std::span<const Perm> tuple, const Perm& g) {
  // g^-1 * s * g for each entry
  const Perm g_inv = g.inverse();
  std::vector<Perm> out;
  out.reserve(tuple.size());
  for (const auto& s : tuple) out.push_back(g_inv * s * g);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- ClassIndex

ClassIndexPtr ClassIndex::build(const PermGroup& group, const Lambda& lambda) {
  if (group.degree() != lambda.modulus() || !group.is_symmetric()) return build_brute_force(group, lambda);
  std::shared_ptr<ClassIndex> idx(new ClassIndex());
  idx->group_ = group;
  idx->lambda_ = lambda;
  idx->symmetric_ = true;
  for (const auto& hc : enumerate_hom_classes(lambda.p(), lambda.rank(), lambda.exponent())) {
    idx->by_id_.emplace(hc.id(), idx->classes_.size());
    idx->classes_.push_back(Entry{hc.id(), realize(hc).perms, centralizer_order(hc)});
  }
  return idx;
}

ClassIndexPtr ClassIndex::build_brute_force(const PermGroup& group, const Lambda& lambda) {
  std::shared_ptr<ClassIndex> idx(new ClassIndex());
  idx->group_ = group;
  idx->lambda_ = lambda;
  idx->symmetric_ = false;

  std::vector<Perm> candidates;
  for (const auto& x : group.elements())
    if (x.pow(lambda.modulus()).is_identity()) candidates.push_back(x);

  // All pairwise-commuting h-tuples, generated in lexicographic order.
  const std::size_t cap = max_group_elements();
  std::vector<std::vector<Perm>> tuples;
  std::vector<Perm> current;
  std::function<void()> rec = [&] {
    if (current.size() == lambda.rank()) {
      tuples.push_back(current);
      if (tuples.size() > cap) throw Error(ErrorKind::ResourceLimit, "too many commuting tuples");
      return;
    }
    for (const auto& x : candidates) {
      bool ok = std::all_of(current.begin(), current.end(), [&](const Perm& y) { return x * y == y * x; });
      if (!ok) continue;
      current.push_back(x);
      rec();
      current.pop_back();
    }
  };
  rec();

  for (const auto& t : tuples) {
    auto key = tuple_key(t);
    if (idx->by_tuple_.count(key)) continue;
    // t is the smallest unvisited tuple, hence the minimum of its orbit.
    const std::size_t pos = idx->classes_.size();
    std::size_t orbit_size = 0;
    for (const auto& g : group.elements()) {
      auto [it, inserted] = idx->by_tuple_.emplace(tuple_key(conjugate(t, g)), pos);
      if (inserted) ++orbit_size;
    }
    std::string id = "tuple:" + format_perm_list(t);
    idx->by_id_.emplace(id, pos);
    idx->classes_.push_back(Entry{std::move(id), t, group.order() / orbit_size});
  }
  return idx;
}

std::size_t ClassIndex::position_of(std::span<const Perm> tuple) const {
  if (symmetric_) {
    for (const auto& s : tuple)
      if (!group_.contains(s)) throw Error(ErrorKind::NotInGroup, s.to_string() + " is not in the group");
    auto id = classify_action(tuple, lambda_).id();
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw Error(ErrorKind::NotInGroup, "no class " + id);
    return it->second;
  }
  auto it = by_tuple_.find(tuple_key(tuple));
  if (it == by_tuple_.end())
    throw Error(ErrorKind::NotInGroup,
                "tuple " + format_perm_list(tuple) + " is not a homomorphism from Lambda into the group");
  return it->second;
}

std::optional<std::size_t> ClassIndex::find(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- GenClassFunction

GenClassFunction::GenClassFunction(ClassIndexPtr index)
    : index_(std::move(index)), values_(index_->size(), Rational(0)) {}

GenClassFunction::GenClassFunction(ClassIndexPtr index, std::vector<Rational> values)
    : index_(std::move(index)), values_(std::move(values)) {
  if (values_.size() != index_->size())
    throw Error(ErrorKind::BadParameters, "class function needs one value per class");
}

GenClassFunction GenClassFunction::constant(ClassIndexPtr index, const Rational& c) {
  const auto n = index->size();
  return GenClassFunction(std::move(index), std::vector<Rational>(n, c));
}

GenClassFunction GenClassFunction::indicator(ClassIndexPtr index, std::string_view class_id) {
  auto pos = index->find(class_id);
  if (!pos) throw Error(ErrorKind::BadParameters, "unknown class " + std::string(class_id));
  std::vector<Rational> values(index->size(), Rational(0));
  values[*pos] = 1;
  return GenClassFunction(std::move(index), std::move(values));
}

const Rational& GenClassFunction::at(std::string_view class_id) const {
  auto pos = index_->find(class_id);
  if (!pos) throw Error(ErrorKind::BadParameters, "unknown class " + std::string(class_id));
  return values_[*pos];
}

nlohmann::json GenClassFunction::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < values_.size(); ++i) j[index_->classes()[i].id] = to_string(values_[i]);
  return j;
}

GenClassFunction GenClassFunction::from_json(ClassIndexPtr index, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "class function must be a JSON object");
  std::vector<Rational> values(index->size(), Rational(0));
  for (const auto& [key, value] : j.items()) {
    auto pos = index->find(key);
    if (!pos) throw Error(ErrorKind::ParseError, "unknown class id " + key);
    if (value.is_string())
      values[*pos] = parse_rational(value.get<std::string>());
    else if (value.is_number_integer())
      values[*pos] = Rational(value.get<long long>());
    else
      throw Error(ErrorKind::ParseError, "class function values must be \"a/b\" strings");
  }
  return GenClassFunction(std::move(index), std::move(values));
}

Rational inner_product(const GenClassFunction& phi, const GenClassFunction& psi) {
  if (!(phi.index().group() == psi.index().group()))
    throw Error(ErrorKind::BadParameters, "inner product of class functions on different groups");
  Rational total = 0;
  const auto& classes = phi.index().classes();
  for (std::size_t i = 0; i < classes.size(); ++i)
    total += phi.at(i) * psi.at(i) / Rational(classes[i].centralizer_order);
  return total;
}

// ---------------------------------------------------------------- Induction

namespace {

CosetSpace checked_coset_space(const ClassIndex& h, const ClassIndex& g) {
  if (!(h.lambda() == g.lambda())) throw Error(ErrorKind::BadParameters, "class indices use different Lambda");
  if (!h.group().is_subgroup_of(g.group()))
    throw Error(ErrorKind::NotSubgroup, "H is not a subgroup of G");
  if (g.group().order() / h.group().order() > kMaxCosets)
    throw Error(ErrorKind::ResourceLimit, "more than 10^5 cosets");
  return CosetSpace(g.group(), h.group());
}

}  // namespace

Induction::Induction(ClassIndexPtr subgroup_classes, ClassIndexPtr group_classes)
    : h_(std::move(subgroup_classes)), g_(std::move(group_classes)), cosets_(checked_coset_space(*h_, *g_)) {
  const PermGroup& G = g_->group();
  const PermGroup& H = h_->group();
  for (const auto& entry : g_->classes()) {
    const auto& alpha = entry.representative;
    const auto fixed = cosets_.fixed(alpha);

    std::vector<std::size_t> terms;
    terms.reserve(fixed.size());
    for (auto c : fixed) terms.push_back(h_->position_of(conjugate(alpha, cosets_.representatives()[c])));
    coset_terms_.push_back(std::move(terms));

    const PermGroup C = centralizer(G, alpha);
    if (C.order() != entry.centralizer_order)
      throw Error(ErrorKind::InternalMismatch, "centralizer of " + entry.id + " has order " +
                                                   std::to_string(C.order()) + ", class index says " +
                                                   std::to_string(entry.centralizer_order));
    TransferDatum datum{entry.id, C.order(), fixed.size(), {}};
    std::vector<std::size_t> orbit_terms;
    for (const auto& orbit : cosets_.orbits(C, fixed)) {
      const Perm& g = cosets_.representatives()[orbit.representative];
      const auto beta = conjugate(alpha, g);
      const auto h_pos = h_->position_of(beta);
      // The stabilizer of gH must be g C_H(beta) g^-1.
      const PermGroup CH = centralizer(H, beta);
      std::vector<Perm> expected;
      expected.reserve(CH.order());
      const Perm g_inv = g.inverse();
      for (const auto& c : CH.elements()) expected.push_back(g * c * g_inv);
      std::sort(expected.begin(), expected.end());
      if (expected != orbit.stabilizer.elements())
        throw Error(ErrorKind::InternalMismatch, "stabilizer of a fixed coset differs from g C_H g^-1 for " + entry.id);
      datum.orbits.push_back(TransferOrbit{g, h_->classes()[h_pos].id, orbit.stabilizer.order(),
                                           C.order() / orbit.stabilizer.order()});
      orbit_terms.push_back(h_pos);
    }
    orbit_terms_.push_back(std::move(orbit_terms));
    data_.push_back(std::move(datum));
  }
}

GenClassFunction Induction::induce(const GenClassFunction& chi) const {
  if (!(chi.index().group() == h_->group())) throw Error(ErrorKind::BadParameters, "class function is not on H");
  std::vector<Rational> values(g_->size(), Rational(0));
  for (std::size_t i = 0; i < g_->size(); ++i)
    for (auto h_pos : coset_terms_[i]) values[i] += chi.at(h_pos);
  return GenClassFunction(g_, std::move(values));
}

GenClassFunction Induction::induce_grouped(const GenClassFunction& chi) const {
  if (!(chi.index().group() == h_->group())) throw Error(ErrorKind::BadParameters, "class function is not on H");
  std::vector<Rational> values(g_->size(), Rational(0));
  for (std::size_t i = 0; i < g_->size(); ++i) {
    const auto cg = g_->classes()[i].centralizer_order;
    for (auto h_pos : orbit_terms_[i]) {
      const auto ch = h_->classes()[h_pos].centralizer_order;
      if (cg % ch != 0) throw Error(ErrorKind::InternalMismatch, "|C_H| does not divide |C_G|");
      values[i] += Rational(cg / ch) * chi.at(h_pos);
    }
  }
  return GenClassFunction(g_, std::move(values));
}

// ---------------------------------------------------------------- free functions

GenClassFunction restrict_to(const GenClassFunction& chi, const PermGroup& H) {
  const ClassIndex& g_index = chi.index();
  if (!H.is_subgroup_of(g_index.group())) throw Error(ErrorKind::NotSubgroup, "H is not a subgroup of G");
  auto h_index = ClassIndex::build(H, g_index.lambda());
  std::vector<Rational> values;
  values.reserve(h_index->size());
  for (const auto& entry : h_index->classes()) values.push_back(chi.at(g_index.position_of(entry.representative)));
  return GenClassFunction(std::move(h_index), std::move(values));
}

GenClassFunction induce(const GenClassFunction& chi, const PermGroup& G) {
  return Induction(chi.index_ptr(), ClassIndex::build(G, chi.index().lambda())).induce(chi);
}

GenClassFunction induce_grouped(const GenClassFunction& chi, const PermGroup& G) {
  return Induction(chi.index_ptr(), ClassIndex::build(G, chi.index().lambda())).induce_grouped(chi);
}

TransferDatum transfer_datum(const PermGroup& G, const PermGroup& H, const Lambda& lambda,
                             std::string_view alpha_class) {
  Induction ind(ClassIndex::build(H, lambda), ClassIndex::build(G, lambda));
  auto pos = ind.group_classes().find(alpha_class);
  if (!pos) throw Error(ErrorKind::BadParameters, "unknown class " + std::string(alpha_class));
  return ind.datum(*pos);
}

bool ideal_trivial(const TransferDatum& datum, unsigned p, bool t_is_zero) {
  if (t_is_zero) return datum.fixed_coset_count > 0;
  return std::any_of(datum.orbits.begin(), datum.orbits.end(),
                     [p](const TransferOrbit& o) { return o.index % p != 0; });
}

bool ideal_trivial(const PermGroup& G, const PermGroup& H, const Lambda& lambda, std::string_view alpha_class,
                   bool t_is_zero) {
  return ideal_trivial(transfer_datum(G, H, lambda, alpha_class), lambda.p(), t_is_zero);
}

bool verify_mainthm_instance(const PermGroup& G, const PermGroup& H, const GenClassFunction& chi) {
  if (!(chi.index().group() == H)) throw Error(ErrorKind::BadParameters, "class function is not on H");
  Induction ind(chi.index_ptr(), ClassIndex::build(G, chi.index().lambda()));
  return ind.induce(chi) == ind.induce_grouped(chi);
}

}  // namespace transchrome
