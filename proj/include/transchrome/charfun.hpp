#pragma once

// Class functions on hom(Lambda, G)/conjugacy with exact rational values,
// restriction, and the two routes for induction: the plain sum over fixed
// cosets and the sum over centralizer orbits weighted by stabilizer index.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "transchrome/permcore.hpp"
#include "transchrome/rational.hpp"
#include "transchrome/zpsets.hpp"

namespace transchrome {

/// Conjugacy classes of homomorphisms Lambda -> G. For the full symmetric
/// group on p^k points the classes are HomClasses; for any other group they
/// are found by brute force over commuting tuples, keyed by the smallest
/// tuple in each conjugation orbit.
class ClassIndex {
 public:
  struct Entry {
    std::string id;
    std::vector<Perm> representative;
    std::uint64_t centralizer_order = 0;
  };

  static std::shared_ptr<const ClassIndex> build(const PermGroup& group, const Lambda& lambda);
  /// Forces the brute-force classifier even for symmetric groups.
  static std::shared_ptr<const ClassIndex> build_brute_force(const PermGroup& group, const Lambda& lambda);

  const PermGroup& group() const noexcept { return group_; }
  const Lambda& lambda() const noexcept { return lambda_; }
  const std::vector<Entry>& classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return classes_.size(); }
  bool uses_hom_classes() const noexcept { return symmetric_; }

  /// Position of the class of a tuple; throws NotInGroup for tuples that do
  /// not define a homomorphism into the group.
  std::size_t position_of(std::span<const Perm> tuple) const;
  std::optional<std::size_t> find(std::string_view id) const;

 private:
  ClassIndex() = default;

  PermGroup group_;
  Lambda lambda_;
  bool symmetric_ = false;
  std::vector<Entry> classes_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::vector<std::uint64_t>, std::size_t> by_tuple_;
};

using ClassIndexPtr = std::shared_ptr<const ClassIndex>;

class GenClassFunction {
 public:
  /// The zero function.
  explicit GenClassFunction(ClassIndexPtr index);
  GenClassFunction(ClassIndexPtr index, std::vector<Rational> values);
  static GenClassFunction constant(ClassIndexPtr index, const Rational& c);
  static GenClassFunction indicator(ClassIndexPtr index, std::string_view class_id);

  const ClassIndex& index() const noexcept { return *index_; }
  const ClassIndexPtr& index_ptr() const noexcept { return index_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& at(std::size_t position) const { return values_.at(position); }
  const Rational& at(std::string_view class_id) const;

  /// {class_id: "a/b"}
  nlohmann::json to_json() const;
  /// Missing classes read as zero; unknown ids throw ParseError.
  static GenClassFunction from_json(ClassIndexPtr index, const nlohmann::json& j);

  friend bool operator==(const GenClassFunction& a, const GenClassFunction& b) {
    return a.index_->group() == b.index_->group() && a.values_ == b.values_;
  }

 private:
  ClassIndexPtr index_;
  std::vector<Rational> values_;
};

/// sum over classes of phi * psi / |centralizer|
Rational inner_product(const GenClassFunction& phi, const GenClassFunction& psi);

struct TransferOrbit {
  Perm coset_representative;
  /// Class of g^-1 alpha g in H.
  std::string subgroup_class;
  std::uint64_t stabilizer_order = 0;
  /// |C_G(im alpha)| / stabilizer_order
  std::uint64_t index = 0;
};

struct TransferDatum {
  std::string alpha_class;
  std::uint64_t centralizer_order = 0;
  std::size_t fixed_coset_count = 0;
  std::vector<TransferOrbit> orbits;

  bool empty() const noexcept { return orbits.empty(); }
};

/// Everything needed to induce from H to G, computed once: the coset space,
/// the fixed cosets of each G-class and their centralizer orbits. Building
/// it verifies, for every orbit, that the stabilizer of gH equals
/// g C_H(g^-1 im alpha g) g^-1 element by element (InternalMismatch
/// otherwise).
class Induction {
 public:
  Induction(ClassIndexPtr subgroup_classes, ClassIndexPtr group_classes);

  const ClassIndex& subgroup_classes() const noexcept { return *h_; }
  const ClassIndex& group_classes() const noexcept { return *g_; }
  const ClassIndexPtr& subgroup_index() const noexcept { return h_; }
  const ClassIndexPtr& group_index() const noexcept { return g_; }
  const CosetSpace& cosets() const noexcept { return cosets_; }
  const TransferDatum& datum(std::size_t g_class) const { return data_.at(g_class); }

  /// value at [alpha] = sum over fixed gH of chi([g^-1 alpha g])
  GenClassFunction induce(const GenClassFunction& chi) const;
  /// value at [alpha] = sum over C(im alpha)-orbits of
  /// [C_G(im alpha) : g C_H(g^-1 alpha g) g^-1] * chi([g^-1 alpha g]),
  /// with the index taken from the two class indices' centralizer orders.
  GenClassFunction induce_grouped(const GenClassFunction& chi) const;

 private:
  ClassIndexPtr h_, g_;
  CosetSpace cosets_;
  std::vector<std::vector<std::size_t>> coset_terms_;  // H-class per fixed coset
  std::vector<std::vector<std::size_t>> orbit_terms_;  // H-class per orbit
  std::vector<TransferDatum> data_;
};

GenClassFunction restrict_to(const GenClassFunction& chi, const PermGroup& H);
GenClassFunction induce(const GenClassFunction& chi, const PermGroup& G);
GenClassFunction induce_grouped(const GenClassFunction& chi, const PermGroup& G);

TransferDatum transfer_datum(const PermGroup& G, const PermGroup& H, const Lambda& lambda,
                             std::string_view alpha_class);

/// Decision rule for I_tr^{[alpha]} being the whole ring. With p invertible
/// (t = 0) any fixed coset suffices; otherwise some orbit index must be
/// prime to p.
bool ideal_trivial(const TransferDatum& datum, unsigned p, bool t_is_zero);
bool ideal_trivial(const PermGroup& G, const PermGroup& H, const Lambda& lambda, std::string_view alpha_class,
                   bool t_is_zero);

/// induce(chi) == induce_grouped(chi) on every class of G.
bool verify_mainthm_instance(const PermGroup& G, const PermGroup& H, const GenClassFunction& chi);

}  // namespace transchrome
