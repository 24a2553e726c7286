#pragma once

// Subgroups of homocyclic abelian p-groups (Z/p^K)^h, stored as sorted
// lists of element codes, plus the closed-form count of order-p^m subgroups
// of (Q_p/Z_p)^h.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace transchrome {

/// (Z/p^K)^h. Elements are encoded as integers in mixed radix p^K with the
/// first coordinate most significant, so code order is lexicographic order
/// on coordinate vectors.
class HomocyclicGroup {
 public:
  HomocyclicGroup() = default;
  /// Throws NotPrime, or ResourceLimit when p^{Kh} > 10^6.
  HomocyclicGroup(unsigned p, unsigned rank, unsigned exponent);

  unsigned p() const noexcept { return p_; }
  unsigned rank() const noexcept { return rank_; }
  unsigned exponent() const noexcept { return exponent_; }
  /// p^K
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t order() const noexcept { return order_; }

  std::vector<int> coords(std::uint32_t code) const;
  std::uint32_t code(std::span<const int> coords) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t scale(std::uint32_t a, std::uint64_t c) const;
  std::uint32_t basis(unsigned i) const;
  /// Sum of coordinate products mod p^K.
  std::uint32_t pairing(std::uint32_t a, std::uint32_t b) const;

  friend bool operator==(const HomocyclicGroup&, const HomocyclicGroup&) = default;

 private:
  unsigned p_ = 0, rank_ = 0, exponent_ = 0;
  std::uint32_t modulus_ = 1, order_ = 1;
};

class AbSubgroup {
 public:
  AbSubgroup() = default;
  /// Subgroup generated by the given element codes.
  static AbSubgroup generated_by(const HomocyclicGroup& ambient, std::span<const std::uint32_t> gens);
  static AbSubgroup trivial(const HomocyclicGroup& ambient);
  static AbSubgroup full(const HomocyclicGroup& ambient);
  /// Adopts a sorted, duplicate-free element list known to be a subgroup.
  static AbSubgroup from_sorted_elements(const HomocyclicGroup& ambient, std::vector<std::uint32_t> elements);

  const HomocyclicGroup& ambient() const noexcept { return ambient_; }
  const std::vector<std::uint32_t>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t index() const noexcept { return ambient_.order() / elements_.size(); }
  bool contains(std::uint32_t code) const;
  bool is_subgroup_of(const AbSubgroup& other) const;
  /// True when closed under addition and of p-power order.
  bool is_valid() const;

  /// Greedy generating set: scan elements in increasing order and keep those
  /// not already in the span. Deterministic for a given subgroup.
  std::vector<std::uint32_t> generators() const;
  /// "(0,2),(1,0)"; empty string for the trivial subgroup.
  std::string generators_string() const;
  static AbSubgroup parse_generators(const HomocyclicGroup& ambient, std::string_view text);

  friend bool operator==(const AbSubgroup& a, const AbSubgroup& b) {
    return a.ambient_ == b.ambient_ && a.elements_ == b.elements_;
  }
  /// Orders by element list.
  friend std::strong_ordering operator<=>(const AbSubgroup& a, const AbSubgroup& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  HomocyclicGroup ambient_;
  std::vector<std::uint32_t> elements_;
};

AbSubgroup intersect(const AbSubgroup& a, const AbSubgroup& b);

/// Image of U under projection onto the last `rank` coordinates.
AbSubgroup project_tail(const AbSubgroup& U, unsigned rank);

/// All subgroups of (Z/p^K)^h of the given order, sorted by element list.
/// Requires p^{Kh} <= 10^4 (ResourceLimit) and order a power of p.
std::vector<AbSubgroup> enumerate_subgroups(unsigned h, unsigned p, unsigned K, std::uint64_t order);

/// {y : <x, y> = 0 mod p^K for all x in U}.
AbSubgroup annihilator(const AbSubgroup& U);

/// Number of order-p^m subgroups of (Q_p/Z_p)^h: the sum over compositions
/// a_1 + ... + a_h = m of p^{sum (i-1) a_i}.
std::uint64_t count_sublattices(unsigned h, unsigned p, unsigned m);

/// Subgroups of (Q_p/Z_p)^h of order at most p^k.
std::uint64_t sub_leq_count(unsigned h, unsigned p, unsigned k);

}  // namespace transchrome
