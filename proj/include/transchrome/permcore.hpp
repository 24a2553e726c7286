#pragma once

// Permutation groups at desk scale. Groups are stored as their full sorted
// element list, which keeps every operation an exhaustive (and therefore
// directly checkable) computation. Ambient groups go up to Sigma_9.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace transchrome {

inline constexpr std::size_t kMaxDegree = 16;

/// A bijection of {0, ..., degree-1}. Composition is right-to-left:
/// (a * b)(x) == a(b(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree);

  static Perm from_images(std::span<const int> images);
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles);
  /// Parses cycle notation such as "(0 1)(2 3)"; "()" or "" is the identity.
  static Perm parse(std::string_view text, std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  int operator[](std::size_t x) const noexcept { return images_[x]; }
  std::vector<int> images() const;

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  Perm pow(std::uint64_t e) const;
  bool is_identity() const noexcept;
  std::uint64_t order() const;
  /// Sorted cycle lengths including fixed points.
  std::vector<int> cycle_type() const;

  /// Packs the images into 64 bits (4 bits per point).
  std::uint64_t key() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Perm& a, const Perm& b) noexcept {
    return a.degree_ == b.degree_ && a.images_ == b.images_;
  }
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) noexcept {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.images_ <=> b.images_;
  }

 private:
  std::array<std::uint8_t, kMaxDegree> images_{};
  std::uint8_t degree_ = 0;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept { return std::hash<std::uint64_t>{}(p.key()); }
};

/// Parses a ';'-separated list of cycle-notation permutations.
std::vector<Perm> parse_perm_list(std::string_view text, std::size_t degree);
std::string format_perm_list(std::span<const Perm> perms);

/// A finite permutation group, immutable after construction. Copies share
/// the element table.
class PermGroup {
 public:
  PermGroup() = default;

  /// Closure of gens under composition. Throws DegreeMismatch or
  /// ResourceLimit (cap from max_group_elements() unless given).
  static PermGroup generate(std::size_t degree, std::span<const Perm> gens,
                            std::optional<std::size_t> limit = std::nullopt);
  static PermGroup symmetric(std::size_t degree);
  /// Direct product of symmetric groups on consecutive blocks of the given
  /// size: Sigma_size^{x count} inside Sigma_{size*count}.
  static PermGroup block_symmetric(std::size_t block_size, std::size_t count);
  /// Builds a group from a list that is already known to be a subgroup
  /// (e.g. the result of filtering a group by a subgroup predicate).
  /// Closure is not re-checked; see is_closed().
  static PermGroup from_subgroup_elements(std::size_t degree, std::vector<Perm> elements);

  std::size_t degree() const noexcept;
  std::size_t order() const noexcept;
  const std::vector<Perm>& elements() const noexcept;
  const std::vector<Perm>& generators() const noexcept;

  bool contains(const Perm& g) const;
  /// Position of g in elements(), if present.
  std::optional<std::size_t> index_of(const Perm& g) const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool is_symmetric() const noexcept;
  /// True when the element list is closed under composition and inverse.
  bool is_closed() const;
  bool is_abelian() const;

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree() == b.degree() && a.elements() == b.elements();
  }

 private:
  struct Data {
    std::size_t degree = 0;
    std::vector<Perm> elements;
    std::vector<Perm> generators;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
  };
  static PermGroup from_sorted(std::size_t degree, std::vector<Perm> elements, std::vector<Perm> gens);

  std::shared_ptr<const Data> data_;
};

/// A left coset gH, identified by its lexicographically minimal element.
struct Coset {
  Perm representative;
  PermGroup subgroup;

  bool contains(const Perm& g) const;
  /// Equal iff representative^-1 * other.representative lies in the subgroup.
  friend bool operator==(const Coset& a, const Coset& b) {
    return a.subgroup.contains(a.representative.inverse() * b.representative);
  }
};

/// Minimal element of gH.
Perm canonical_coset_representative(const Perm& g, const PermGroup& subgroup);

/// G/H with an element-to-coset table, so that the coset of any g in G is
/// a single lookup.
class CosetSpace {
 public:
  CosetSpace(PermGroup ambient, PermGroup subgroup);

  const PermGroup& ambient() const noexcept { return ambient_; }
  const PermGroup& subgroup() const noexcept { return subgroup_; }
  std::size_t size() const noexcept { return representatives_.size(); }
  /// Canonical representatives in increasing order.
  const std::vector<Perm>& representatives() const noexcept { return representatives_; }
  std::size_t coset_of(const Perm& g) const;
  Coset coset(std::size_t index) const { return Coset{representatives_[index], subgroup_}; }

  /// Indices of the cosets gH with s*gH == gH for every s in S.
  std::vector<std::size_t> fixed(std::span<const Perm> S) const;

  struct Orbit {
    std::size_t representative;  // smallest coset index in the orbit
    std::vector<std::size_t> members;
    PermGroup stabilizer;
  };
  /// Orbits of C (acting by left multiplication) on the given coset indices.
  /// Throws ActionNotClosed when C moves a coset outside the set.
  std::vector<Orbit> orbits(const PermGroup& C, std::span<const std::size_t> cosets) const;

 private:
  PermGroup ambient_;
  PermGroup subgroup_;
  std::vector<Perm> representatives_;
  std::vector<std::uint32_t> coset_by_element_;
};

PermGroup centralizer(const PermGroup& ambient, std::span<const Perm> S);

std::vector<Coset> left_cosets(const PermGroup& G, const PermGroup& H);

std::vector<Coset> fixed_cosets(const PermGroup& G, const PermGroup& H, std::span<const Perm> S);

struct CosetOrbit {
  Coset representative;
  PermGroup stabilizer;
  std::size_t size = 0;
};

/// Orbits of C on an explicit list of cosets (all of the same subgroup).
std::vector<CosetOrbit> coset_orbits(const PermGroup& C, std::span<const Coset> cosets);

/// Some g in G with g*a[i]*g^-1 == b[i] for all i, by exhaustive search.
std::optional<Perm> conjugating_element(const PermGroup& G, std::span<const Perm> a,
                                        std::span<const Perm> b);

}  // namespace transchrome
