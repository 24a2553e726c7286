#pragma once

// Homomorphisms Z_p^h -> Sigma_{p^k} up to conjugacy. Such a homomorphism
// factors through Lambda = (Z/p^k)^h and is the same thing as a Lambda-set
// on p^k points; its conjugacy class is the multiset of orbit kernels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transchrome/abelianp.hpp"
#include "transchrome/permcore.hpp"

namespace transchrome {

using Lambda = HomocyclicGroup;

/// One transitive piece Lambda/kernel, repeated `multiplicity` times.
struct OrbitType {
  AbSubgroup kernel;
  unsigned multiplicity = 0;

  std::size_t orbit_size() const noexcept { return kernel.index(); }
  friend bool operator==(const OrbitType&, const OrbitType&) = default;
};

/// Canonical order: orbit size, then kernel elements, then multiplicity
/// descending (so the all-fixed class comes first).
std::strong_ordering compare(const OrbitType& a, const OrbitType& b);

/// Isomorphism class of a finite Lambda-set. For homomorphisms into
/// Sigma_{p^k} the degree is p^k; classes of actions on the blocks of a
/// block subgroup use smaller degrees.
class HomClass {
 public:
  HomClass() = default;
  /// Merges repeated kernels and sorts canonically.
  HomClass(Lambda lambda, std::vector<OrbitType> orbit_types);

  const Lambda& lambda() const noexcept { return lambda_; }
  const std::vector<OrbitType>& orbit_types() const noexcept { return orbit_types_; }
  /// Total number of points.
  std::size_t degree() const noexcept;

  /// "p2.k2.h1:[(U<(2)>:idx2,m2)]"
  std::string id() const;
  static HomClass parse_id(std::string_view id);

  friend bool operator==(const HomClass& a, const HomClass& b) {
    return a.lambda_ == b.lambda_ && a.orbit_types_ == b.orbit_types_;
  }
  friend std::strong_ordering operator<=>(const HomClass& a, const HomClass& b);

 private:
  Lambda lambda_;
  std::vector<OrbitType> orbit_types_;
};

/// alpha(e_1), ..., alpha(e_h) for a homomorphism out of Lambda.
struct CommutingTuple {
  std::size_t degree = 0;
  std::vector<Perm> perms;
};

/// Every class of hom(Z_p^h, Sigma_{p^k}), canonically sorted.
/// Requires p^k <= 16 and p^{kh} <= 10^4.
std::vector<HomClass> enumerate_hom_classes(unsigned p, unsigned h, unsigned k);

/// Transitive Lambda-set types of size at most p^k: subgroups of index p^j,
/// j <= k, sorted by (index, elements).
std::vector<AbSubgroup> transitive_kernels(const Lambda& lambda);

/// Concrete permutations: each orbit copy occupies consecutive points
/// labelled by the cosets of its kernel in increasing order.
CommutingTuple realize(const HomClass& hc);

/// Orbit kernels of the action of Lambda through the given permutations
/// (any degree). Permutations must commute and have order dividing p^k.
HomClass classify_action(std::span<const Perm> perms, const Lambda& lambda);

/// classify_action with the full validation for homs into Sigma_{p^k}.
HomClass classify(const CommutingTuple& t, const Lambda& lambda);

/// prod_i [Lambda:U_i]^{m_i} * m_i!
std::uint64_t centralizer_order(const HomClass& hc);

/// Generators of the centralizer of realize(hc): translations on the first
/// copy of each orbit type and permutations of the copies.
std::vector<Perm> centralizer_generators(const HomClass& hc);

/// Largest orbit-size exponent; the smallest m with alpha conjugate into
/// Sigma_{p^m}^{x p^{k-m}}.
unsigned minimal_level(const HomClass& hc);

/// Exactly one distinct kernel (alpha factors through the diagonal).
bool is_isotypic(const HomClass& hc);

/// Annihilator of ker(alpha) = intersection of the orbit kernels.
AbSubgroup dual_image(const HomClass& hc);

/// Sigma_{p^m}^{x count}, as an ordered block partition of the points.
struct BlockSpec {
  unsigned m = 0;
  std::size_t count = 0;
};

struct FiberOrbit {
  /// Class of g^-1 alpha g restricted to each block, in block order.
  std::vector<HomClass> block_classes;
  Perm coset_representative;
  /// [C(im alpha) : stabilizer]
  std::size_t orbit_size = 0;
  std::uint64_t stabilizer_order = 0;
};

/// Centralizer orbits on the alpha-stable ordered block partitions (the
/// fixed cosets of the block subgroup), with the block class of each orbit.
std::vector<FiberOrbit> coset_fiber(const HomClass& hc, BlockSpec block);

/// Number of alpha-stable ordered block partitions (= |(G/H)^{im alpha}|).
std::size_t count_fixed_block_partitions(const HomClass& hc, BlockSpec block);

}  // namespace transchrome
