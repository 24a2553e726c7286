#pragma once

// Component decomposition for Sigma_{p^k}: one record per class of
// hom(Z_p^{n-t}, Sigma_{p^k}), the transfer-ideal decision against the
// p-block subgroup, the dual subgroup L of each surviving component, and
// fiber ranks that add up to the subgroup count of (Q_p/Z_p)^n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "transchrome/abelianp.hpp"
#include "transchrome/zpsets.hpp"

namespace transchrome {

struct ComponentRecord {
  HomClass hom_class;
  bool isotypic = false;
  unsigned m = 0;
  AbSubgroup L;
  bool ideal_trivial = false;
  /// Present exactly for the non-trivial components.
  std::optional<std::uint64_t> fiber_rank;
  std::uint64_t centralizer_order = 0;

  friend bool operator==(const ComponentRecord&, const ComponentRecord&) = default;
};

struct DecompositionReport {
  unsigned p = 0, n = 0, t = 0, k = 0;
  std::vector<ComponentRecord> components;
  std::uint64_t strickland_degree = 0;
  std::uint64_t rank_sum = 0;

  std::size_t nontrivial_count() const;
  friend bool operator==(const DecompositionReport&, const DecompositionReport&) = default;
};

struct DecomposeOptions {
  /// Compute fiber ranks on worker threads; output is identical either way.
  bool parallel = true;
};

/// Requires p prime, 0 <= t < n, k >= 1, p^k <= 9 and n - t <= 3. Throws
/// InternalMismatch when the transfer-datum criterion and the diagonal
/// criterion disagree, or when a report invariant fails.
DecompositionReport decompose(unsigned p, unsigned n, unsigned t, unsigned k, DecomposeOptions options = {});

/// Number of order-p^k subgroups A of (Z/p^k)^t + (Z/p^k)^{n-t} whose
/// projection to the second summand is L. L must live in (Z/p^k)^{n-t}.
std::uint64_t fiber_rank(const AbSubgroup& L, unsigned p, unsigned n, unsigned t, unsigned k);

struct TriangleCheck {
  bool ok = false;
  /// Names the failing clause, empty when ok.
  std::string diagnostic;

  explicit operator bool() const noexcept { return ok; }
};

/// (a) [alpha] -> L is a bijection from the non-trivial components onto the
/// subgroups of (Z/p^k)^{n-t} of order <= p^k (exactly p^k when t = 0);
/// (b) the fiber ranks add up to the Strickland degree;
/// (c) for each m the number of components with |L| = p^m matches
/// count_sublattices.
TriangleCheck verify_triangle(const DecompositionReport& report);

nlohmann::json to_json(const DecompositionReport& report);
DecompositionReport report_from_json(const nlohmann::json& j);
std::string render_table(const DecompositionReport& report);

}  // namespace transchrome
