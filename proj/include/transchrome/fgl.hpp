#pragma once

// Truncated formal group law arithmetic. Coefficients live in
// (Z/p^a)[u_1..u_{n-1}] with monomials of u-degree >= b dropped; series in
// up to three variables are truncated at total x-degree D. All equalities
// below are "below degree D, mod p^a, mod u-degree b".

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "transchrome/rational.hpp"

namespace transchrome {

class CoeffRing {
 public:
  /// Throws BadParameters unless p is prime, precision >= 1, u_truncation
  /// >= 1 and p^precision < 2^31.
  CoeffRing(unsigned p, unsigned precision, unsigned params, unsigned u_truncation);

  unsigned p() const noexcept { return p_; }
  unsigned precision() const noexcept { return precision_; }
  std::int64_t modulus() const noexcept { return modulus_; }
  unsigned params() const noexcept { return params_; }
  unsigned u_truncation() const noexcept { return u_truncation_; }

  /// Monomials u^e of degree < b, graded; index 0 is the constant monomial.
  std::size_t size() const noexcept { return monomials_.size(); }
  const std::vector<unsigned>& monomial(std::size_t i) const { return monomials_.at(i); }
  /// Index of the product monomial, or -1 when it is truncated away.
  int product(std::size_t i, std::size_t j) const noexcept { return product_[i * size() + j]; }
  /// Index of the monomial with the given exponents, or -1 if truncated.
  int index_of(std::span<const unsigned> exponents) const;
  std::string monomial_name(std::size_t i) const;

  friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_ && a.params_ == b.params_ &&
           a.u_truncation_ == b.u_truncation_;
  }

 private:
  unsigned p_, precision_, params_, u_truncation_;
  std::int64_t modulus_;
  std::vector<std::vector<unsigned>> monomials_;
  std::vector<int> product_;
};

using CoeffRingPtr = std::shared_ptr<const CoeffRing>;

class RingElem {
 public:
  explicit RingElem(CoeffRingPtr ring, std::int64_t constant = 0);
  /// u_i, 1-based as in the usual notation.
  static RingElem u(CoeffRingPtr ring, unsigned i);

  const CoeffRingPtr& ring() const noexcept { return ring_; }
  /// Coefficients in [0, p^a), one per monomial.
  const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }
  std::int64_t coefficient(std::size_t monomial) const { return c_.at(monomial); }

  bool is_zero() const noexcept;
  /// Constant term prime to p.
  bool is_unit() const noexcept;
  bool in_maximal_ideal() const noexcept { return !is_unit(); }
  /// Image in the residue field F_p.
  std::int64_t residue() const noexcept { return c_[0] % ring_->p(); }
  RingElem inverse() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator-() const;
  RingElem operator*(const RingElem& o) const;
  friend bool operator==(const RingElem& a, const RingElem& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  friend class TruncSeries;
  RingElem(CoeffRingPtr ring, std::vector<std::int64_t> c) : ring_(std::move(ring)), c_(std::move(c)) {}

  CoeffRingPtr ring_;
  std::vector<std::int64_t> c_;
};

namespace detail {

/// Exponent tuples of total degree < D in `vars` variables, graded.
struct Shape {
  unsigned vars = 1;
  std::size_t D = 0;
  std::vector<std::array<std::uint16_t, 3>> exponents;
  std::vector<std::size_t> degree_start;  // size D + 1
  std::vector<std::int32_t> lookup;       // packed key -> index

  std::size_t size() const noexcept { return exponents.size(); }
  std::uint64_t key(const std::array<std::uint16_t, 3>& e) const noexcept {
    return e[0] + D * (e[1] + D * static_cast<std::uint64_t>(e[2]));
  }
  unsigned degree(std::size_t i) const noexcept { return exponents[i][0] + exponents[i][1] + exponents[i][2]; }
};

std::shared_ptr<const Shape> shape_for(unsigned vars, std::size_t D);

}  // namespace detail

/// Power series in 1, 2 or 3 variables (x, y, z) over a CoeffRing,
/// truncated at total degree D.
class TruncSeries {
 public:
  TruncSeries(CoeffRingPtr ring, unsigned vars, std::size_t D);
  static TruncSeries variable(CoeffRingPtr ring, unsigned vars, std::size_t D, unsigned which);
  static TruncSeries constant(const RingElem& c, unsigned vars, std::size_t D);
  /// Raw coefficients in shape order, one block of ring coefficients per term.
  static TruncSeries from_coefficients(CoeffRingPtr ring, unsigned vars, std::size_t D,
                                       std::vector<std::int64_t> data);

  const CoeffRingPtr& ring() const noexcept { return ring_; }
  unsigned vars() const noexcept { return shape_->vars; }
  std::size_t truncation() const noexcept { return shape_->D; }

  RingElem coefficient(std::array<unsigned, 3> exponents) const;
  void set_coefficient(std::array<unsigned, 3> exponents, const RingElem& c);
  /// Univariate shorthand.
  RingElem operator[](std::size_t e) const { return coefficient({static_cast<unsigned>(e), 0, 0}); }

  bool is_zero() const noexcept;
  /// Largest e with a non-zero x^e coefficient (univariate), or -1.
  long degree() const;

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator-() const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries operator*(const RingElem& c) const;
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.shape_->vars == b.shape_->vars && a.shape_->D == b.shape_->D && a.data_ == b.data_;
  }

  /// this(args...) for a series in args.size() variables; every argument
  /// must have zero constant term and share one shape.
  TruncSeries substitute(std::span<const TruncSeries> args) const;
  /// Exchanges x and y.
  TruncSeries swap_xy() const;
  /// Univariate series with a unit constant term.
  TruncSeries inverse() const;

  /// "c·x^e + ..." with y, z exponents when present; "0" if zero.
  std::string to_string() const;
  /// [{"exponent": e, "coeff": "..."}] for univariate series, with
  /// "exponents": [i, j, ...] otherwise.
  nlohmann::json to_json() const;

 private:
  CoeffRingPtr ring_;
  std::shared_ptr<const detail::Shape> shape_;
  std::vector<std::int64_t> data_;  // size() * ring size

  void check_compatible(const TruncSeries& o) const;
};

/// Series with coefficients in Q[u_1..u_{n-1}]/(u-degree >= b): x-exponent,
/// then one rational per monomial of the ring.
using RationalSeries = std::vector<std::vector<Rational>>;

class FGLContext {
 public:
  enum class Kind { PTypical, Multiplicative };

  /// p-typical law of height n: log = sum lambda_i x^{p^i} with
  /// p lambda_i = sum_{0<j<=i} lambda_{i-j} v_j^{p^{i-j}}, v_n = 1,
  /// v_j = u_j for j < n. Requires D >= p^n + 1 (TruncationTooSmall);
  /// throws IntegralityFailure if a coefficient of F is not p-integral.
  static FGLContext build_ptypical(unsigned p, unsigned n, unsigned a, unsigned b, std::size_t D);
  /// F = x + y + xy with log(1 + x), height 1.
  static FGLContext multiplicative(unsigned p, unsigned a, std::size_t D);

  Kind kind() const noexcept { return kind_; }
  unsigned height() const noexcept { return height_; }
  const CoeffRingPtr& ring() const noexcept { return ring_; }
  std::size_t truncation() const noexcept { return law_.truncation(); }
  /// F(x, y)
  const TruncSeries& law() const noexcept { return law_; }
  const RationalSeries& logarithm() const noexcept { return log_; }
  /// x as a univariate series.
  TruncSeries x() const;
  /// F(f, g) for univariate f, g without constant term.
  TruncSeries apply(const TruncSeries& f, const TruncSeries& g) const;

 private:
  FGLContext(Kind kind, unsigned height, CoeffRingPtr ring, TruncSeries law, RationalSeries log)
      : kind_(kind), height_(height), ring_(std::move(ring)), law_(std::move(law)), log_(std::move(log)) {}

  Kind kind_;
  unsigned height_;
  CoeffRingPtr ring_;
  TruncSeries law_;
  RationalSeries log_;
};

/// exp(log x + log y) over the rational lift, checked for p-integrality and
/// reduced into the ring. `log` must start with x.
TruncSeries law_from_logarithm(const CoeffRingPtr& ring, const RationalSeries& log, std::size_t D);

struct AxiomCheck {
  bool unit = false, commutative = false, associative = false;
  bool ok() const noexcept { return unit && commutative && associative; }
};
/// F(x,0) = x, F(x,y) = F(y,x), F(F(x,y),z) = F(x,F(y,z)) below degree D.
AxiomCheck check_axioms(const FGLContext& ctx);

/// [0](x) = 0, [m](x) = F(x, [m-1](x)).
TruncSeries n_series(const FGLContext& ctx, std::uint64_t m);

struct WeierstrassResult {
  /// Monic of degree d, lower coefficients in the maximal ideal.
  TruncSeries f;
  /// Unit with f * u = g below degree D.
  TruncSeries u;
  unsigned iterations = 0;
};

/// Division of x^d by g, iterated until the remainder term vanishes (it is
/// nilpotent of order a + b - 1). Throws NotWeierstrass if g is not
/// unit * x^d modulo (p, u), TruncationTooSmall if D <= d,
/// PrecisionExhausted if the iteration fails to terminate, and
/// InternalMismatch if f * u != g.
WeierstrassResult weierstrass_prep(const FGLContext& ctx, const TruncSeries& g, std::size_t d);

/// Smallest e with a unit coefficient of x^e in g; TruncationTooSmall if
/// there is none below D.
std::size_t weierstrass_degree(const TruncSeries& g);

/// Prepares [p^k](x) at its Weierstrass degree and returns deg f. Requires
/// D > p^{kn} (TruncationTooSmall).
std::size_t torsion_rank(const FGLContext& ctx, unsigned k);

/// [p](x) reduced mod (p, u) equals x^{p^n} below degree D.
bool honda_reduction_holds(const FGLContext& ctx);

}  // namespace transchrome
