#include "transchrome/fgl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "transchrome/arith.hpp"
#include "transchrome/error.hpp"

namespace transchrome {

namespace {

constexpr std::uint64_t kMaxMultiplier = 4096;

std::int64_t mod(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

/// Inverse of a mod m for gcd(a, m) = 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw Error(ErrorKind::InternalMismatch, "inverting a non-unit");
  return mod(s0, m);
}

}  // namespace

// ---------------------------------------------------------------- CoeffRing

CoeffRing::CoeffRing(unsigned p, unsigned precision, unsigned params, unsigned u_truncation)
    : p_(p), precision_(precision), params_(params), u_truncation_(u_truncation) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParameters, std::to_string(p) + " is not prime");
  if (precision == 0 || u_truncation == 0) throw Error(ErrorKind::BadParameters, "need a >= 1 and b >= 1");
  auto m = checked_pow(p, precision);
  if (!m || *m >= (1ULL << 31)) throw Error(ErrorKind::BadParameters, "p^a must stay below 2^31");
  modulus_ = static_cast<std::int64_t>(*m);

  // Graded monomials; u_1 varies slowest within a degree.
  std::vector<unsigned> e(params, 0);
  for (unsigned deg = 0; deg < (params ? u_truncation : 1); ++deg) {
    std::function<void(unsigned, unsigned)> rec = [&](unsigned var, unsigned left) {
      if (var + 1 >= params) {
        if (params) e[var] = left;
        monomials_.push_back(e);
        return;
      }
      for (unsigned a = left + 1; a-- > 0;) {
        e[var] = a;
        rec(var + 1, left - a);
      }
      e[var] = 0;
    };
    if (params == 0)
      monomials_.push_back(e);
    else
      rec(0, deg);
  }
  const std::size_t M = monomials_.size();
  product_.assign(M * M, -1);
  std::vector<unsigned> sum(params);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      for (unsigned v = 0; v < params; ++v) sum[v] = monomials_[i][v] + monomials_[j][v];
      product_[i * M + j] = index_of(sum);
    }
}

int CoeffRing::index_of(std::span<const unsigned> exponents) const {
  if (exponents.size() != params_) throw Error(ErrorKind::BadParameters, "wrong number of u-exponents");
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    if (std::equal(exponents.begin(), exponents.end(), monomials_[i].begin())) return static_cast<int>(i);
  return -1;
}

std::string CoeffRing::monomial_name(std::size_t i) const {
  std::string out;
  const auto& e = monomials_.at(i);
  for (unsigned v = 0; v < params_; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += "u" + std::to_string(v + 1);
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

// ---------------------------------------------------------------- RingElem

RingElem::RingElem(CoeffRingPtr ring, std::int64_t constant) : ring_(std::move(ring)), c_(ring_->size(), 0) {
  c_[0] = mod(constant, ring_->modulus());
}

RingElem RingElem::u(CoeffRingPtr ring, unsigned i) {
  if (i == 0 || i > ring->params()) throw Error(ErrorKind::BadParameters, "no parameter u" + std::to_string(i));
  std::vector<unsigned> e(ring->params(), 0);
  e[i - 1] = 1;
  RingElem out(ring, 0);
  if (auto idx = ring->index_of(e); idx >= 0) out.c_[static_cast<std::size_t>(idx)] = 1;
  return out;
}

bool RingElem::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

bool RingElem::is_unit() const noexcept { return c_[0] % ring_->p() != 0; }

RingElem RingElem::operator+(const RingElem& o) const {
  RingElem out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = mod(c_[i] + o.c_[i], ring_->modulus());
  return out;
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator-() const {
  RingElem out = *this;
  for (auto& v : out.c_) v = mod(-v, ring_->modulus());
  return out;
}

RingElem RingElem::operator*(const RingElem& o) const {
  RingElem out(ring_, 0);
  const std::size_t M = c_.size();
  for (std::size_t s = 0; s < M; ++s) {
    if (c_[s] == 0) continue;
    for (std::size_t t = 0; t < M; ++t) {
      const int pr = ring_->product(s, t);
      if (pr < 0 || o.c_[t] == 0) continue;
      auto& slot = out.c_[static_cast<std::size_t>(pr)];
      slot = (slot + c_[s] * o.c_[t]) % ring_->modulus();
    }
  }
  return out;
}

RingElem RingElem::inverse() const {
  if (!is_unit()) throw Error(ErrorKind::BadParameters, to_string() + " is not a unit");
  // c = r (1 + n) with n nilpotent; 1/c = r^-1 (1 - n + n^2 - ...).
  const RingElem r_inv(ring_, inverse_mod(c_[0], ring_->modulus()));
  const RingElem n = (*this) * r_inv - RingElem(ring_, 1);
  RingElem sum(ring_, 1), term(ring_, 1);
  for (unsigned i = 0; i < ring_->precision() + ring_->u_truncation(); ++i) {
    term = -(term * n);
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum * r_inv;
}

std::string RingElem::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += '+';
    const std::string name = ring_->monomial_name(i);
    if (name.empty())
      out += std::to_string(c_[i]);
    else if (c_[i] == 1)
      out += name;
    else
      out += std::to_string(c_[i]) + "*" + name;
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- shapes

namespace detail {

std::shared_ptr<const Shape> shape_for(unsigned vars, std::size_t D) {
  if (vars < 1 || vars > 3) throw Error(ErrorKind::BadParameters, "series need 1 to 3 variables");
  if (D == 0 || D > 4096) throw Error(ErrorKind::BadParameters, "truncation degree out of range");
  static std::mutex lock;
  static std::map<std::pair<unsigned, std::size_t>, std::shared_ptr<const Shape>> cache;
  std::lock_guard guard(lock);
  if (auto it = cache.find({vars, D}); it != cache.end()) return it->second;

  auto s = std::make_shared<Shape>();
  s->vars = vars;
  s->D = D;
  std::uint64_t table = 1;
  for (unsigned v = 0; v < vars; ++v) table *= D;
  if (table > 20'000'000) throw Error(ErrorKind::ResourceLimit, "series shape too large");
  s->lookup.assign(table, -1);
  for (std::size_t deg = 0; deg < D; ++deg) {
    s->degree_start.push_back(s->exponents.size());
    // x-exponent descending within a degree
    for (std::size_t i = deg + 1; i-- > 0;) {
      if (vars == 1) {
        if (i != deg) continue;
        s->exponents.push_back({static_cast<std::uint16_t>(i), 0, 0});
        continue;
      }
      for (std::size_t j = deg - i + 1; j-- > 0;) {
        const std::size_t k = deg - i - j;
        if (vars == 2 && k != 0) continue;
        s->exponents.push_back(
            {static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(k)});
      }
    }
  }
  s->degree_start.push_back(s->exponents.size());
  for (std::size_t i = 0; i < s->exponents.size(); ++i) s->lookup[s->key(s->exponents[i])] = static_cast<int>(i);
  cache.emplace(std::make_pair(vars, D), s);
  return s;
}

}  // namespace detail

namespace {

using detail::Shape;

/// Indices of terms with a non-zero coefficient and degree below `limit`.
template <class T>
std::vector<std::size_t> support(const Shape& S, std::size_t M, const std::vector<T>& v, std::size_t limit) {
  std::vector<std::size_t> out;
  const std::size_t end = S.degree_start[std::min(limit, S.D)];
  for (std::size_t i = 0; i < end; ++i)
    for (std::size_t s = 0; s < M; ++s)
      if (v[i * M + s] != 0) {
        out.push_back(i);
        break;
      }
  return out;
}

/// out += a * b, keeping total degree < limit.
template <class T, class MulAdd>
void mul_into(const Shape& S, const CoeffRing& R, const std::vector<T>& a, const std::vector<T>& b,
              std::vector<T>& out, std::size_t limit, MulAdd madd) {
  const std::size_t M = R.size();
  auto na = support(S, M, a, limit), nb = support(S, M, b, limit);
  const bool swap = na.size() > nb.size();
  const auto& outer = swap ? nb : na;
  const auto& inner = swap ? na : nb;
  const auto& va = swap ? b : a;
  const auto& vb = swap ? a : b;
  for (auto i : outer) {
    const unsigned di = S.degree(i);
    const auto ki = S.key(S.exponents[i]);
    for (auto j : inner) {
      if (di + S.degree(j) >= limit) break;
      const auto idx = static_cast<std::size_t>(S.lookup[ki + S.key(S.exponents[j])]);
      for (std::size_t s = 0; s < M; ++s) {
        const T& x = va[i * M + s];
        if (x == 0) continue;
        for (std::size_t t = 0; t < M; ++t) {
          const int pr = R.product(s, t);
          if (pr < 0) continue;
          const T& y = vb[j * M + t];
          if (y == 0) continue;
          madd(out[idx * M + static_cast<std::size_t>(pr)], x, y);
        }
      }
    }
  }
}

// ---- exact rational lift, used only while building a law

struct QSeries {
  const Shape* shape;
  const CoeffRing* ring;
  std::vector<Rational> data;

  QSeries(const Shape& s, const CoeffRing& r) : shape(&s), ring(&r), data(s.size() * r.size()) {}
  std::size_t M() const { return ring->size(); }
};

void q_madd(Rational& acc, const Rational& x, const Rational& y) { acc += x * y; }

QSeries q_mul(const QSeries& a, const QSeries& b, std::size_t limit) {
  QSeries out(*a.shape, *a.ring);
  mul_into(*a.shape, *a.ring, a.data, b.data, out.data, limit, q_madd);
  return out;
}

QSeries q_add(QSeries a, const QSeries& b, int sign = 1) {
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += sign * b.data[i];
  return a;
}

/// Univariate: log evaluated at e, i.e. sum_j l_j e^j (powers memoized).
QSeries q_compose(const RationalSeries& log, const QSeries& e, std::map<std::size_t, QSeries>& pow_memo) {
  const Shape& S = *e.shape;
  const CoeffRing& R = *e.ring;
  const std::size_t M = R.size();
  std::function<const QSeries&(std::size_t)> power = [&](std::size_t j) -> const QSeries& {
    if (auto it = pow_memo.find(j); it != pow_memo.end()) return it->second;
    QSeries v(S, R);
    if (j == 0) {
      v.data[0] = 1;
    } else if (j == 1) {
      v = e;
    } else if (j % 2 == 0) {
      const QSeries& h = power(j / 2);
      v = q_mul(h, h, S.D);
    } else {
      v = q_mul(power(j - 1), e, S.D);
    }
    return pow_memo.emplace(j, std::move(v)).first->second;
  };
  QSeries out(S, R);
  for (std::size_t j = 0; j < log.size() && j < S.D; ++j) {
    if (std::all_of(log[j].begin(), log[j].end(), [](const Rational& r) { return r == 0; })) continue;
    QSeries c(S, R);
    for (std::size_t s = 0; s < M; ++s) c.data[s] = log[j][s];
    out = q_add(out, q_mul(power(j), c, S.D));
  }
  return out;
}

RationalSeries derivative(const RationalSeries& f) {
  RationalSeries out(f.size(), std::vector<Rational>(f.empty() ? 0 : f[0].size()));
  for (std::size_t j = 1; j < f.size(); ++j)
    for (std::size_t s = 0; s < f[j].size(); ++s) out[j - 1][s] = f[j][s] * Rational(j);
  return out;
}

/// Inverse of a univariate rational series with constant term 1.
QSeries q_inverse(const QSeries& c) {
  const Shape& S = *c.shape;
  const std::size_t M = c.M();
  QSeries out(S, *c.ring);
  out.data[0] = 1;
  for (std::size_t e = 1; e < S.D; ++e) {
    std::vector<Rational> acc(M);
    for (std::size_t j = 1; j <= e; ++j)
      for (std::size_t s = 0; s < M; ++s) {
        if (c.data[j * M + s] == 0) continue;
        for (std::size_t t = 0; t < M; ++t) {
          const int pr = c.ring->product(s, t);
          if (pr >= 0) acc[static_cast<std::size_t>(pr)] -= c.data[j * M + s] * out.data[(e - j) * M + t];
        }
      }
    for (std::size_t s = 0; s < M; ++s) out.data[e * M + s] = acc[s];
  }
  return out;
}

/// Compositional inverse of log by Newton iteration e <- e - (log(e) - x) / log'(e).
QSeries q_exp(const RationalSeries& log, const Shape& S, const CoeffRing& R) {
  const std::size_t M = R.size();
  const RationalSeries dlog = derivative(log);
  QSeries x(S, R);
  if (S.D > 1) x.data[1 * M] = 1;
  QSeries e = x;
  for (std::size_t iter = 0; iter < 2 * S.D + 2; ++iter) {
    std::map<std::size_t, QSeries> memo;
    const QSeries value = q_compose(log, e, memo);
    const QSeries slope = q_compose(dlog, e, memo);
    const QSeries step = q_mul(q_add(value, x, -1), q_inverse(slope), S.D);
    if (std::all_of(step.data.begin(), step.data.end(), [](const Rational& r) { return r == 0; })) return e;
    e = q_add(e, step, -1);
  }
  throw Error(ErrorKind::InternalMismatch, "logarithm inversion did not converge");
}

}  // namespace

// ---------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(CoeffRingPtr ring, unsigned vars, std::size_t D)
    : ring_(std::move(ring)), shape_(detail::shape_for(vars, D)), data_(shape_->size() * ring_->size(), 0) {}

TruncSeries TruncSeries::variable(CoeffRingPtr ring, unsigned vars, std::size_t D, unsigned which) {
  if (which >= vars) throw Error(ErrorKind::BadParameters, "variable index out of range");
  TruncSeries out(std::move(ring), vars, D);
  if (D > 1) {
    std::array<unsigned, 3> e{0, 0, 0};
    e[which] = 1;
    out.set_coefficient(e, RingElem(out.ring_, 1));
  }
  return out;
}

TruncSeries TruncSeries::from_coefficients(CoeffRingPtr ring, unsigned vars, std::size_t D,
                                           std::vector<std::int64_t> data) {
  TruncSeries out(std::move(ring), vars, D);
  if (data.size() != out.data_.size()) throw Error(ErrorKind::BadParameters, "wrong number of series coefficients");
  for (auto& v : data) v = mod(v, out.ring_->modulus());
  out.data_ = std::move(data);
  return out;
}

TruncSeries TruncSeries::constant(const RingElem& c, unsigned vars, std::size_t D) {
  TruncSeries out(c.ring(), vars, D);
  out.set_coefficient({0, 0, 0}, c);
  return out;
}

namespace {
std::size_t term_index(const detail::Shape& S, std::array<unsigned, 3> e) {
  for (unsigned v = S.vars; v < 3; ++v)
    if (e[v] != 0) throw Error(ErrorKind::BadParameters, "exponent for a missing variable");
  if (e[0] + e[1] + e[2] >= S.D) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(S.lookup[S.key({static_cast<std::uint16_t>(e[0]), static_cast<std::uint16_t>(e[1]),
                                                  static_cast<std::uint16_t>(e[2])})]);
}
}  // namespace

RingElem TruncSeries::coefficient(std::array<unsigned, 3> exponents) const {
  const auto idx = term_index(*shape_, exponents);
  if (idx == static_cast<std::size_t>(-1)) return RingElem(ring_, 0);
  const std::size_t M = ring_->size();
  return RingElem(ring_, std::vector<std::int64_t>(data_.begin() + static_cast<long>(idx * M),
                                                   data_.begin() + static_cast<long>((idx + 1) * M)));
}

void TruncSeries::set_coefficient(std::array<unsigned, 3> exponents, const RingElem& c) {
  const auto idx = term_index(*shape_, exponents);
  if (idx == static_cast<std::size_t>(-1)) return;
  std::copy(c.coefficients().begin(), c.coefficients().end(), data_.begin() + static_cast<long>(idx * ring_->size()));
}

bool TruncSeries::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t v) { return v == 0; });
}

long TruncSeries::degree() const {
  if (vars() != 1) throw Error(ErrorKind::BadParameters, "degree of a multivariate series");
  for (std::size_t e = shape_->D; e-- > 0;)
    if (!(*this)[e].is_zero()) return static_cast<long>(e);
  return -1;
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
  if (!(*ring_ == *o.ring_) || shape_ != o.shape_)
    throw Error(ErrorKind::BadParameters, "series over different rings or truncations");
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  check_compatible(o);
  TruncSeries out = *this;
  const auto m = ring_->modulus();
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + o.data_[i]) % m;
  return out;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries out = *this;
  for (auto& v : out.data_) v = mod(-v, ring_->modulus());
  return out;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  check_compatible(o);
  TruncSeries out(ring_, vars(), truncation());
  const auto m = ring_->modulus();
  mul_into(*shape_, *ring_, data_, o.data_, out.data_, shape_->D,
           [m](std::int64_t& acc, std::int64_t x, std::int64_t y) { acc = (acc + x * y) % m; });
  return out;
}

TruncSeries TruncSeries::operator*(const RingElem& c) const { return *this * constant(c, vars(), truncation()); }

TruncSeries TruncSeries::substitute(std::span<const TruncSeries> args) const {
  if (args.size() != vars() || vars() > 2) throw Error(ErrorKind::BadParameters, "substitution needs one argument per variable (at most two)");
  for (const auto& a : args) {
    args[0].check_compatible(a);
    if (!(*a.ring_ == *ring_)) throw Error(ErrorKind::BadParameters, "substituting across rings");
    if (!a.coefficient({0, 0, 0}).is_zero()) throw Error(ErrorKind::BadParameters, "argument has a constant term");
  }
  const std::size_t D = std::min(truncation(), args[0].truncation());
  const unsigned out_vars = args[0].vars();
  const std::size_t outD = args[0].truncation();
  auto horner = [&](const std::vector<TruncSeries>& coeffs, const TruncSeries& s) {
    // sum_j coeffs[j] s^j; the partial sum at step j only matters below degree outD - j.
    TruncSeries acc(ring_, out_vars, outD);
    const auto m = ring_->modulus();
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      TruncSeries next = coeffs[j];
      mul_into(*acc.shape_, *ring_, acc.data_, s.data_, next.data_, outD - j,
               [m](std::int64_t& a, std::int64_t x, std::int64_t y) { a = (a + x * y) % m; });
      acc = std::move(next);
    }
    return acc;
  };
  auto as_constant = [&](std::array<unsigned, 3> e) { return constant(coefficient(e), out_vars, outD); };

  if (vars() == 1) {
    std::vector<TruncSeries> coeffs;
    for (unsigned j = 0; j < D; ++j) coeffs.push_back(as_constant({j, 0, 0}));
    return horner(coeffs, args[0]);
  }
  // F(s1, s2) = sum_j (sum_i a_ij s1^i) s2^j
  std::vector<TruncSeries> powers{constant(RingElem(ring_, 1), out_vars, outD)};
  for (std::size_t i = 1; i < D; ++i) powers.push_back(powers.back() * args[0]);
  std::vector<TruncSeries> coeffs;
  for (unsigned j = 0; j < D; ++j) {
    TruncSeries a(ring_, out_vars, outD);
    for (unsigned i = 0; i + j < D; ++i) {
      const RingElem c = coefficient({i, j, 0});
      if (!c.is_zero()) a = a + powers[i] * c;
    }
    coeffs.push_back(std::move(a));
  }
  return horner(coeffs, args[1]);
}

TruncSeries TruncSeries::swap_xy() const {
  if (vars() < 2) throw Error(ErrorKind::BadParameters, "swap_xy needs two variables");
  TruncSeries out(ring_, vars(), truncation());
  for (const auto& e : shape_->exponents) {
    std::array<unsigned, 3> from{e[0], e[1], e[2]}, to{e[1], e[0], e[2]};
    out.set_coefficient(to, coefficient(from));
  }
  return out;
}

TruncSeries TruncSeries::inverse() const {
  if (vars() != 1) throw Error(ErrorKind::BadParameters, "inverse of a multivariate series");
  const RingElem c0_inv = (*this)[0].inverse();
  TruncSeries out(ring_, 1, truncation());
  out.set_coefficient({0, 0, 0}, c0_inv);
  for (unsigned e = 1; e < truncation(); ++e) {
    RingElem acc(ring_, 0);
    for (unsigned j = 1; j <= e; ++j) acc = acc + (*this)[j] * out[e - j];
    out.set_coefficient({e, 0, 0}, -(acc * c0_inv));
  }
  return out;
}

std::string TruncSeries::to_string() const {
  static const char* names[] = {"x", "y", "z"};
  std::string out;
  for (const auto& e : shape_->exponents) {
    const RingElem c = coefficient({e[0], e[1], e[2]});
    if (c.is_zero()) continue;
    std::string coeff = c.to_string();
    if (coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
    std::string term = coeff;
    for (unsigned v = 0; v < vars(); ++v)
      if (e[v] != 0) term += std::string("·") + names[v] + "^" + std::to_string(e[v]);
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

nlohmann::json TruncSeries::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : shape_->exponents) {
    const RingElem c = coefficient({e[0], e[1], e[2]});
    if (c.is_zero()) continue;
    if (vars() == 1) {
      out.push_back({{"exponent", e[0]}, {"coeff", c.to_string()}});
    } else {
      std::vector<unsigned> ex(e.begin(), e.begin() + vars());
      out.push_back({{"exponents", ex}, {"coeff", c.to_string()}});
    }
  }
  return out;
}

// ---------------------------------------------------------------- laws

TruncSeries law_from_logarithm(const CoeffRingPtr& ring, const RationalSeries& log, std::size_t D) {
  const std::size_t M = ring->size();
  if (log.size() < 2 || log[1].size() != M || log[1][0] != 1)
    throw Error(ErrorKind::BadParameters, "logarithm must start with x");
  for (std::size_t s = 1; s < M; ++s)
    if (log[1][s] != 0) throw Error(ErrorKind::BadParameters, "logarithm must start with x");
  if (!log[0].empty() && std::any_of(log[0].begin(), log[0].end(), [](const Rational& r) { return r != 0; }))
    throw Error(ErrorKind::BadParameters, "logarithm has a constant term");

  const Shape& S1 = *detail::shape_for(1, D);
  const Shape& S2 = *detail::shape_for(2, D);
  const QSeries e = q_exp(log, S1, *ring);

  // z = log x + log y
  QSeries z(S2, *ring);
  for (std::size_t j = 1; j < log.size() && j < D; ++j)
    for (std::size_t s = 0; s < M; ++s) {
      if (log[j][s] == 0) continue;
      z.data[static_cast<std::size_t>(S2.lookup[S2.key({static_cast<std::uint16_t>(j), 0, 0})]) * M + s] = log[j][s];
      z.data[static_cast<std::size_t>(S2.lookup[S2.key({0, static_cast<std::uint16_t>(j), 0})]) * M + s] = log[j][s];
    }

  // F = exp(z) by Horner; the partial sum at step j only matters below degree D - j.
  QSeries acc(S2, *ring);
  for (std::size_t j = D; j-- > 1;) {
    QSeries next(S2, *ring);
    for (std::size_t s = 0; s < M; ++s) next.data[s] = e.data[j * M + s];
    mul_into(S2, *ring, acc.data, z.data, next.data, D - j, q_madd);
    acc = std::move(next);
  }
  QSeries F(S2, *ring);
  mul_into(S2, *ring, acc.data, z.data, F.data, D, q_madd);

  std::vector<std::int64_t> values(F.data.size());
  const BigInt m = ring->modulus();
  for (std::size_t i = 0; i < F.data.size(); ++i) {
    const Rational& q = F.data[i];
    const BigInt den = boost::multiprecision::denominator(q);
    if (den % ring->p() == 0) {
      const auto& ex = S2.exponents[i / M];
      throw Error(ErrorKind::IntegralityFailure, "coefficient " + to_string(q) + " of x^" + std::to_string(ex[0]) +
                                                     " y^" + std::to_string(ex[1]) + " " +
                                                     ring->monomial_name(i % M) + " is not p-integral");
    }
    BigInt num = boost::multiprecision::numerator(q) % m;
    if (num < 0) num += m;
    const auto d = static_cast<std::int64_t>(den % m);
    const auto nm = static_cast<std::int64_t>(num);
    values[i] = static_cast<std::int64_t>((static_cast<__int128>(nm) * inverse_mod(d, ring->modulus())) %
                                          ring->modulus());
  }
  return TruncSeries::from_coefficients(ring, 2, D, std::move(values));
}

FGLContext FGLContext::build_ptypical(unsigned p, unsigned n, unsigned a, unsigned b, std::size_t D) {
  if (n == 0) throw Error(ErrorKind::BadParameters, "height must be at least 1");
  auto ring = std::make_shared<const CoeffRing>(p, a, n - 1, b);
  const auto pn = checked_pow(p, n);
  if (!pn || D < *pn + 1) throw Error(ErrorKind::TruncationTooSmall, "need D >= p^n + 1");
  const std::size_t M = ring->size();

  // lambda_i as rational combinations of u-monomials
  std::vector<std::vector<Rational>> lambda{std::vector<Rational>(M)};
  lambda[0][0] = 1;
  for (unsigned i = 1; ipow(p, i) < D; ++i) {
    std::vector<Rational> acc(M);
    for (unsigned j = 1; j <= std::min(i, n); ++j) {
      // v_j^{p^{i-j}}: 1 for j = n, a pure power of u_j otherwise
      int v_index = 0;
      if (j < n) {
        std::vector<unsigned> e(n - 1, 0);
        const auto power = checked_pow(p, i - j);
        if (!power || *power >= b) continue;
        e[j - 1] = static_cast<unsigned>(*power);
        v_index = ring->index_of(e);
        if (v_index < 0) continue;
      }
      for (std::size_t s = 0; s < M; ++s) {
        const int pr = ring->product(s, static_cast<std::size_t>(v_index));
        if (pr >= 0) acc[static_cast<std::size_t>(pr)] += lambda[i - j][s];
      }
    }
    for (auto& v : acc) v /= p;
    lambda.push_back(std::move(acc));
  }
  RationalSeries log(D, std::vector<Rational>(M));
  for (std::size_t i = 0; i < lambda.size(); ++i) log[ipow(p, static_cast<unsigned>(i))] = lambda[i];

  TruncSeries law = law_from_logarithm(ring, log, D);
  return FGLContext(Kind::PTypical, n, ring, std::move(law), std::move(log));
}

FGLContext FGLContext::multiplicative(unsigned p, unsigned a, std::size_t D) {
  auto ring = std::make_shared<const CoeffRing>(p, a, 0, 1);
  if (D < static_cast<std::size_t>(p) + 1) throw Error(ErrorKind::TruncationTooSmall, "need D >= p + 1");
  TruncSeries law(ring, 2, D);
  const RingElem one(ring, 1);
  law.set_coefficient({1, 0, 0}, one);
  law.set_coefficient({0, 1, 0}, one);
  law.set_coefficient({1, 1, 0}, one);
  RationalSeries log(D, std::vector<Rational>(1));
  for (std::size_t j = 1; j < D; ++j) log[j][0] = Rational(j % 2 ? 1 : -1, static_cast<long long>(j));
  return FGLContext(Kind::Multiplicative, 1, ring, std::move(law), std::move(log));
}

TruncSeries FGLContext::x() const { return TruncSeries::variable(ring_, 1, truncation(), 0); }

TruncSeries FGLContext::apply(const TruncSeries& f, const TruncSeries& g) const {
  const std::array<TruncSeries, 2> args{f, g};
  return law_.substitute(args);
}

AxiomCheck check_axioms(const FGLContext& ctx) {
  const auto& F = ctx.law();
  const auto& ring = ctx.ring();
  const std::size_t D = ctx.truncation();
  AxiomCheck out;

  const TruncSeries x = ctx.x(), zero(ring, 1, D);
  out.unit = ctx.apply(x, zero) == x && ctx.apply(zero, x) == x;
  out.commutative = F.swap_xy() == F;

  const TruncSeries x3 = TruncSeries::variable(ring, 3, D, 0), y3 = TruncSeries::variable(ring, 3, D, 1),
                    z3 = TruncSeries::variable(ring, 3, D, 2);
  const std::array<TruncSeries, 2> xy{x3, y3}, yz{y3, z3};
  const std::array<TruncSeries, 2> left{F.substitute(xy), z3}, right{x3, F.substitute(yz)};
  out.associative = F.substitute(left) == F.substitute(right);
  return out;
}

TruncSeries n_series(const FGLContext& ctx, std::uint64_t m) {
  if (ctx.truncation() < 2) throw Error(ErrorKind::TruncationTooSmall, "need D >= 2");
  if (m > kMaxMultiplier) throw Error(ErrorKind::ResourceLimit, "multiplier above 4096");
  const TruncSeries x = ctx.x();
  TruncSeries out(ctx.ring(), 1, ctx.truncation());
  for (std::uint64_t i = 0; i < m; ++i) out = ctx.apply(x, out);
  return out;
}

std::size_t weierstrass_degree(const TruncSeries& g) {
  if (g.vars() != 1) throw Error(ErrorKind::BadParameters, "Weierstrass degree of a multivariate series");
  for (std::size_t e = 0; e < g.truncation(); ++e)
    if (g[e].is_unit()) return e;
  throw Error(ErrorKind::TruncationTooSmall, "no unit coefficient below degree D");
}

namespace {

/// Coefficients of degree >= d, shifted down by d.
TruncSeries shift_down(const TruncSeries& q, std::size_t d) {
  TruncSeries out(q.ring(), 1, q.truncation());
  for (std::size_t e = d; e < q.truncation(); ++e) out.set_coefficient({static_cast<unsigned>(e - d), 0, 0}, q[e]);
  return out;
}

TruncSeries low_part(const TruncSeries& q, std::size_t d) {
  TruncSeries out(q.ring(), 1, q.truncation());
  for (std::size_t e = 0; e < d && e < q.truncation(); ++e) out.set_coefficient({static_cast<unsigned>(e), 0, 0}, q[e]);
  return out;
}

}  // namespace

WeierstrassResult weierstrass_prep(const FGLContext& ctx, const TruncSeries& g, std::size_t d) {
  const auto& ring = ctx.ring();
  const std::size_t D = ctx.truncation();
  if (g.vars() != 1 || g.truncation() != D || !(*g.ring() == *ring))
    throw Error(ErrorKind::BadParameters, "series does not belong to this context");
  if (D <= d) throw Error(ErrorKind::TruncationTooSmall, "need D > d");
  for (std::size_t e = 0; e < d; ++e)
    if (g[e].is_unit())
      throw Error(ErrorKind::NotWeierstrass, "coefficient of x^" + std::to_string(e) + " is a unit");
  if (!g[d].is_unit()) throw Error(ErrorKind::NotWeierstrass, "coefficient of x^" + std::to_string(d) + " is not a unit");

  // g = B + x^d G. Keep x^d = c g + r + q, shrinking q into higher powers
  // of the maximal ideal until it vanishes.
  const TruncSeries G_inv = shift_down(g, d).inverse();
  const TruncSeries B = low_part(g, d);
  TruncSeries q(ring, 1, D), c(ring, 1, D), r(ring, 1, D);
  q.set_coefficient({static_cast<unsigned>(d), 0, 0}, RingElem(ring, 1));
  const unsigned bound = ring->precision() + ring->u_truncation();
  unsigned iterations = 0;
  while (!q.is_zero()) {
    if (iterations++ > bound) throw Error(ErrorKind::PrecisionExhausted, "Weierstrass division did not terminate");
    const TruncSeries a = shift_down(q, d) * G_inv;
    r = r + low_part(q, d);
    c = c + a;
    q = -(a * B);
  }

  TruncSeries f = -r;
  f.set_coefficient({static_cast<unsigned>(d), 0, 0}, RingElem(ring, 1));
  TruncSeries u = c.inverse();
  if (!(f * u == g)) throw Error(ErrorKind::InternalMismatch, "f * u differs from g below degree D");
  return WeierstrassResult{std::move(f), std::move(u), iterations};
}

std::size_t torsion_rank(const FGLContext& ctx, unsigned k) {
  const auto p = ctx.ring()->p();
  const auto expected = checked_pow(p, k * ctx.height());
  if (!expected || ctx.truncation() <= *expected)
    throw Error(ErrorKind::TruncationTooSmall, "need D > p^{kn}");
  const TruncSeries g = n_series(ctx, ipow(p, k));
  const auto result = weierstrass_prep(ctx, g, weierstrass_degree(g));
  return static_cast<std::size_t>(result.f.degree());
}

bool honda_reduction_holds(const FGLContext& ctx) {
  const auto p = ctx.ring()->p();
  const auto target = ipow(p, ctx.height());
  const TruncSeries g = n_series(ctx, p);
  for (std::size_t e = 0; e < ctx.truncation(); ++e)
    if (g[e].residue() != (e == target ? 1 : 0)) return false;
  return true;
}

}  // namespace transchrome
