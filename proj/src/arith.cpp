#include "transchrome/arith.hpp"

#include <cstdlib>
#include <string>

#include "transchrome/error.hpp"

namespace transchrome {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::ActionNotClosed: return "ActionNotClosed";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::OrderNotPPower: return "OrderNotPPower";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::InternalMismatch: return "InternalMismatch";
    case ErrorKind::IntegralityFailure: return "IntegralityFailure";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::NotWeierstrass: return "NotWeierstrass";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
  }
  return r;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  auto r = checked_pow(base, exp);
  if (!r) throw Error(ErrorKind::ResourceLimit, "integer power overflows 64 bits");
  return *r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::ResourceLimit, "integer product overflows 64 bits");
  return r;
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) r = checked_mul(r, i);
  return r;
}

std::optional<unsigned> exact_log(std::uint64_t n, std::uint64_t p) noexcept {
  if (n == 0 || p < 2) return std::nullopt;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) return std::nullopt;
  return e;
}

std::size_t max_group_elements() {
  if (const char* env = std::getenv("TRANSCHROME_MAX_ELEMENTS")) {
    try {
      auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1'000'000;
}

}  // namespace transchrome
