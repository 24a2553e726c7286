#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace transchrome {

bool is_prime(std::uint64_t n) noexcept;

/// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept;

/// base^exp; throws ResourceLimit on overflow.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// a*b; throws ResourceLimit on overflow.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// n!; throws ResourceLimit on overflow.
std::uint64_t factorial(unsigned n);

/// Exponent e with p^e == n, or nullopt if n is not a power of p.
std::optional<unsigned> exact_log(std::uint64_t n, std::uint64_t p) noexcept;

/// Element cap for group closures; TRANSCHROME_MAX_ELEMENTS overrides the
/// default of 10^6.
std::size_t max_group_elements();

}  // namespace transchrome
