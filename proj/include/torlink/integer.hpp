#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace torlink {

// Arbitrary-precision integer used by every algebra module.
using Integer = mpz_class;

// Least non-negative residue of a modulo m (m > 0).
Integer mod(const Integer& a, const Integer& m);

// Floor division (rounds toward negative infinity).
Integer floor_div(const Integer& a, const Integer& b);

Integer gcd(const Integer& a, const Integer& b);

// Returns g = gcd(a, b) >= 0 together with s, t such that s*a + t*b = g.
struct ExtendedGcd {
  Integer g, s, t;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

// Inverse of a modulo m; requires gcd(a, m) == 1.
Integer inverse_mod(const Integer& a, const Integer& m);

// A unit u modulo n with u*a = gcd(a, n) (mod n).
Integer normalizing_unit(const Integer& a, const Integer& n);

bool is_prime(const Integer& n);

// Integer square root if n is a perfect square, -1 otherwise.
Integer exact_sqrt(const Integer& n);

Integer parse_integer(std::string_view text);

std::string to_string(const Integer& a);

// Exact narrowing; throws std::overflow_error if a does not fit.
std::int64_t to_int64(const Integer& a);
std::uint64_t to_uint64(const Integer& a);

}  // namespace torlink
