#pragma once

// Exact integer primitives shared by every other module.
//
// Big values are GMP integers; the search core works on machine words and
// uses the u64/u128 helpers at the bottom of this header.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dtuple {

using BigInt = mpz_class;
using Rational = mpq_class;
using u128 = unsigned __int128;
using i128 = __int128;

/// Arbitrary-precision integer that is never negative.
class NonNegInt {
public:
    NonNegInt() = default;
    explicit NonNegInt(BigInt v);
    NonNegInt(unsigned long v) : value_(v) {}

    const BigInt& value() const noexcept { return value_; }
    operator const BigInt&() const noexcept { return value_; }

    friend bool operator==(const NonNegInt& a, const NonNegInt& b) { return a.value_ == b.value_; }
    friend bool operator<(const NonNegInt& a, const NonNegInt& b) { return a.value_ < b.value_; }

private:
    BigInt value_{0};
};

/// floor(sqrt(x)).
NonNegInt integer_sqrt(const NonNegInt& x);

/// r >= 0 with r*r == x, or nothing. Negative x is never a square.
std::optional<NonNegInt> square_root_if_square(const BigInt& x);

bool is_perfect_square(const BigInt& x);

/// Parses "p/q", "p" or a decimal like "0.25" into an exact canonical rational.
Rational parse_rational(std::string_view text);

/// Decimal integer parse; throws std::invalid_argument on junk.
BigInt parse_bigint(std::string_view text);

std::string to_decimal(const BigInt& v);

/// "p/q" with q > 0 (always written with a slash, even when q == 1).
std::string to_fraction_string(const Rational& q);

BigInt ipow(const BigInt& base, unsigned long exp);

/// Bit length of |v| (0 for v == 0).
std::size_t bit_length(const BigInt& v);

/// Compares x against base^exp without allocating base^exp when the
/// bit lengths already decide it. Returns <0, 0, >0 like a three-way compare.
int compare_with_power(const BigInt& x, const BigInt& base, unsigned long exp);

// ---------------------------------------------------------------------------
// Machine-word fast path.

std::uint64_t isqrt_u128(u128 x);

/// Cheap residue filter: false means x is certainly not a square.
bool maybe_square_u128(u128 x);

bool is_square_u128(u128 x, std::uint64_t& root);

inline bool is_square_i128(i128 x, std::uint64_t& root) {
    if (x < 0) return false;
    return is_square_u128(static_cast<u128>(x), root);
}

/// All t in [0, m) with t*t == n (mod m), ascending. Factors m by trial
/// division, so m must stay below kSqrtModLimit (std::domain_error otherwise).
inline constexpr std::uint64_t kSqrtModLimit = std::uint64_t{1} << 40;
std::vector<std::uint64_t> sqrt_mod(std::int64_t n, std::uint64_t m);

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
};

/// Same, for m given by its factorization (distinct primes).
std::vector<std::uint64_t> sqrt_mod(std::int64_t n, std::span<const PrimePower> factorization);

/// Trial division.
std::vector<PrimePower> factorize(std::uint64_t m);

BigInt from_u128(u128 v);
BigInt from_i64(std::int64_t v);

/// Converts when the value fits, otherwise nothing.
std::optional<std::int64_t> to_i64(const BigInt& v);
std::optional<std::uint64_t> to_u64(const BigInt& v);

}  // namespace dtuple
