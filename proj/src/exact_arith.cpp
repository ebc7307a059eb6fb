#include "dtuple/exact_arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dtuple {

NonNegInt::NonNegInt(BigInt v) : value_(std::move(v)) {
    if (sgn(value_) < 0) throw std::domain_error("NonNegInt: negative value " + value_.get_str());
}

NonNegInt integer_sqrt(const NonNegInt& x) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), x.value().get_mpz_t());
    return NonNegInt(std::move(r));
}

std::optional<NonNegInt> square_root_if_square(const BigInt& x) {
    if (sgn(x) < 0) return std::nullopt;
    BigInt r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t());
    if (sgn(rem) != 0) return std::nullopt;
    return NonNegInt(std::move(r));
}

bool is_perfect_square(const BigInt& x) {
    return sgn(x) >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("malformed integer '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s, 10);
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    Rational q;
    if (slash != std::string_view::npos) {
        BigInt num = parse_bigint(text.substr(0, slash));
        BigInt den = parse_bigint(text.substr(slash + 1));
        if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        q = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        bool neg = !whole.empty() && whole[0] == '-';
        std::string digits = std::string(whole.empty() || whole == "-" ? "0" : (neg ? whole.substr(1) : whole)) +
                             std::string(frac);
        BigInt num = parse_bigint(digits);
        if (neg) num = -num;
        q = Rational(num, ipow(10, frac.size()));
    } else {
        q = Rational(parse_bigint(text));
    }
    q.canonicalize();
    return q;
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

BigInt ipow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::size_t bit_length(const BigInt& v) {
    if (sgn(v) == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

int compare_with_power(const BigInt& x, const BigInt& base, unsigned long exp) {
    if (exp > 0 && sgn(x) > 0 && cmp(base, 1) > 0) {
        // base^exp has between exp*(L-1)+1 and exp*L bits, L = bit_length(base).
        const std::size_t lb = bit_length(base);
        const std::size_t lx = bit_length(x);
        const std::size_t lo_bits = exp * (lb - 1) + 1;
        const std::size_t hi_bits = exp * lb;
        if (lx < lo_bits) return -1;
        if (lx > hi_bits) return 1;
    }
    int c = cmp(x, ipow(base, exp));
    return (c > 0) - (c < 0);
}

std::uint64_t isqrt_u128(u128 x) {
    if (x == 0) return 0;
    constexpr auto kMax = ~std::uint64_t{0};
    const long double est = std::sqrt(static_cast<long double>(x));
    std::uint64_t r = est >= 18446744073709551615.0L ? kMax : static_cast<std::uint64_t>(est);
    // long double estimate is within a few units; settle exactly.
    while (r > 0 && static_cast<u128>(r) * r > x) --r;
    while (r < kMax && static_cast<u128>(r + 1) * (r + 1) <= x) ++r;
    return r;
}

namespace {

template <unsigned M>
constexpr std::array<bool, M> residue_table() {
    std::array<bool, M> t{};
    for (unsigned i = 0; i < M; ++i) t[(i * i) % M] = true;
    return t;
}

constexpr auto kSq64 = residue_table<64>();
constexpr auto kSq63 = residue_table<63>();
constexpr auto kSq65 = residue_table<65>();
constexpr auto kSq11 = residue_table<11>();

}  // namespace

bool maybe_square_u128(u128 x) {
    if (!kSq64[static_cast<unsigned>(x & 63u)]) return false;
    const auto r = static_cast<unsigned>(x % (63u * 65u * 11u));
    return kSq63[r % 63] && kSq65[r % 65] && kSq11[r % 11];
}

bool is_square_u128(u128 x, std::uint64_t& root) {
    if (!maybe_square_u128(x)) return false;
    root = isqrt_u128(x);
    return static_cast<u128>(root) * root == x;
}

BigInt from_u128(u128 v) {
    BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
    BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
    return (hi << 64) + lo;
}

BigInt from_i64(std::int64_t v) { return BigInt(static_cast<long>(v)); }

std::optional<std::int64_t> to_i64(const BigInt& v) {
    if (!v.fits_slong_p()) return std::nullopt;
    return static_cast<std::int64_t>(v.get_si());
}

std::optional<std::uint64_t> to_u64(const BigInt& v) {
    if (sgn(v) < 0 || !v.fits_ulong_p()) return std::nullopt;
    return static_cast<std::uint64_t>(v.get_ui());
}

}  // namespace dtuple

namespace dtuple {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce(std::int64_t n, std::uint64_t m) {
    const i128 r = static_cast<i128>(n) % static_cast<i128>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

// Inverse of a modulo m, gcd(a, m) == 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        const i128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

// Tonelli-Shanks; p odd prime, a a nonzero quadratic residue mod p.
std::uint64_t tonelli_shanks(std::uint64_t a, std::uint64_t p) {
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    std::uint64_t t = powmod(a, q, p);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        for (std::uint64_t tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
        std::uint64_t b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

std::vector<std::uint64_t> roots_prime_power(std::int64_t n, std::uint64_t p, unsigned k) {
    std::vector<std::uint64_t> roots;
    const std::uint64_t np = reduce(n, p);
    if (p != 2 && np != 0) {
        if (powmod(np, (p - 1) / 2, p) != 1) return roots;
        std::uint64_t r = tonelli_shanks(np, p);
        std::uint64_t pe = p;
        for (unsigned j = 1; j < k; ++j) {
            // Hensel step: r <- r - (r^2 - n) / (2r) mod p^(j+1).
            pe *= p;
            const std::uint64_t nn = reduce(n, pe);
            const std::uint64_t f = (mulmod(r, r, pe) + pe - nn) % pe;
            const std::uint64_t inv = invmod(mulmod(2, r, pe), pe);
            r = (r + pe - mulmod(f, inv, pe)) % pe;
        }
        roots = {r, (pe - r) % pe};
        if (roots[0] == roots[1]) roots.pop_back();
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    // p == 2 or p | n: lift by testing every preimage one level at a time.
    // Mod p the only root is 0 when p | n, and 1 when p == 2 and n is odd.
    roots.push_back(np == 0 ? 0 : 1);
    std::uint64_t pe = p;
    for (unsigned j = 1; j < k && !roots.empty(); ++j) {
        const std::uint64_t next = pe * p;
        const std::uint64_t nn = reduce(n, next);
        std::vector<std::uint64_t> lifted;
        for (std::uint64_t r : roots)
            for (std::uint64_t i = 0; i < p; ++i) {
                const std::uint64_t t = r + i * pe;
                if (mulmod(t, t, next) == nn) lifted.push_back(t);
            }
        roots = std::move(lifted);
        pe = next;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace

std::vector<std::uint64_t> sqrt_mod(std::int64_t n, std::span<const PrimePower> factorization) {
    std::vector<std::uint64_t> acc{0};
    std::uint64_t acc_mod = 1;
    for (const auto& [p, k] : factorization) {
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < k && pk < kSqrtModLimit; ++i) pk = static_cast<std::uint64_t>(std::min<u128>(static_cast<u128>(pk) * p, kSqrtModLimit));
        if (static_cast<u128>(acc_mod) * pk >= kSqrtModLimit)
            throw std::domain_error("sqrt_mod: modulus out of range");
        const auto local = roots_prime_power(n, p, k);
        if (local.empty()) return {};
        std::vector<std::uint64_t> merged;
        merged.reserve(acc.size() * local.size());
        const std::uint64_t inv = invmod(acc_mod % pk, pk);
        for (std::uint64_t a : acc)
            for (std::uint64_t b : local) {
                // x = a + acc_mod * ((b - a) * inv mod pk)
                const std::uint64_t diff = (b + pk - a % pk) % pk;
                merged.push_back(a + acc_mod * mulmod(diff, inv, pk));
            }
        acc = std::move(merged);
        acc_mod *= pk;
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

std::vector<PrimePower> factorize(std::uint64_t m) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p) continue;
        unsigned k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    if (m > 1) out.push_back({m, 1});
    return out;
}

std::vector<std::uint64_t> sqrt_mod(std::int64_t n, std::uint64_t m) {
    if (m == 0 || m >= kSqrtModLimit) throw std::domain_error("sqrt_mod: modulus out of range");
    const auto f = factorize(m);
    return sqrt_mod(n, f);
}

}  // namespace dtuple
