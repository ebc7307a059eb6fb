#pragma once

// Growth exponents, epsilon thresholds and the size bounds assembled from them.

#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtuple/exact_arith.hpp"

namespace dtuple {

class IndexTooSmall : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Input outside the domain where a bound is defined (e.g. |n| too small).
class NotApplicable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// beta_2 = beta_3 = 1, beta_{i+2} = beta_i + beta_{i+1}. Grown lazily
/// under a lock; values are never invalidated once computed.
class BetaSequence {
public:
    BetaSequence();
    BigInt at(std::size_t i);
    std::size_t computed_through();

private:
    std::mutex mu_;
    std::vector<BigInt> values_;  // values_[i] = beta_i, slots 0 and 1 unused
};

BigInt beta(std::size_t i);

/// (beta_i - 11)(2 + eps) > 2 beta_i + 9
bool k_threshold_holds(std::size_t i, const Rational& epsilon);
/// (beta_i - 131)(2 + eps) > 2 beta_i - 2
bool ell_threshold_holds(std::size_t i, const Rational& epsilon);

/// Smallest index >= 2 satisfying the threshold. eps must lie in (0, 1].
std::size_t k_epsilon(const Rational& epsilon);
std::size_t ell_epsilon(const Rational& epsilon);

/// k(eps) + ell(eps), valid for every n.
std::size_t a_eps_bound(const Rational& epsilon);

/// floor(eps log|n| / log 4.89) + 3 for |n| >= 2: at most two elements of
/// (n^2, |n|^(2+eps)] escape the ratio-4.89 gap, every later one is more than
/// 4.89 times its predecessor. The floor is decided exactly where the cross
/// powers are small, otherwise from an upward-rounded evaluation.
std::uint64_t b_eps_bound(const BigInt& n, const Rational& epsilon);

/// A number that is only a leading-order estimate.
struct Estimate {
    double value = 0;
    bool certified = false;
};

/// 2 log|n| for |n| >= 3; the lower-order constant is unknown.
Estimate c_bound_leading(const BigInt& n);

/// log log|n| / log|n| bracketed by rationals with denominator 2^64.
struct EpsilonBracket {
    Rational lower;
    Rational upper;
};
EpsilonBracket theorem1_epsilon(const BigInt& n);

struct BoundReport {
    BigInt n;
    Rational epsilon;          // bracket end that produced a_eps_bound
    EpsilonBracket bracket;
    std::size_t k = 0;
    std::size_t ell = 0;
    std::size_t a_eps_bound = 0;   // certified
    std::uint64_t b_eps_bound = 0; // certified
    Estimate c_leading;
    Estimate m_leading;            // a + b + c, uncertified
    std::string note;
};

/// Combined report at eps = log log|n| / log|n|; |n| >= 16.
BoundReport m_bound_report(const BigInt& n);

/// One row of the bounds table at an explicit epsilon. Fields that do not
/// apply to n (b for |n| < 2, c and m for |n| < 3) stay empty.
struct BoundRow {
    BigInt n;
    Rational epsilon;
    std::size_t k = 0;
    std::size_t ell = 0;
    std::size_t a_eps_bound = 0;
    std::optional<std::uint64_t> b_eps_bound;
    std::optional<Estimate> c_leading;
    std::optional<Estimate> m_leading;
};
BoundRow bound_row(const BigInt& n, const Rational& epsilon);

}  // namespace dtuple
