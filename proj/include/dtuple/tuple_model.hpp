#pragma once

// D(n) tuples: sets of positive integers where a*b + n is a perfect square
// for every pair of distinct members.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtuple/exact_arith.hpp"

namespace dtuple {

/// a*b + n = r*r, a < b.
struct PairWitness {
    BigInt a;
    BigInt b;
    NonNegInt r;

    friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

enum class TupleErrorKind { EmptyInput, DuplicateElement, NonPositiveElement, ZeroN, InvalidRange };

const char* to_string(TupleErrorKind kind);

/// Malformed input to verify/extend. `datum` names the offending value.
class TupleError : public std::invalid_argument {
public:
    TupleError(TupleErrorKind kind, std::string datum);
    TupleErrorKind kind() const noexcept { return kind_; }
    const std::string& datum() const noexcept { return datum_; }

private:
    TupleErrorKind kind_;
    std::string datum_;
};

/// A verified D(n) tuple. Only `verify` constructs one, so every instance
/// carries a witness for each pair in lexicographic (a, b) order.
class DTuple {
public:
    const BigInt& n() const noexcept { return n_; }
    std::span<const BigInt> elements() const noexcept { return elements_; }
    std::span<const PairWitness> witnesses() const noexcept { return witnesses_; }
    std::size_t size() const noexcept { return elements_.size(); }

    /// Root r for the pair (elements[i], elements[j]), i != j.
    const NonNegInt& root(std::size_t i, std::size_t j) const;

    friend bool operator==(const DTuple&, const DTuple&) = default;

private:
    friend struct VerifyAccess;
    DTuple() = default;

    BigInt n_;
    std::vector<BigInt> elements_;
    std::vector<PairWitness> witnesses_;
};

/// The first pair in lexicographic order whose product plus n is not a square.
struct VerificationFailure {
    BigInt a;
    BigInt b;
    BigInt value;  // a*b + n
};

struct VerifyResult {
    std::optional<DTuple> tuple;
    std::optional<VerificationFailure> failure;

    bool ok() const noexcept { return tuple.has_value(); }
};

/// Sorts the input and checks every pair. Throws TupleError for empty input,
/// duplicates, non-positive elements or n == 0.
VerifyResult verify(std::span<const BigInt> elements, const BigInt& n);

/// Every d in [lo, hi] outside the tuple with a*d + n square for all members.
/// Throws TupleError(InvalidRange) when lo > hi.
std::vector<BigInt> extend(const DTuple& t, const BigInt& lo, const BigInt& hi);

struct RangeClassification {
    std::size_t small_count = 0;           // [1, n^2]
    std::size_t intermediate_count = 0;    // (n^2, |n|^3)
    std::size_t large_count = 0;           // [|n|^3, inf)
    std::size_t eps_intermediate_count = 0;  // (n^2, |n|^(2+eps)]
    std::size_t eps_large_count = 0;       // (|n|^(2+eps), inf)
    Rational epsilon;
    bool degenerate_ranges = false;        // |n| == 1
};

/// Requires 0 < eps < 1 (std::invalid_argument otherwise).
RangeClassification classify(const DTuple& t, const Rational& epsilon);

/// x <= |n|^(2+eps) decided exactly as x^q <= |n|^(2q+p) for eps = p/q > 0.
bool at_most_power(const BigInt& x, const BigInt& abs_n, const Rational& epsilon);

}  // namespace dtuple
