#include "dtuple/tuple_model.hpp"

#include <algorithm>

#include <mpfr.h>

namespace dtuple {

const char* to_string(TupleErrorKind kind) {
    switch (kind) {
        case TupleErrorKind::EmptyInput: return "EmptyInput";
        case TupleErrorKind::DuplicateElement: return "DuplicateElement";
        case TupleErrorKind::NonPositiveElement: return "NonPositiveElement";
        case TupleErrorKind::ZeroN: return "ZeroN";
        case TupleErrorKind::InvalidRange: return "InvalidRange";
    }
    return "?";
}

TupleError::TupleError(TupleErrorKind kind, std::string datum)
    : std::invalid_argument(std::string(to_string(kind)) + ": " + datum), kind_(kind), datum_(std::move(datum)) {}

struct VerifyAccess {
    static DTuple make(BigInt n, std::vector<BigInt> elements, std::vector<PairWitness> witnesses) {
        DTuple t;
        t.n_ = std::move(n);
        t.elements_ = std::move(elements);
        t.witnesses_ = std::move(witnesses);
        return t;
    }
};

const NonNegInt& DTuple::root(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::size_t m = elements_.size();
    if (i == j || j >= m) throw std::out_of_range("DTuple::root: bad pair index");
    return witnesses_.at(i * (2 * m - i - 1) / 2 + (j - i - 1)).r;
}

VerifyResult verify(std::span<const BigInt> elements, const BigInt& n) {
    if (sgn(n) == 0) throw TupleError(TupleErrorKind::ZeroN, "n = 0");
    if (elements.empty()) throw TupleError(TupleErrorKind::EmptyInput, "no elements");
    for (const auto& e : elements)
        if (sgn(e) <= 0) throw TupleError(TupleErrorKind::NonPositiveElement, to_decimal(e));

    std::vector<BigInt> sorted(elements.begin(), elements.end());
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw TupleError(TupleErrorKind::DuplicateElement, to_decimal(*dup));

    std::vector<PairWitness> witnesses;
    witnesses.reserve(sorted.size() * (sorted.size() - 1) / 2);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            BigInt value = sorted[i] * sorted[j] + n;
            auto r = square_root_if_square(value);
            if (!r) return {std::nullopt, VerificationFailure{sorted[i], sorted[j], std::move(value)}};
            witnesses.push_back({sorted[i], sorted[j], std::move(*r)});
        }
    }
    return {VerifyAccess::make(n, std::move(sorted), std::move(witnesses)), std::nullopt};
}

namespace {

BigInt ceil_sqrt(const BigInt& x) {
    if (sgn(x) <= 0) return 0;
    BigInt r = integer_sqrt(NonNegInt(x)).value();
    if (r * r < x) ++r;
    return r;
}

}  // namespace

std::vector<BigInt> extend(const DTuple& t, const BigInt& lo_in, const BigInt& hi) {
    if (lo_in > hi) throw TupleError(TupleErrorKind::InvalidRange, to_decimal(lo_in) + " > " + to_decimal(hi));
    std::vector<BigInt> out;
    const BigInt lo = lo_in < 1 ? BigInt(1) : lo_in;
    if (hi < lo) return out;

    const auto elems = t.elements();
    const BigInt& n = t.n();

    // Walk t^2 = a*d + n for one anchor element a. With the residues of n
    // modulo a available the largest element gives the fewest roots to visit;
    // otherwise fall back to the smallest and every t.
    const BigInt& largest = elems.back();
    const auto n64 = to_i64(n);
    const auto a64 = to_u64(largest);
    std::vector<std::uint64_t> residues;
    BigInt anchor = elems.front();
    bool stepped = false;
    if (n64 && a64 && *a64 < kSqrtModLimit) {
        anchor = largest;
        residues = sqrt_mod(*n64, *a64);
        stepped = true;
        if (residues.empty()) return out;
    }

    const BigInt top = anchor * hi + n;
    if (sgn(top) < 0) return out;
    const BigInt t_lo = ceil_sqrt(anchor * lo + n);
    const BigInt t_hi = integer_sqrt(NonNegInt(top)).value();

    auto consider = [&](const BigInt& root) {
        BigInt v = root * root - n;
        if (sgn(v) <= 0) return;
        if (!stepped && !mpz_divisible_p(v.get_mpz_t(), anchor.get_mpz_t())) return;
        BigInt d = v / anchor;
        if (d < lo || d > hi) return;
        if (std::binary_search(elems.begin(), elems.end(), d)) return;
        for (const auto& a : elems)
            if (a != anchor && !is_perfect_square(a * d + n)) return;
        out.push_back(std::move(d));
    };

    if (!stepped) {
        for (BigInt root = t_lo; root <= t_hi; ++root) consider(root);
    } else {
        BigInt base = (t_lo / anchor) * anchor;
        for (; base <= t_hi; base += anchor) {
            for (std::uint64_t r : residues) {
                BigInt root = base + static_cast<unsigned long>(r);
                if (root < t_lo) continue;
                if (root > t_hi) break;
                consider(root);
            }
        }
    }
    return out;
}

bool at_most_power(const BigInt& x, const BigInt& abs_n, const Rational& epsilon) {
    const BigInt& p = epsilon.get_num();
    const BigInt& q = epsilon.get_den();
    if (cmp(abs_n, 1) <= 0) return cmp(x, abs_n) <= 0;
    const BigInt rhs_exp = 2 * q + p;
    // Exact route while the cross powers stay a manageable size.
    if (q.fits_ulong_p() && rhs_exp.fits_ulong_p()) {
        const unsigned long qq = q.get_ui();
        const unsigned long ee = rhs_exp.get_ui();
        if (bit_length(x) * qq <= (std::size_t{1} << 26) && bit_length(abs_n) * ee <= (std::size_t{1} << 26))
            return cmp(ipow(x, qq), ipow(abs_n, ee)) <= 0;
    }
    // Otherwise compare log2 x with (2 + eps) log2 |n| on outward-rounded intervals.
    mpfr_t lx_lo, lx_hi, ln_lo, ln_hi, f_lo, f_hi;
    for (mpfr_ptr v : {lx_lo, lx_hi, ln_lo, ln_hi, f_lo, f_hi}) mpfr_init2(v, 1024);
    auto set_z = [](mpfr_ptr dst, const BigInt& z, mpfr_rnd_t rnd) { mpfr_set_z(dst, z.get_mpz_t(), rnd); };
    set_z(lx_lo, x, MPFR_RNDD);
    set_z(lx_hi, x, MPFR_RNDU);
    mpfr_log2(lx_lo, lx_lo, MPFR_RNDD);
    mpfr_log2(lx_hi, lx_hi, MPFR_RNDU);
    set_z(ln_lo, abs_n, MPFR_RNDD);
    set_z(ln_hi, abs_n, MPFR_RNDU);
    mpfr_log2(ln_lo, ln_lo, MPFR_RNDD);
    mpfr_log2(ln_hi, ln_hi, MPFR_RNDU);
    const Rational factor = epsilon + 2;
    mpfr_set_q(f_lo, factor.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(f_hi, factor.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(ln_lo, ln_lo, f_lo, MPFR_RNDD);
    mpfr_mul(ln_hi, ln_hi, f_hi, MPFR_RNDU);
    int verdict = -1;
    if (mpfr_lessequal_p(lx_hi, ln_lo) && !mpfr_equal_p(lx_hi, ln_lo)) verdict = 1;
    else if (mpfr_greater_p(lx_lo, ln_hi)) verdict = 0;
    for (mpfr_ptr v : {lx_lo, lx_hi, ln_lo, ln_hi, f_lo, f_hi}) mpfr_clear(v);
    if (verdict < 0) throw std::runtime_error("at_most_power: comparison undecided at 1024-bit precision");
    return verdict == 1;
}

RangeClassification classify(const DTuple& t, const Rational& epsilon) {
    if (sgn(epsilon) <= 0 || cmp(epsilon, 1) >= 0)
        throw std::invalid_argument("classify: epsilon must lie in (0, 1), got " + to_fraction_string(epsilon));
    RangeClassification c;
    c.epsilon = epsilon;
    const BigInt abs_n = abs(t.n());
    const BigInt n2 = abs_n * abs_n;
    const BigInt n3 = n2 * abs_n;
    c.degenerate_ranges = abs_n == 1;
    for (const auto& x : t.elements()) {
        if (x <= n2) {
            ++c.small_count;
            continue;
        }
        if (x < n3) ++c.intermediate_count;
        else ++c.large_count;
        if (at_most_power(x, abs_n, epsilon)) ++c.eps_intermediate_count;
        else ++c.eps_large_count;
    }
    return c;
}

}  // namespace dtuple
