#include "dtuple/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <mpfr.h>

namespace dtuple {

BetaSequence::BetaSequence() : values_{0, 0, 1, 1} {}

BigInt BetaSequence::at(std::size_t i) {
    if (i < 2) throw IndexTooSmall("beta: index must be >= 2, got " + std::to_string(i));
    std::lock_guard lock(mu_);
    while (values_.size() <= i) values_.push_back(values_[values_.size() - 2] + values_.back());
    return values_[i];
}

std::size_t BetaSequence::computed_through() {
    std::lock_guard lock(mu_);
    return values_.size() - 1;
}

namespace {

BetaSequence& shared_beta() {
    static BetaSequence seq;
    return seq;
}

void require_epsilon(const Rational& eps, const char* what) {
    if (sgn(eps) <= 0 || cmp(eps, 1) > 0)
        throw std::invalid_argument(std::string(what) + ": epsilon must lie in (0, 1], got " + to_fraction_string(eps));
}

template <class Pred>
std::size_t first_index(Pred holds) {
    for (std::size_t i = 2;; ++i)
        if (holds(i)) return i;
}

// RAII wrapper so every early return clears the MPFR value.
struct Mpfr {
    mpfr_t v;
    explicit Mpfr(mpfr_prec_t prec = 256) { mpfr_init2(v, prec); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v; }
};

// 489^(j q) <= |n|^p 100^(j q), i.e. 4.89^j <= |n|^eps; nothing when too large to expand.
std::optional<bool> gap_power_fits(std::uint64_t j, const BigInt& abs_n, const Rational& eps) {
    const BigInt& p = eps.get_num();
    const BigInt& q = eps.get_den();
    if (!p.fits_ulong_p() || !q.fits_ulong_p()) return std::nullopt;
    const unsigned long pp = p.get_ui(), qq = q.get_ui();
    if (qq > (1ul << 20) || j > (1ul << 20) || j * qq * 9 > (1ul << 24) || pp * bit_length(abs_n) > (1ul << 24))
        return std::nullopt;
    const unsigned long e = j * qq;
    return ipow(489, e) <= ipow(abs_n, pp) * ipow(100, e);
}

}  // namespace

BigInt beta(std::size_t i) { return shared_beta().at(i); }

bool k_threshold_holds(std::size_t i, const Rational& epsilon) {
    const BigInt b = beta(i);
    return Rational(b - 11) * (epsilon + 2) > Rational(2 * b + 9);
}

bool ell_threshold_holds(std::size_t i, const Rational& epsilon) {
    const BigInt b = beta(i);
    return Rational(b - 131) * (epsilon + 2) > Rational(2 * b - 2);
}

std::size_t k_epsilon(const Rational& epsilon) {
    require_epsilon(epsilon, "k_epsilon");
    return first_index([&](std::size_t i) { return k_threshold_holds(i, epsilon); });
}

std::size_t ell_epsilon(const Rational& epsilon) {
    require_epsilon(epsilon, "ell_epsilon");
    return first_index([&](std::size_t i) { return ell_threshold_holds(i, epsilon); });
}

std::size_t a_eps_bound(const Rational& epsilon) { return k_epsilon(epsilon) + ell_epsilon(epsilon); }

std::uint64_t b_eps_bound(const BigInt& n, const Rational& epsilon) {
    require_epsilon(epsilon, "b_eps_bound");
    const BigInt abs_n = abs(n);
    if (abs_n < 2) throw NotApplicable("b_eps_bound: requires |n| >= 2");

    Mpfr log_n, eps_hi, log_gap;
    mpfr_set_z(log_n.get(), abs_n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(log_n.get(), log_n.get(), MPFR_RNDU);
    mpfr_set_q(eps_hi.get(), epsilon.get_mpq_t(), MPFR_RNDU);
    const Rational gap(489, 100);
    mpfr_set_q(log_gap.get(), gap.get_mpq_t(), MPFR_RNDD);
    mpfr_log(log_gap.get(), log_gap.get(), MPFR_RNDD);
    mpfr_mul(log_n.get(), log_n.get(), eps_hi.get(), MPFR_RNDU);
    mpfr_div(log_n.get(), log_n.get(), log_gap.get(), MPFR_RNDU);
    BigInt j;
    mpfr_get_z(j.get_mpz_t(), log_n.get(), MPFR_RNDD);

    auto jj = static_cast<std::uint64_t>(j.get_ui());
    // The upward bracket can land one past the true floor; settle exactly when feasible.
    while (jj > 0) {
        const auto fits = gap_power_fits(jj, abs_n, epsilon);
        if (!fits || *fits) break;
        --jj;
    }
    return jj + 3;
}

Estimate c_bound_leading(const BigInt& n) {
    const BigInt abs_n = abs(n);
    if (abs_n < 3) throw NotApplicable("c_bound_leading: requires |n| >= 3");
    Mpfr v;
    mpfr_set_z(v.get(), abs_n.get_mpz_t(), MPFR_RNDN);
    mpfr_log(v.get(), v.get(), MPFR_RNDN);
    return {2.0 * mpfr_get_d(v.get(), MPFR_RNDN), false};
}

EpsilonBracket theorem1_epsilon(const BigInt& n) {
    const BigInt abs_n = abs(n);
    if (abs_n < 16) throw NotApplicable("theorem1_epsilon: requires |n| >= 16");
    auto evaluate = [&](mpfr_rnd_t up, mpfr_rnd_t down) {
        Mpfr num, den;
        mpfr_set_z(num.get(), abs_n.get_mpz_t(), up);
        mpfr_log(num.get(), num.get(), up);
        mpfr_log(num.get(), num.get(), up);
        mpfr_set_z(den.get(), abs_n.get_mpz_t(), down);
        mpfr_log(den.get(), den.get(), down);
        mpfr_div(num.get(), num.get(), den.get(), up);
        mpfr_mul_2ui(num.get(), num.get(), 64, up);
        BigInt scaled;
        mpfr_get_z(scaled.get_mpz_t(), num.get(), up == MPFR_RNDU ? MPFR_RNDU : MPFR_RNDD);
        Rational q(scaled, BigInt(1) << 64);
        q.canonicalize();
        return q;
    };
    return {evaluate(MPFR_RNDD, MPFR_RNDU), evaluate(MPFR_RNDU, MPFR_RNDD)};
}

BoundReport m_bound_report(const BigInt& n) {
    const BigInt abs_n = abs(n);
    if (abs_n < 16) throw NotApplicable("m_bound_report: requires |n| >= 16");
    BoundReport r;
    r.n = n;
    r.bracket = theorem1_epsilon(n);
    // k and ell only grow as eps shrinks, so either bracket end may carry the max.
    const std::size_t a_lo = a_eps_bound(r.bracket.lower);
    const std::size_t a_hi = a_eps_bound(r.bracket.upper);
    r.epsilon = a_lo >= a_hi ? r.bracket.lower : r.bracket.upper;
    r.k = k_epsilon(r.epsilon);
    r.ell = ell_epsilon(r.epsilon);
    r.a_eps_bound = std::max(a_lo, a_hi);
    r.b_eps_bound = b_eps_bound(n, r.bracket.upper);
    r.c_leading = c_bound_leading(n);
    r.m_leading = {static_cast<double>(r.a_eps_bound + r.b_eps_bound) + r.c_leading.value, false};
    r.note = "a_eps_bound = k + ell; a tuple of size k + ell is already excluded, so k + ell - 1 holds as well";
    return r;
}

BoundRow bound_row(const BigInt& n, const Rational& epsilon) {
    BoundRow row;
    row.n = n;
    row.epsilon = epsilon;
    row.k = k_epsilon(epsilon);
    row.ell = ell_epsilon(epsilon);
    row.a_eps_bound = row.k + row.ell;
    const BigInt abs_n = abs(n);
    if (abs_n >= 2) row.b_eps_bound = b_eps_bound(n, epsilon);
    if (abs_n >= 3) {
        row.c_leading = c_bound_leading(n);
        row.m_leading = Estimate{static_cast<double>(row.a_eps_bound + *row.b_eps_bound) + row.c_leading->value, false};
    }
    return row;
}

}  // namespace dtuple
