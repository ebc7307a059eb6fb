#pragma once

// Exact checks of the growth lemmas on concrete tuples.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dtuple/tuple_model.hpp"

namespace dtuple {

/// Integers with a*e + n^2 = x^2, b*e + n^2 = y^2, c*e + n^2 = z^2 and
///   n^2 c = n^2 (a + b) + n e + 2 (a b e + r (sign_x x)(sign_y y)).
struct LemmaThreeWitness {
    BigInt e;
    NonNegInt x;
    NonNegInt y;
    NonNegInt z;
    int sign_x = 1;
    int sign_y = 1;
    bool from_closed_form = false;  // false: found by the scan
};

class WitnessNotFound : public std::runtime_error {
public:
    WitnessNotFound(BigInt lo, BigInt hi);
    const BigInt& scanned_lo() const noexcept { return lo_; }
    const BigInt& scanned_hi() const noexcept { return hi_; }

private:
    BigInt lo_, hi_;
};

/// The instance lies outside a lemma's hypotheses (not a violation).
class PreconditionNotMet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// n (a + b + c) + 2abc - 2rst. Only a hint; callers must substitute.
BigInt closed_form_e(const DTuple& triple);

/// 10 * c * |n|.
BigInt default_e_scan_bound(const DTuple& triple);

/// Tries the closed form first, then scans e by increasing |e| over
/// [-bound, bound]. Throws WitnessNotFound when the scan is exhausted and
/// std::invalid_argument when the tuple is not a triple.
LemmaThreeWitness find_witness_e(const DTuple& triple, std::optional<BigInt> search_bound = std::nullopt);

/// Re-checks the three square equations and the cleared identity.
bool check_witness(const DTuple& triple, const LemmaThreeWitness& w);

struct GapAuditRecord {
    DTuple tuple;  // the quadruple a < b < c < d
    Rational lemma5_c_ratio;    // c / a
    Rational lemma5_d_ratio;    // d / c
    Rational corollary_margin;  // d n^2 / (b c)
    std::optional<bool> lemma5_c_pass;   // c > 3.88 a
    std::optional<bool> lemma5_d_pass;   // d > 4.89 c
    std::optional<bool> corollary_pass;  // d n^2 > b c
};

/// Require |n| >= 2 and n^2 < a; otherwise PreconditionNotMet.
GapAuditRecord audit_gap_lemma5(const DTuple& quad);
GapAuditRecord audit_gap_corollary(const DTuple& quad);

enum class Lemma2Verdict { NotApplicable, Pass, Fail };

const char* to_string(Lemma2Verdict v);

/// If c > b^11 |n|^11 then d <= c^131 must hold. Pure arithmetic, no
/// D(n) requirement on the inputs.
Lemma2Verdict lemma2_verdict(const BigInt& b, const BigInt& c, const BigInt& d, const BigInt& n);

Lemma2Verdict audit_lemma2(const DTuple& quad);

/// All k-element sub-tuples, lexicographic on index sets.
std::vector<DTuple> slices(const DTuple& t, std::size_t k);

// ---------------------------------------------------------------------------
// Corpus audits shared by the CLI and the acceptance suite.

enum class AuditCheck { Lemma5, Corollary4, Lemma2, Lemma3 };

const char* to_string(AuditCheck c);
AuditCheck parse_audit_check(const std::string& name);

struct AuditRow {
    BigInt n;
    std::vector<BigInt> elements;
    AuditCheck check;
    Rational margin;
    std::string verdict;  // pass | fail | not_applicable | witness_not_found
};

struct AuditSummary {
    std::vector<AuditCheck> requested;
    std::vector<AuditRow> rows;  // sorted by (n, elements, check)
    std::size_t failures = 0;
    std::size_t out_of_scope = 0;      // slices outside a lemma's preconditions
    std::size_t lemma2_hypothesis_fired = 0;
    std::size_t witness_not_found = 0;
    std::size_t negative_e_above_n2 = 0;  // e < 0 while b > n^2

    std::size_t count(AuditCheck c) const;
    /// Requested checks with no instance inside their hypotheses.
    std::vector<AuditCheck> vacuous() const;
};

struct AuditOptions {
    std::vector<AuditCheck> checks;
    std::optional<BigInt> e_scan_bound;  // default_e_scan_bound when absent
};

/// Audits every 3-slice (Lemma 3) and 4-slice (the rest) of each tuple.
/// Slices shared by several tuples are audited once.
AuditSummary run_audit(const std::vector<DTuple>& corpus, const AuditOptions& options);

}  // namespace dtuple
