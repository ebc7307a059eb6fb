#include "dtuple/lemma_audit.hpp"

#include <algorithm>
#include <set>

namespace dtuple {

WitnessNotFound::WitnessNotFound(BigInt lo, BigInt hi)
    : std::runtime_error("WitnessNotFound: no e in [" + to_decimal(lo) + ", " + to_decimal(hi) + "]"),
      lo_(std::move(lo)),
      hi_(std::move(hi)) {}

namespace {

void require_size(const DTuple& t, std::size_t k, const char* what) {
    if (t.size() != k)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(k) + " elements, got " +
                                    std::to_string(t.size()));
}

// Fills x, y, z and the signs for a given e, or returns nothing.
std::optional<LemmaThreeWitness> try_e(const DTuple& triple, const BigInt& e) {
    const auto el = triple.elements();
    const BigInt& n = triple.n();
    const BigInt n2 = n * n;
    auto x = square_root_if_square(el[0] * e + n2);
    if (!x) return std::nullopt;
    auto y = square_root_if_square(el[1] * e + n2);
    if (!y) return std::nullopt;
    auto z = square_root_if_square(el[2] * e + n2);
    if (!z) return std::nullopt;
    LemmaThreeWitness w{e, *x, *y, *z};
    for (int sx : {1, -1})
        for (int sy : {1, -1}) {
            w.sign_x = sx;
            w.sign_y = sy;
            if (check_witness(triple, w)) return w;
        }
    return std::nullopt;
}

}  // namespace

BigInt closed_form_e(const DTuple& triple) {
    require_size(triple, 3, "closed_form_e");
    const auto el = triple.elements();
    const BigInt& r = triple.root(0, 1).value();
    const BigInt& s = triple.root(0, 2).value();
    const BigInt& t = triple.root(1, 2).value();
    return triple.n() * (el[0] + el[1] + el[2]) + 2 * el[0] * el[1] * el[2] - 2 * r * s * t;
}

BigInt default_e_scan_bound(const DTuple& triple) { return 10 * triple.elements().back() * abs(triple.n()); }

bool check_witness(const DTuple& triple, const LemmaThreeWitness& w) {
    if (triple.size() != 3 || std::abs(w.sign_x) != 1 || std::abs(w.sign_y) != 1) return false;
    const auto el = triple.elements();
    const BigInt& a = el[0];
    const BigInt& b = el[1];
    const BigInt& c = el[2];
    const BigInt& n = triple.n();
    const BigInt n2 = n * n;
    const BigInt& x = w.x.value();
    const BigInt& y = w.y.value();
    if (a * w.e + n2 != x * x) return false;
    if (b * w.e + n2 != y * y) return false;
    if (c * w.e + n2 != w.z.value() * w.z.value()) return false;
    const BigInt& r = triple.root(0, 1).value();
    const BigInt rxy = r * x * y * (w.sign_x * w.sign_y);
    return n2 * c == n2 * (a + b) + n * w.e + 2 * (a * b * w.e + rxy);
}

LemmaThreeWitness find_witness_e(const DTuple& triple, std::optional<BigInt> search_bound) {
    require_size(triple, 3, "find_witness_e");
    if (auto w = try_e(triple, closed_form_e(triple))) {
        w->from_closed_form = true;
        return *w;
    }
    const BigInt bound = search_bound ? abs(*search_bound) : default_e_scan_bound(triple);
    if (auto w = try_e(triple, 0)) return *w;
    for (BigInt k = 1; k <= bound; ++k) {
        if (auto w = try_e(triple, k)) return *w;
        if (auto w = try_e(triple, BigInt(-k))) return *w;
    }
    throw WitnessNotFound(-bound, bound);
}

namespace {

void require_gap_scope(const DTuple& quad, const char* what) {
    require_size(quad, 4, what);
    const BigInt abs_n = abs(quad.n());
    if (abs_n < 2) throw PreconditionNotMet(std::string(what) + ": requires |n| >= 2");
    if (quad.elements()[0] <= abs_n * abs_n) throw PreconditionNotMet(std::string(what) + ": requires n^2 < a");
}

GapAuditRecord gap_record(const DTuple& quad) {
    const auto el = quad.elements();
    const BigInt n2 = quad.n() * quad.n();
    GapAuditRecord rec{.tuple = quad,
                       .lemma5_c_ratio = Rational(el[2], el[0]),
                       .lemma5_d_ratio = Rational(el[3], el[2]),
                       .corollary_margin = Rational(el[3] * n2, el[1] * el[2]),
                       .lemma5_c_pass = std::nullopt,
                       .lemma5_d_pass = std::nullopt,
                       .corollary_pass = std::nullopt};
    rec.lemma5_c_ratio.canonicalize();
    rec.lemma5_d_ratio.canonicalize();
    rec.corollary_margin.canonicalize();
    return rec;
}

}  // namespace

GapAuditRecord audit_gap_lemma5(const DTuple& quad) {
    require_gap_scope(quad, "audit_gap_lemma5");
    auto rec = gap_record(quad);
    rec.lemma5_c_pass = rec.lemma5_c_ratio > Rational(388, 100);
    rec.lemma5_d_pass = rec.lemma5_d_ratio > Rational(489, 100);
    return rec;
}

GapAuditRecord audit_gap_corollary(const DTuple& quad) {
    require_gap_scope(quad, "audit_gap_corollary");
    auto rec = gap_record(quad);
    const auto el = quad.elements();
    rec.corollary_pass = el[3] * quad.n() * quad.n() > el[1] * el[2];
    return rec;
}

const char* to_string(Lemma2Verdict v) {
    switch (v) {
        case Lemma2Verdict::NotApplicable: return "not_applicable";
        case Lemma2Verdict::Pass: return "pass";
        case Lemma2Verdict::Fail: return "fail";
    }
    return "?";
}

Lemma2Verdict lemma2_verdict(const BigInt& b, const BigInt& c, const BigInt& d, const BigInt& n) {
    if (c <= ipow(b * abs(n), 11)) return Lemma2Verdict::NotApplicable;
    return compare_with_power(d, c, 131) <= 0 ? Lemma2Verdict::Pass : Lemma2Verdict::Fail;
}

Lemma2Verdict audit_lemma2(const DTuple& quad) {
    require_size(quad, 4, "audit_lemma2");
    const auto el = quad.elements();
    return lemma2_verdict(el[1], el[2], el[3], quad.n());
}

std::vector<DTuple> slices(const DTuple& t, std::size_t k) {
    std::vector<DTuple> out;
    const std::size_t m = t.size();
    if (k == 0 || k > m) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<BigInt> pick(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) pick[i] = t.elements()[idx[i]];
        out.push_back(std::move(*verify(pick, t.n()).tuple));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

const char* to_string(AuditCheck c) {
    switch (c) {
        case AuditCheck::Lemma5: return "lemma5";
        case AuditCheck::Corollary4: return "corollary4";
        case AuditCheck::Lemma2: return "lemma2";
        case AuditCheck::Lemma3: return "lemma3";
    }
    return "?";
}

AuditCheck parse_audit_check(const std::string& name) {
    for (auto c : {AuditCheck::Lemma5, AuditCheck::Corollary4, AuditCheck::Lemma2, AuditCheck::Lemma3})
        if (name == to_string(c)) return c;
    throw std::invalid_argument("unknown audit check '" + name + "'");
}

std::size_t AuditSummary::count(AuditCheck c) const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const AuditRow& r) {
        return r.check == c && r.verdict != "not_applicable";
    }));
}

std::vector<AuditCheck> AuditSummary::vacuous() const {
    std::vector<AuditCheck> out;
    for (auto c : requested)
        if (count(c) == 0) out.push_back(c);
    return out;
}

AuditSummary run_audit(const std::vector<DTuple>& corpus, const AuditOptions& options) {
    AuditSummary s;
    s.requested = options.checks;
    auto wants = [&](AuditCheck c) {
        return std::find(options.checks.begin(), options.checks.end(), c) != options.checks.end();
    };
    const bool want_quads = wants(AuditCheck::Lemma5) || wants(AuditCheck::Corollary4) || wants(AuditCheck::Lemma2);
    std::set<std::vector<BigInt>> seen;
    auto first_time = [&](const DTuple& t) {
        std::vector<BigInt> key{t.n()};
        key.insert(key.end(), t.elements().begin(), t.elements().end());
        return seen.insert(std::move(key)).second;
    };
    auto row = [&](const DTuple& t, AuditCheck c, Rational margin, std::string verdict) {
        margin.canonicalize();
        if (verdict == "fail") ++s.failures;
        s.rows.push_back({t.n(), {t.elements().begin(), t.elements().end()}, c, std::move(margin), std::move(verdict)});
    };

    for (const auto& tuple : corpus) {
        if (wants(AuditCheck::Lemma3) && tuple.size() >= 3) {
            for (const auto& tri : slices(tuple, 3)) {
                if (!first_time(tri)) continue;
                try {
                    const auto w = find_witness_e(tri, options.e_scan_bound);
                    bool ok = check_witness(tri, w);
                    const BigInt n2 = tri.n() * tri.n();
                    if (tri.elements()[1] > n2 && sgn(w.e) < 0) {
                        ++s.negative_e_above_n2;
                        ok = false;
                    }
                    row(tri, AuditCheck::Lemma3, Rational(w.e), ok ? "pass" : "fail");
                } catch (const WitnessNotFound& ex) {
                    ++s.witness_not_found;
                    row(tri, AuditCheck::Lemma3, Rational(ex.scanned_hi()), "witness_not_found");
                }
            }
        }
        if (!want_quads || tuple.size() < 4) continue;
        for (const auto& quad : slices(tuple, 4)) {
            if (!first_time(quad)) continue;
            const auto el = quad.elements();
            if (wants(AuditCheck::Lemma5)) {
                try {
                    auto rec = audit_gap_lemma5(quad);
                    // Binding side of the two ratios, normalised so that > 1 means pass.
                    const Rational mc = rec.lemma5_c_ratio / Rational(388, 100);
                    const Rational md = rec.lemma5_d_ratio / Rational(489, 100);
                    row(quad, AuditCheck::Lemma5, std::min(mc, md),
                        *rec.lemma5_c_pass && *rec.lemma5_d_pass ? "pass" : "fail");
                } catch (const PreconditionNotMet&) {
                    ++s.out_of_scope;
                }
            }
            if (wants(AuditCheck::Corollary4)) {
                try {
                    auto rec = audit_gap_corollary(quad);
                    row(quad, AuditCheck::Corollary4, rec.corollary_margin, *rec.corollary_pass ? "pass" : "fail");
                } catch (const PreconditionNotMet&) {
                    ++s.out_of_scope;
                }
            }
            if (wants(AuditCheck::Lemma2)) {
                const auto v = audit_lemma2(quad);
                const BigInt hyp = ipow(el[1] * abs(quad.n()), 11);
                if (v != Lemma2Verdict::NotApplicable) ++s.lemma2_hypothesis_fired;
                row(quad, AuditCheck::Lemma2, Rational(el[2], hyp), to_string(v));
            }
        }
    }
    std::sort(s.rows.begin(), s.rows.end(), [](const AuditRow& x, const AuditRow& y) {
        if (x.n != y.n) return x.n < y.n;
        if (x.elements != y.elements) return x.elements < y.elements;
        return static_cast<int>(x.check) < static_cast<int>(y.check);
    });
    return s;
}

}  // namespace dtuple
