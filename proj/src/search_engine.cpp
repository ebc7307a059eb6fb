#include "dtuple/search_engine.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <thread>

namespace dtuple {

void SearchConfig::validate() const {
    if (n == 0) throw std::invalid_argument("search: n must be nonzero");
    if (limit < 1 || limit > kMaxSearchLimit)
        throw std::invalid_argument("search: limit must lie in [1, 2^32], got " + std::to_string(limit));
    if (min_report_size < 1) throw std::invalid_argument("search: min_report_size must be >= 1");
}

namespace {

// Smallest-prime-factor table for fast factoring of seeds.
class Factorizer {
public:
    static constexpr std::uint64_t kSieveCap = std::uint64_t{1} << 24;

    explicit Factorizer(std::uint64_t limit) : spf_(std::min(limit, kSieveCap) + 1, 0) {
        const std::uint32_t top = static_cast<std::uint32_t>(spf_.size() - 1);
        for (std::uint32_t i = 2; i <= top; ++i) {
            if (spf_[i]) continue;
            for (std::uint64_t j = i; j <= top; j += i)
                if (!spf_[j]) spf_[j] = i;
        }
    }

    std::vector<PrimePower> factor(std::uint64_t m) const {
        if (m >= spf_.size()) return factorize(m);
        std::vector<PrimePower> out;
        while (m > 1) {
            const std::uint32_t p = spf_[m];
            unsigned k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            out.push_back({p, k});
        }
        return out;
    }

private:
    std::vector<std::uint32_t> spf_;
};

std::uint64_t ceil_sqrt_i128(i128 x) {
    if (x <= 0) return 0;
    const std::uint64_t r = isqrt_u128(static_cast<u128>(x));
    return static_cast<u128>(r) * r == static_cast<u128>(x) ? r : r + 1;
}

// Roots t of t^2 = a*d + n for d in [lo, hi]; `residues` are the roots of n mod a.
std::vector<std::uint64_t> candidates_from_residues(std::uint64_t a, std::int64_t n, std::uint64_t lo,
                                                    std::uint64_t hi, const std::vector<std::uint64_t>& residues) {
    std::vector<std::uint64_t> out;
    lo = std::max<std::uint64_t>(lo, 1);
    if (lo > hi || residues.empty()) return out;
    const i128 top = static_cast<i128>(a) * hi + n;
    if (top < 0) return out;
    const std::uint64_t t_lo = ceil_sqrt_i128(static_cast<i128>(a) * lo + n);
    const std::uint64_t t_hi = isqrt_u128(static_cast<u128>(top));
    for (u128 base = (t_lo / a) * static_cast<u128>(a); base <= t_hi; base += a) {
        for (std::uint64_t r : residues) {
            const u128 t = base + r;
            if (t < t_lo) continue;
            if (t > t_hi) break;
            const i128 v = static_cast<i128>(t * t) - n;
            if (v <= 0) continue;
            const auto d = static_cast<std::uint64_t>(static_cast<u128>(v) / a);
            if (d >= lo && d <= hi) out.push_back(d);
        }
    }
    return out;
}

void check_candidate_args(std::uint64_t a, std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi)
        throw TupleError(TupleErrorKind::InvalidRange, std::to_string(lo) + " > " + std::to_string(hi));
    if (a == 0) throw std::invalid_argument("candidates_for: a must be positive");
    if (a >= kSqrtModLimit) throw std::invalid_argument("candidates_for: a exceeds 2^40");
    if (hi > (std::uint64_t{1} << 62)) throw std::invalid_argument("candidates_for: hi exceeds 2^62");
}

struct BlockResult {
    std::vector<std::vector<std::uint64_t>> found;
    std::size_t max_size = 0;
    std::uint64_t nodes = 0;
    std::uint64_t tested = 0;
};

enum class Mode { Maximal, ExactSize };

class Explorer {
public:
    Explorer(std::int64_t n, std::uint64_t limit, Mode mode, std::size_t target, const Factorizer& f)
        : n_(n), limit_(limit), mode_(mode), target_(target), factorizer_(f) {}

    void seed(std::uint64_t a, BlockResult& out) {
        out_ = &out;
        const auto residues = sqrt_mod(n_, factorizer_.factor(a));
        std::vector<std::uint64_t> first;
        if (a < limit_) first = candidates_from_residues(a, n_, a + 1, limit_, residues);
        stack_.assign(1, a);
        explore(first);
    }

private:
    bool square(std::uint64_t x, std::uint64_t y) const {
        std::uint64_t root;
        return is_square_i128(static_cast<i128>(static_cast<u128>(x) * y) + n_, root);
    }

    void explore(const std::vector<std::uint64_t>& cand) {
        ++out_->nodes;
        const std::size_t depth = stack_.size();
        out_->max_size = std::max(out_->max_size, depth);
        if (mode_ == Mode::ExactSize && depth == target_) {
            out_->found.push_back(stack_);
            return;
        }
        if (cand.empty()) {
            if (mode_ == Mode::Maximal && depth >= target_ && nothing_below()) out_->found.push_back(stack_);
            return;
        }
        while (buffers_.size() <= depth) buffers_.emplace_back();
        auto& child = buffers_[depth];
        for (std::size_t i = 0; i < cand.size(); ++i) {
            const std::uint64_t x = cand[i];
            child.clear();
            for (std::size_t j = i + 1; j < cand.size(); ++j) {
                ++out_->tested;
                if (square(x, cand[j])) child.push_back(cand[j]);
            }
            stack_.push_back(x);
            explore(child);
            stack_.pop_back();
        }
    }

    // True when no d below the current maximum (and outside the tuple) extends it.
    bool nothing_below() {
        const std::uint64_t m = stack_.back();
        if (m <= 1) return true;
        const auto residues = sqrt_mod(n_, factorizer_.factor(m));
        for (std::uint64_t d : candidates_from_residues(m, n_, 1, m - 1, residues)) {
            if (std::binary_search(stack_.begin(), stack_.end(), d)) continue;
            bool all = true;
            for (std::size_t k = 0; k + 1 < stack_.size() && all; ++k) {
                ++out_->tested;
                all = square(stack_[k], d);
            }
            if (all) return false;
        }
        return true;
    }

    std::int64_t n_;
    std::uint64_t limit_;
    Mode mode_;
    std::size_t target_;
    const Factorizer& factorizer_;
    BlockResult* out_ = nullptr;
    std::vector<std::uint64_t> stack_;
    std::deque<std::vector<std::uint64_t>> buffers_;  // one per depth; deque keeps references stable
};

std::vector<BlockResult> run_blocks(std::int64_t n, std::uint64_t limit, Mode mode, std::size_t target,
                                    unsigned threads) {
    constexpr std::uint64_t kBlock = 4096;
    const Factorizer factorizer(limit);
    const std::uint64_t blocks = (limit + kBlock - 1) / kBlock;
    std::vector<BlockResult> results(blocks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        Explorer ex(n, limit, mode, target, factorizer);
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            const std::uint64_t first = b * kBlock + 1;
            const std::uint64_t last = std::min(limit, first + kBlock - 1);
            for (std::uint64_t a = first; a <= last; ++a) ex.seed(a, results[b]);
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    return results;
}

bool is_d_tuple(const std::vector<std::uint64_t>& e, std::int64_t n) {
    std::uint64_t root;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (e[i] >= e[j] || !is_square_i128(static_cast<i128>(static_cast<u128>(e[i]) * e[j]) + n, root))
                return false;
    return true;
}

}  // namespace

DTuple tuple_from_words(std::span<const std::uint64_t> elements, std::int64_t n) {
    std::vector<BigInt> big;
    big.reserve(elements.size());
    for (std::uint64_t e : elements) big.push_back(from_u128(e));
    auto v = verify(big, from_i64(n));
    if (!v.ok()) throw std::logic_error("tuple_from_words: elements do not form a D(n) tuple");
    return std::move(*v.tuple);
}

DTuple SearchReport::tuple(std::size_t i) const { return tuple_from_words(maximal_tuples.at(i), config.n); }

std::vector<DTuple> SearchReport::tuples() const {
    std::vector<DTuple> out;
    out.reserve(maximal_tuples.size());
    for (std::size_t i = 0; i < maximal_tuples.size(); ++i) out.push_back(tuple(i));
    return out;
}

std::vector<std::uint64_t> candidates_for(std::uint64_t a, std::int64_t n, std::uint64_t lo, std::uint64_t hi) {
    check_candidate_args(a, lo, hi);
    return candidates_from_residues(a, n, lo, hi, sqrt_mod(n, a));
}

SearchReport search_maximal(const SearchConfig& config) {
    config.validate();
    SearchReport report;
    report.config = config;
    auto blocks = run_blocks(config.n, config.limit, Mode::Maximal, config.min_report_size, config.threads);
    for (auto& b : blocks) {
        report.empirical_max_size = std::max(report.empirical_max_size, b.max_size);
        report.nodes_visited += b.nodes;
        report.candidates_tested += b.tested;
        for (auto& elems : b.found) {
            if (config.max_results && report.maximal_tuples.size() >= *config.max_results) {
                report.result_cap_exceeded = true;
                break;
            }
            if (!is_d_tuple(elems, config.n)) throw std::logic_error("search produced a tuple that fails verification");
            report.maximal_tuples.push_back(std::move(elems));
        }
        b.found = {};
    }
    return report;
}

std::size_t empirical_M(std::int64_t n, std::uint64_t limit) {
    SearchConfig c;
    c.n = n;
    c.limit = limit;
    c.min_report_size = std::numeric_limits<std::size_t>::max();
    return search_maximal(c).empirical_max_size;
}

std::vector<std::vector<std::uint64_t>> tuples_of_size(std::int64_t n, std::uint64_t limit, std::size_t size,
                                                       unsigned threads) {
    SearchConfig c;
    c.n = n;
    c.limit = limit;
    c.validate();
    if (size == 0) throw std::invalid_argument("tuples_of_size: size must be >= 1");
    auto blocks = run_blocks(n, limit, Mode::ExactSize, size, threads);
    std::vector<std::vector<std::uint64_t>> out;
    for (auto& b : blocks)
        for (auto& t : b.found) out.push_back(std::move(t));
    return out;
}

}  // namespace dtuple
