#pragma once

// Exhaustive enumeration of D(n) tuples with elements in [1, limit].
//
// Every tuple is visited exactly once, as its ascending element sequence:
// seeds are single elements and children always exceed the current maximum.
// The candidate list of a node is the set of larger elements compatible with
// every member; a child's list is its parent's list filtered by one more
// square test, so no list is ever recomputed.

#include <cstdint>
#include <optional>
#include <vector>

#include "dtuple/tuple_model.hpp"

namespace dtuple {

/// Largest supported search limit; keeps every a*b + n inside 128 bits with
/// square roots inside 64 bits.
inline constexpr std::uint64_t kMaxSearchLimit = std::uint64_t{1} << 32;

struct SearchConfig {
    std::int64_t n = 1;
    std::uint64_t limit = 1;
    std::size_t min_report_size = 3;
    std::optional<std::size_t> max_results;
    bool deterministic_order = true;
    unsigned threads = 0;  // 0: hardware concurrency

    /// Throws std::invalid_argument for n == 0, limit outside [1, kMaxSearchLimit]
    /// or min_report_size == 0.
    void validate() const;
};

/// Maximal tuples are held as ascending machine-word element lists, each
/// checked against the D(n) property before it is stored; `tuple(i)`
/// materialises the fully witnessed DTuple.
struct SearchReport {
    SearchConfig config;
    std::vector<std::vector<std::uint64_t>> maximal_tuples;  // lexicographic
    std::size_t empirical_max_size = 0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t candidates_tested = 0;
    bool result_cap_exceeded = false;  // maximal_tuples holds the first max_results only

    DTuple tuple(std::size_t i) const;
    std::vector<DTuple> tuples() const;
};

/// Witnessed DTuple from a machine-word element list; throws std::logic_error
/// if the list is not a D(n) tuple.
DTuple tuple_from_words(std::span<const std::uint64_t> elements, std::int64_t n);

/// Every d in [lo, hi] with a*d + n a perfect square, ascending.
/// Throws TupleError(InvalidRange) when lo > hi.
std::vector<std::uint64_t> candidates_for(std::uint64_t a, std::int64_t n, std::uint64_t lo, std::uint64_t hi);

SearchReport search_maximal(const SearchConfig& config);

/// Largest D(n) tuple with elements <= limit. A lower bound for M_n only.
std::size_t empirical_M(std::int64_t n, std::uint64_t limit);

/// Every D(n) tuple of exactly `size` elements inside [1, limit], as ascending
/// element lists in lexicographic order.
std::vector<std::vector<std::uint64_t>> tuples_of_size(std::int64_t n, std::uint64_t limit, std::size_t size,
                                                       unsigned threads = 0);

}  // namespace dtuple
