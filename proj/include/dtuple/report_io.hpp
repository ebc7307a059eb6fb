#pragma once

// Canonical object form (one JSON object per line) and CSV emission.
//
// Integers of any size are written as bare decimal JSON numbers. The reader
// keeps every integer token as text, so nothing passes through a double.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtuple/bounds.hpp"
#include "dtuple/lemma_audit.hpp"
#include "dtuple/search_engine.hpp"

namespace dtuple {

inline constexpr const char* kArtifactVersion = "dtuple-lab 1.0.0";

struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;  // emitted sorted by key
    std::string artifact_version = kArtifactVersion;
    std::string input_digest;                                     // "sha256:<hex>"
    std::optional<std::string> started;                           // only with --timestamps
    std::optional<std::string> finished;
};

/// "sha256:<hex>" of a file's bytes, read in chunks.
std::string sha256_file(const std::string& path);

/// SHA-256 over the sorted parameters followed by the given input payloads
/// (the CLI passes per-file digests).
std::string compute_input_digest(const std::vector<std::pair<std::string, std::string>>& parameters,
                                 const std::vector<std::string>& inputs);

std::string to_json(const RunManifest& m);
std::string to_json(const DTuple& t);
/// Header object only: config echo, counters and the number of maximal
/// tuples. `write_json_lines` follows it with one DTuple object per line.
std::string to_json(const SearchReport& r);
void write_json_lines(std::ostream& out, const SearchReport& r);
std::string to_json(const AuditSummary& s);
std::string to_json(const BoundRow& row);
std::string to_json(const BoundReport& r);

std::string tuples_csv(const std::vector<DTuple>& tuples);
void write_tuples_csv(std::ostream& out, const SearchReport& r);
std::string audit_csv(const AuditSummary& s);
std::string bounds_csv(const std::vector<BoundRow>& rows);
std::string bound_report_csv(const std::vector<BoundReport>& reports);

/// "1+3+8+120"
std::string join_plus(std::span<const BigInt> elements);

/// Fixed six-decimal rendering independent of the C locale.
std::string format_fixed(double v);

/// Reads every tuple from a file of canonical objects: DTuple lines and any
/// object carrying a maximal_tuples array. Other objects are skipped. Each
/// tuple is re-verified; a stored witness that disagrees is an error.
void for_each_tuple(std::istream& in, const std::function<void(DTuple&&)>& sink);
std::vector<DTuple> read_tuples(std::istream& in);
std::vector<DTuple> read_tuples_file(const std::string& path);

/// Error carrying the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace dtuple
