#include "dtuple/cli.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dtuple/report_io.hpp"

namespace dtuple::cli {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        const auto b = cur.find_first_not_of(' ');
        const auto e = cur.find_last_not_of(' ');
        out.push_back(b == std::string::npos ? std::string() : cur.substr(b, e - b + 1));
    }
    return out;
}

BigInt parse_int_flag(const std::string& flag, const std::string& text) {
    try {
        return parse_bigint(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(flag + ": expected an integer, got '" + text + "'");
    }
}

std::vector<BigInt> parse_elements(const std::string& text) {
    std::vector<BigInt> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_int_flag("--elements", part));
    if (out.empty()) throw UsageError("--elements: empty list");
    return out;
}

Rational parse_eps_flag(const std::string& flag, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(flag + ": expected a rational like 1/2, got '" + text + "'");
    }
}

// "1,2,3" or "lo:hi" (inclusive, step 1).
std::vector<BigInt> parse_n_grid(const std::string& grid) {
    std::vector<BigInt> out;
    if (auto colon = grid.find(':'); colon != std::string::npos) {
        const BigInt lo = parse_int_flag("--n-grid", grid.substr(0, colon));
        const BigInt hi = parse_int_flag("--n-grid", grid.substr(colon + 1));
        if (lo > hi) throw UsageError("--n-grid: empty range '" + grid + "'");
        if (hi - lo > 1000000) throw UsageError("--n-grid: range too large");
        for (BigInt v = lo; v <= hi; ++v)
            if (sgn(v) != 0) out.push_back(v);
        return out;
    }
    for (const auto& part : split(grid, ',')) out.push_back(parse_int_flag("--n-grid", part));
    return out;
}

// "1,1/2,1/10" or "pow2:J" for 1, 1/2, ..., 2^-J.
std::vector<Rational> parse_eps_grid(const std::string& grid) {
    std::vector<Rational> out;
    if (grid.rfind("pow2:", 0) == 0) {
        const BigInt j = parse_int_flag("--eps-grid", grid.substr(5));
        if (j < 0 || j > 4096) throw UsageError("--eps-grid: pow2 exponent out of range");
        for (unsigned long i = 0; i <= j.get_ui(); ++i) out.emplace_back(BigInt(1), BigInt(1) << i);
        return out;
    }
    for (const auto& part : split(grid, ',')) out.push_back(parse_eps_flag("--eps-grid", part));
    return out;
}

std::string json_array(std::span<const BigInt> values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + to_decimal(values[i]);
    return s + "]";
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Options that change where or how a result is written, never what it is.
bool is_presentation_flag(const std::string& name) { return name == "--out" || name == "--timestamps"; }

// Writes straight through; an --out file is only created on first output so
// usage errors leave nothing behind.
class Emitter {
public:
    Emitter(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}

    void line(const std::string& s) { stream() << s << '\n'; }
    void raw(const std::string& s) { stream() << s; }

    std::ostream& stream() {
        if (path_.empty()) return out_;
        if (!file_.is_open()) {
            file_.open(path_, std::ios::binary | std::ios::trunc);
            if (!file_) throw IoError("cannot open '" + path_ + "' for writing");
        }
        return file_;
    }

    void flush() {
        auto& s = stream();
        s.flush();
        if (!s) throw IoError(path_.empty() ? "write to standard output failed" : "write to '" + path_ + "' failed");
    }

private:
    std::ostream& out_;
    std::string path_;
    std::ofstream file_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diophantine D(n) tuple laboratory", "dtuple-lab"};
    app.require_subcommand(1);

    std::string n_text, elements_text, lo_text, hi_text, out_path, format, checks_text, e_bound_text;
    std::string n_grid, eps_text, eps_grid, in_path;
    std::vector<std::string> seed_paths, search_paths;
    std::size_t min_size = 3;
    std::size_t max_results = 0;
    std::uint64_t limit = 0;
    unsigned threads = 0;
    bool timestamps = false, theorem1 = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write results to PATH instead of stdout");
        sub->add_flag("--timestamps", timestamps, "Embed wall-clock start/finish times in the manifest");
    };

    auto* verify_cmd = app.add_subcommand("verify", "Verify the D(n) property and print pair witnesses");
    verify_cmd->add_option("--n", n_text, "Parameter n");
    verify_cmd->add_option("--elements", elements_text, "Comma-separated elements");
    verify_cmd->add_option("--in", in_path, "Verify every tuple in a canonical-object file");
    verify_cmd->add_option("--format", format, "json-lines|csv");
    common(verify_cmd);

    auto* extend_cmd = app.add_subcommand("extend", "List all extensions of a tuple inside [lo, hi]");
    extend_cmd->add_option("--n", n_text)->required();
    extend_cmd->add_option("--elements", elements_text)->required();
    extend_cmd->add_option("--lo", lo_text)->required();
    extend_cmd->add_option("--hi", hi_text)->required();
    common(extend_cmd);

    auto* search_cmd = app.add_subcommand("search", "Enumerate maximal D(n) tuples below a limit");
    search_cmd->add_option("--n", n_text)->required();
    search_cmd->add_option("--limit", limit)->required();
    search_cmd->add_option("--min-size", min_size, "Smallest tuple size to report (default 3)");
    search_cmd->add_option("--max-results", max_results, "Cap on reported tuples");
    search_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");
    search_cmd->add_option("--format", format, "json-lines|csv");
    common(search_cmd);

    auto* audit_cmd = app.add_subcommand("audit", "Audit the growth lemmas on a tuple corpus");
    audit_cmd->add_option("--checks", checks_text, "lemma5,corollary4,lemma2,lemma3")->required();
    audit_cmd->add_option("--seed-corpus", seed_paths, "Tuple file(s) supplied externally");
    audit_cmd->add_option("--from-search", search_paths, "Search output file(s)");
    audit_cmd->add_option("--e-scan-bound", e_bound_text, "Bound for the fallback e scan");
    audit_cmd->add_option("--format", format, "csv|json-lines");
    common(audit_cmd);

    auto* witness_cmd = app.add_subcommand("witness", "Find the e, x, y, z witness for a triple");
    witness_cmd->add_option("--n", n_text)->required();
    witness_cmd->add_option("--elements", elements_text)->required();
    witness_cmd->add_option("--e-scan-bound", e_bound_text);
    common(witness_cmd);

    auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate thresholds and size bounds");
    auto* n_opt = bounds_cmd->add_option("--n", n_text);
    auto* grid_opt = bounds_cmd->add_option("--n-grid", n_grid, "Comma list or lo:hi");
    n_opt->excludes(grid_opt);
    auto* eps_opt = bounds_cmd->add_option("--eps", eps_text);
    auto* eps_grid_opt = bounds_cmd->add_option("--eps-grid", eps_grid, "Comma list or pow2:J");
    eps_opt->excludes(eps_grid_opt);
    bounds_cmd->add_flag("--theorem1", theorem1, "Use eps = log log|n| / log|n| per n");
    bounds_cmd->add_option("--format", format, "csv|json-lines");
    common(bounds_cmd);

    auto* report_cmd = app.add_subcommand("report", "Re-emit tuples from a result file");
    report_cmd->add_option("--in", in_path)->required();
    report_cmd->add_option("--format", format, "csv|json-lines")->required();
    common(report_cmd);

    std::vector<std::string> argv_store{"dtuple-lab"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        (void)e;
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (format.empty())
        format = (sub == audit_cmd || sub == bounds_cmd || sub == report_cmd) ? "csv" : "json-lines";
    RunManifest manifest;
    manifest.command = sub->get_name();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->count() == 0 || is_presentation_flag(opt->get_name())) continue;
        std::string joined;
        for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ";") + r;
        manifest.parameters.emplace_back(opt->get_name(), opt->get_expected_min() == 0 ? "true" : joined);
    }
    if (timestamps) manifest.started = utc_now();
    std::vector<std::string> inputs;
    auto finish_manifest = [&] {
        manifest.input_digest = compute_input_digest(manifest.parameters, inputs);
        if (timestamps) manifest.finished = utc_now();
        return to_json(manifest);
    };
    auto require_format = [&](std::initializer_list<const char*> allowed) {
        for (const char* f : allowed)
            if (format == f) return;
        throw UsageError("--format: unsupported value '" + format + "'");
    };

    Emitter emit(out, out_path);
    int status = kExitOk;
    try {
        if (sub == verify_cmd) {
            require_format({"json-lines", "csv"});
            std::vector<std::vector<BigInt>> sets;
            std::vector<BigInt> ns;
            if (!in_path.empty()) {
                if (!n_text.empty() || !elements_text.empty())
                    throw UsageError("--in cannot be combined with --n/--elements");
                // Tuples in files are re-verified on read; a bad one fails the whole file.
                inputs.push_back(sha256_file(in_path));
                for (const auto& t : read_tuples_file(in_path)) {
                    sets.emplace_back(t.elements().begin(), t.elements().end());
                    ns.push_back(t.n());
                }
            } else {
                if (n_text.empty() || elements_text.empty()) throw UsageError("verify needs --n and --elements, or --in");
                sets.push_back(parse_elements(elements_text));
                ns.push_back(parse_int_flag("--n", n_text));
            }
            std::vector<DTuple> ok;
            std::vector<std::string> lines;
            for (std::size_t i = 0; i < sets.size(); ++i) {
                auto v = verify(sets[i], ns[i]);
                if (v.ok()) {
                    lines.push_back(to_json(*v.tuple));
                    ok.push_back(std::move(*v.tuple));
                } else {
                    status = kExitFindings;
                    std::vector<BigInt> sorted = sets[i];
                    std::sort(sorted.begin(), sorted.end());
                    lines.push_back("{\"kind\":\"verification_failure\",\"n\":" + to_decimal(ns[i]) +
                                    ",\"elements\":" + json_array(sorted) + ",\"pair\":[" + to_decimal(v.failure->a) +
                                    "," + to_decimal(v.failure->b) + "],\"value\":" + to_decimal(v.failure->value) + "}");
                    err << "verify: " << to_decimal(v.failure->a) << "*" << to_decimal(v.failure->b) << " + "
                        << to_decimal(ns[i]) << " = " << to_decimal(v.failure->value) << " is not a square\n";
                }
            }
            if (format == "csv") {
                emit.raw(tuples_csv(ok));
            } else {
                emit.line(finish_manifest());
                for (const auto& l : lines) emit.line(l);
            }
        } else if (sub == extend_cmd) {
            const BigInt n = parse_int_flag("--n", n_text);
            auto v = verify(parse_elements(elements_text), n);
            if (!v.ok()) {
                err << "extend: base tuple is not a D(" << to_decimal(n) << ") tuple\n";
                return kExitFindings;
            }
            const auto ext = extend(*v.tuple, parse_int_flag("--lo", lo_text), parse_int_flag("--hi", hi_text));
            emit.line(finish_manifest());
            emit.line("{\"kind\":\"extension\",\"n\":" + to_decimal(n) + ",\"elements\":" +
                      json_array(v.tuple->elements()) + ",\"lo\":" + to_decimal(parse_bigint(lo_text)) +
                      ",\"hi\":" + to_decimal(parse_bigint(hi_text)) + ",\"extensions\":" + json_array(ext) + "}");
        } else if (sub == search_cmd) {
            require_format({"json-lines", "csv"});
            SearchConfig cfg;
            const auto n64 = to_i64(parse_int_flag("--n", n_text));
            if (!n64) throw UsageError("--n: search supports 64-bit n only");
            cfg.n = *n64;
            cfg.limit = limit;
            cfg.min_report_size = min_size;
            if (search_cmd->count("--max-results")) cfg.max_results = max_results;
            cfg.threads = threads;
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto report = search_maximal(cfg);
            if (report.result_cap_exceeded) {
                err << "search: ResultCapExceeded, output holds the first " << *cfg.max_results << " tuples only\n";
                status = kExitFindings;
            }
            if (format == "csv") {
                write_tuples_csv(emit.stream(), report);
            } else {
                emit.line(finish_manifest());
                write_json_lines(emit.stream(), report);
            }
            err << "search: n=" << cfg.n << " limit=" << cfg.limit << " maximal=" << report.maximal_tuples.size()
                << " empirical_max_size=" << report.empirical_max_size << "\n";
        } else if (sub == audit_cmd) {
            require_format({"json-lines", "csv"});
            AuditOptions opts;
            for (const auto& name : split(checks_text, ',')) {
                try {
                    opts.checks.push_back(parse_audit_check(name));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(std::string("--checks: ") + e.what());
                }
            }
            if (!e_bound_text.empty()) opts.e_scan_bound = parse_int_flag("--e-scan-bound", e_bound_text);
            if (seed_paths.empty() && search_paths.empty())
                throw UsageError("audit needs --seed-corpus or --from-search");
            std::vector<DTuple> corpus;
            for (const auto* list : {&seed_paths, &search_paths})
                for (const auto& p : *list) {
                    inputs.push_back(sha256_file(p));
                    auto part = read_tuples_file(p);
                    std::move(part.begin(), part.end(), std::back_inserter(corpus));
                }
            const auto summary = run_audit(corpus, opts);
            if (summary.failures || summary.witness_not_found) status = kExitFindings;
            if (format == "csv") {
                emit.raw(audit_csv(summary));
            } else {
                emit.line(finish_manifest());
                emit.line(to_json(summary));
            }
            err << "audit: " << summary.rows.size() << " rows, " << summary.failures << " failures, "
                << summary.witness_not_found << " witness_not_found, " << summary.out_of_scope
                << " out of scope, lemma2 hypothesis fired " << summary.lemma2_hypothesis_fired << " times\n";
            for (auto c : summary.vacuous())
                err << "audit: " << to_string(c) << " is vacuous on this corpus (no instance within its hypotheses)\n";
        } else if (sub == witness_cmd) {
            auto v = verify(parse_elements(elements_text), parse_int_flag("--n", n_text));
            if (!v.ok()) {
                err << "witness: input is not a D(n) tuple\n";
                return kExitFindings;
            }
            if (v.tuple->size() != 3) throw UsageError("--elements: witness needs exactly 3 elements");
            std::optional<BigInt> bound;
            if (!e_bound_text.empty()) bound = parse_int_flag("--e-scan-bound", e_bound_text);
            emit.line(finish_manifest());
            try {
                const auto w = find_witness_e(*v.tuple, bound);
                const auto el = v.tuple->elements();
                emit.line("{\"kind\":\"lemma3_witness\",\"n\":" + to_decimal(v.tuple->n()) +
                          ",\"elements\":" + json_array(el) + ",\"e\":" + to_decimal(w.e) + ",\"x\":" + to_decimal(w.x.value()) +
                          ",\"y\":" + to_decimal(w.y.value()) + ",\"z\":" + to_decimal(w.z.value()) +
                          ",\"sign_x\":" + std::to_string(w.sign_x) + ",\"sign_y\":" + std::to_string(w.sign_y) +
                          ",\"source\":\"" + (w.from_closed_form ? "closed_form" : "scan") + "\"}");
            } catch (const WitnessNotFound& e) {
                err << "witness: " << e.what() << " (not found in range; inconclusive)\n";
                status = kExitFindings;
            }
        } else if (sub == bounds_cmd) {
            require_format({"json-lines", "csv"});
            std::vector<BigInt> ns;
            if (!n_text.empty()) ns.push_back(parse_int_flag("--n", n_text));
            else if (!n_grid.empty()) ns = parse_n_grid(n_grid);
            else throw UsageError("bounds needs --n or --n-grid");
            for (const auto& n : ns)
                if (sgn(n) == 0) throw UsageError("--n: n must be nonzero");
            if (theorem1) {
                std::vector<BoundReport> reports;
                for (const auto& n : ns) {
                    try {
                        reports.push_back(m_bound_report(n));
                    } catch (const NotApplicable& e) {
                        err << "bounds: n=" << to_decimal(n) << " skipped: " << e.what() << "\n";
                    }
                }
                if (format == "csv") {
                    emit.raw(bound_report_csv(reports));
                } else {
                    emit.line(finish_manifest());
                    for (const auto& r : reports) emit.line(to_json(r));
                }
            } else {
                std::vector<Rational> eps;
                if (!eps_text.empty()) eps.push_back(parse_eps_flag("--eps", eps_text));
                else if (!eps_grid.empty()) eps = parse_eps_grid(eps_grid);
                else throw UsageError("bounds needs --eps, --eps-grid or --theorem1");
                for (const auto& e : eps)
                    if (sgn(e) <= 0 || cmp(e, 1) > 0) throw UsageError("--eps: epsilon must lie in (0, 1]");
                std::vector<BoundRow> rows;
                for (const auto& n : ns)
                    for (const auto& e : eps) rows.push_back(bound_row(n, e));
                if (format == "csv") {
                    emit.raw(bounds_csv(rows));
                } else {
                    emit.line(finish_manifest());
                    for (const auto& r : rows) emit.line(to_json(r));
                }
            }
        } else if (sub == report_cmd) {
            require_format({"json-lines", "csv"});
            inputs.push_back(sha256_file(in_path));
            auto tuples = read_tuples_file(in_path);
            std::sort(tuples.begin(), tuples.end(), [](const DTuple& a, const DTuple& b) {
                if (a.n() != b.n()) return a.n() < b.n();
                return std::lexicographical_compare(a.elements().begin(), a.elements().end(), b.elements().begin(),
                                                    b.elements().end());
            });
            if (format == "csv") {
                emit.raw(tuples_csv(tuples));
            } else {
                emit.line(finish_manifest());
                for (const auto& t : tuples) emit.line(to_json(t));
            }
        }
        emit.flush();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TupleError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return status;
}

}  // namespace dtuple::cli
