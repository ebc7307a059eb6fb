#include "dtuple/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

namespace dtuple {

using nlohmann::json;

namespace {

std::string quote(const std::string& s) { return json(s).dump(); }

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Builds a DOM in which every number is kept as its source text.
class TextNumberSax : public nlohmann::json_sax<json> {
public:
    json root;

    bool null() override { return put(nullptr); }
    bool boolean(bool v) override { return put(v); }
    bool number_integer(number_integer_t v) override { return put(std::to_string(v)); }
    bool number_unsigned(number_unsigned_t v) override { return put(std::to_string(v)); }
    bool number_float(number_float_t, const string_t& s) override { return put(s); }
    bool string(string_t& v) override { return put(v); }
    bool binary(binary_t&) override { return false; }
    bool start_object(std::size_t) override { return open(json::object()); }
    bool key(string_t& k) override {
        key_ = k;
        return true;
    }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override { return open(json::array()); }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
        error = "parse error at byte " + std::to_string(pos) + ": " + ex.what();
        return false;
    }

    std::string error;

private:
    json* slot(json v) {
        if (stack_.empty()) {
            root = std::move(v);
            return &root;
        }
        json& top = *stack_.back();
        if (top.is_array()) {
            top.push_back(std::move(v));
            return &top.back();
        }
        top[key_] = std::move(v);
        return &top[key_];
    }
    bool put(json v) {
        slot(std::move(v));
        return true;
    }
    bool open(json v) {
        stack_.push_back(slot(std::move(v)));
        return true;
    }
    bool close() {
        stack_.pop_back();
        return true;
    }

    std::vector<json*> stack_;
    std::string key_;
};

json parse_line(const std::string& line) {
    TextNumberSax sax;
    if (!json::sax_parse(line, &sax)) throw std::invalid_argument(sax.error.empty() ? "malformed JSON" : sax.error);
    return std::move(sax.root);
}

BigInt int_field(const json& j, const char* what) {
    if (!j.is_string()) throw std::invalid_argument(std::string("expected integer for ") + what);
    return parse_bigint(j.get<std::string>());
}

DTuple tuple_from_json(const json& obj) {
    if (!obj.contains("n") || !obj.contains("elements") || !obj["elements"].is_array())
        throw std::invalid_argument("tuple object needs fields n and elements");
    const BigInt n = int_field(obj["n"], "n");
    std::vector<BigInt> elements;
    for (const auto& e : obj["elements"]) elements.push_back(int_field(e, "element"));
    auto v = verify(elements, n);
    if (!v.ok())
        throw std::invalid_argument("tuple fails D(" + to_decimal(n) + "): " + to_decimal(v.failure->a) + "*" +
                                    to_decimal(v.failure->b) + "+n is not a square");
    if (obj.contains("witnesses")) {
        const auto& ws = obj["witnesses"];
        if (!ws.is_array() || ws.size() != v.tuple->witnesses().size())
            throw std::invalid_argument("witness list does not match the tuple");
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const auto& w = ws[i];
            const auto& expect = v.tuple->witnesses()[i];
            if (!w.is_array() || w.size() != 3 || int_field(w[0], "a") != expect.a || int_field(w[1], "b") != expect.b ||
                int_field(w[2], "r") != expect.r.value())
                throw std::invalid_argument("stored witness disagrees with recomputed witness");
        }
    }
    return std::move(*v.tuple);
}

std::string rational_field(const Rational& q) { return quote(to_fraction_string(q)); }

}  // namespace

namespace {

std::string hex_digest(const unsigned char* md, unsigned len) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 15];
    }
    return out;
}

}  // namespace

std::string sha256_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (f) {
        f.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(f.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    return hex_digest(md, len);
}

std::string compute_input_digest(const std::vector<std::pair<std::string, std::string>>& parameters,
                                 const std::vector<std::string>& inputs) {
    auto sorted = parameters;
    std::sort(sorted.begin(), sorted.end());
    std::string payload;
    for (const auto& [k, v] : sorted) payload += k + "=" + v + "\n";
    for (const auto& in : inputs) payload += std::to_string(in.size()) + ":" + in;

    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(payload.data(), payload.size(), md, &len, EVP_sha256(), nullptr);
    return hex_digest(md, len);
}

std::string to_json(const RunManifest& m) {
    auto params = m.parameters;
    std::sort(params.begin(), params.end());
    std::string s = "{\"kind\":\"manifest\",\"command\":" + quote(m.command) + ",\"parameters\":{";
    for (std::size_t i = 0; i < params.size(); ++i)
        s += (i ? "," : "") + quote(params[i].first) + ":" + quote(params[i].second);
    s += "},\"artifact_version\":" + quote(m.artifact_version) + ",\"input_digest\":" + quote(m.input_digest);
    if (m.started) s += ",\"started\":" + quote(*m.started);
    if (m.finished) s += ",\"finished\":" + quote(*m.finished);
    return s + "}";
}

std::string to_json(const DTuple& t) {
    std::string s = "{\"n\":" + to_decimal(t.n()) + ",\"elements\":[";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + to_decimal(t.elements()[i]);
    s += "],\"witnesses\":[";
    bool first = true;
    for (const auto& w : t.witnesses()) {
        s += (first ? "[" : ",[") + to_decimal(w.a) + "," + to_decimal(w.b) + "," + to_decimal(w.r.value()) + "]";
        first = false;
    }
    return s + "]}";
}

std::string to_json(const SearchReport& r) {
    const auto& c = r.config;
    std::string s = "{\"kind\":\"search_report\",\"config\":{\"n\":" + std::to_string(c.n) +
                    ",\"limit\":" + std::to_string(c.limit) + ",\"min_report_size\":" + std::to_string(c.min_report_size) +
                    ",\"max_results\":" + (c.max_results ? std::to_string(*c.max_results) : "null") +
                    ",\"deterministic_order\":" + bool_str(c.deterministic_order) + "}";
    s += ",\"empirical_max_size\":" + std::to_string(r.empirical_max_size);
    s += ",\"nodes_visited\":" + std::to_string(r.nodes_visited);
    s += ",\"candidates_tested\":" + std::to_string(r.candidates_tested);
    s += ",\"result_cap_exceeded\":" + bool_str(r.result_cap_exceeded);
    s += ",\"maximal_tuples_count\":" + std::to_string(r.maximal_tuples.size());
    return s + "}";
}

void write_json_lines(std::ostream& out, const SearchReport& r) {
    out << to_json(r) << '\n';
    for (std::size_t i = 0; i < r.maximal_tuples.size(); ++i) out << to_json(r.tuple(i)) << '\n';
}

std::string to_json(const AuditSummary& a) {
    std::string s = "{\"kind\":\"audit_summary\",\"rows\":" + std::to_string(a.rows.size()) +
                    ",\"failures\":" + std::to_string(a.failures) + ",\"out_of_scope\":" + std::to_string(a.out_of_scope) +
                    ",\"lemma2_hypothesis_fired\":" + std::to_string(a.lemma2_hypothesis_fired) +
                    ",\"witness_not_found\":" + std::to_string(a.witness_not_found) +
                    ",\"negative_e_above_n2\":" + std::to_string(a.negative_e_above_n2) + ",\"vacuous_checks\":[";
    const auto vac = a.vacuous();
    for (std::size_t i = 0; i < vac.size(); ++i) s += (i ? "," : "") + quote(to_string(vac[i]));
    s += "],\"results\":[";
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& row = a.rows[i];
        s += std::string(i ? "," : "") + "{\"n\":" + to_decimal(row.n) + ",\"elements\":[";
        for (std::size_t j = 0; j < row.elements.size(); ++j) s += (j ? "," : "") + to_decimal(row.elements[j]);
        s += "],\"check\":" + quote(to_string(row.check)) + ",\"margin\":" + rational_field(row.margin) +
             ",\"verdict\":" + quote(row.verdict) + "}";
    }
    return s + "]}";
}

std::string format_fixed(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

std::string to_json(const BoundRow& row) {
    auto opt_u = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string("null"); };
    auto opt_e = [](const std::optional<Estimate>& v) { return v ? format_fixed(v->value) : std::string("null"); };
    return "{\"kind\":\"bound_row\",\"n\":" + to_decimal(row.n) + ",\"epsilon\":" + rational_field(row.epsilon) +
           ",\"k\":" + std::to_string(row.k) + ",\"ell\":" + std::to_string(row.ell) +
           ",\"a_eps_bound\":" + std::to_string(row.a_eps_bound) + ",\"b_eps_bound\":" + opt_u(row.b_eps_bound) +
           ",\"c_leading\":" + opt_e(row.c_leading) + ",\"m_leading\":" + opt_e(row.m_leading) +
           ",\"a_certified\":true,\"b_certified\":" + bool_str(row.b_eps_bound.has_value()) +
           ",\"c_certified\":false,\"m_certified\":false}";
}

std::string to_json(const BoundReport& r) {
    return "{\"kind\":\"bound_report\",\"n\":" + to_decimal(r.n) + ",\"epsilon\":" + rational_field(r.epsilon) +
           ",\"epsilon_lower\":" + rational_field(r.bracket.lower) + ",\"epsilon_upper\":" +
           rational_field(r.bracket.upper) + ",\"k\":" + std::to_string(r.k) + ",\"ell\":" + std::to_string(r.ell) +
           ",\"a_eps_bound\":" + std::to_string(r.a_eps_bound) + ",\"b_eps_bound\":" + std::to_string(r.b_eps_bound) +
           ",\"certified_part\":" + std::to_string(r.a_eps_bound + r.b_eps_bound) +
           ",\"c_leading\":" + format_fixed(r.c_leading.value) + ",\"m_leading\":" + format_fixed(r.m_leading.value) +
           ",\"a_certified\":true,\"b_certified\":true,\"c_certified\":false,\"m_certified\":false,\"note\":" +
           quote(r.note) + "}";
}

std::string join_plus(std::span<const BigInt> elements) {
    std::string s;
    for (std::size_t i = 0; i < elements.size(); ++i) s += (i ? "+" : "") + to_decimal(elements[i]);
    return s;
}

std::string tuples_csv(const std::vector<DTuple>& tuples) {
    std::string s = "n,size,elements\n";
    for (const auto& t : tuples) s += to_decimal(t.n()) + "," + std::to_string(t.size()) + "," + join_plus(t.elements()) + "\n";
    return s;
}

void write_tuples_csv(std::ostream& out, const SearchReport& r) {
    out << "n,size,elements\n";
    for (const auto& t : r.maximal_tuples) {
        out << r.config.n << ',' << t.size() << ',';
        for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "+" : "") << t[i];
        out << '\n';
    }
}

std::string audit_csv(const AuditSummary& a) {
    std::string s = "n,elements,check,margin,verdict\n";
    for (const auto& r : a.rows)
        s += to_decimal(r.n) + "," + join_plus(r.elements) + "," + to_string(r.check) + "," +
             to_fraction_string(r.margin) + "," + r.verdict + "\n";
    return s;
}

std::string bounds_csv(const std::vector<BoundRow>& rows) {
    std::string s = "n,epsilon,k,ell,a_eps_bound,b_eps_bound,c_leading,m_leading,a_certified,b_certified,c_certified,m_certified\n";
    for (const auto& r : rows) {
        s += to_decimal(r.n) + "," + to_fraction_string(r.epsilon) + "," + std::to_string(r.k) + "," +
             std::to_string(r.ell) + "," + std::to_string(r.a_eps_bound) + "," +
             (r.b_eps_bound ? std::to_string(*r.b_eps_bound) : "NA") + "," +
             (r.c_leading ? format_fixed(r.c_leading->value) : "NA") + "," +
             (r.m_leading ? format_fixed(r.m_leading->value) : "NA") + ",true," + bool_str(r.b_eps_bound.has_value()) +
             ",false,false\n";
    }
    return s;
}

std::string bound_report_csv(const std::vector<BoundReport>& reports) {
    std::string s =
        "n,epsilon,epsilon_lower,epsilon_upper,k,ell,a_eps_bound,b_eps_bound,certified_part,c_leading,m_leading,"
        "a_certified,b_certified,c_certified,m_certified\n";
    for (const auto& r : reports)
        s += to_decimal(r.n) + "," + to_fraction_string(r.epsilon) + "," + to_fraction_string(r.bracket.lower) + "," +
             to_fraction_string(r.bracket.upper) + "," + std::to_string(r.k) + "," + std::to_string(r.ell) + "," +
             std::to_string(r.a_eps_bound) + "," + std::to_string(r.b_eps_bound) + "," +
             std::to_string(r.a_eps_bound + r.b_eps_bound) + "," + format_fixed(r.c_leading.value) + "," +
             format_fixed(r.m_leading.value) + ",true,true,false,false\n";
    return s;
}

void for_each_tuple(std::istream& in, const std::function<void(DTuple&&)>& sink) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json obj = parse_line(line);
            if (!obj.is_object()) continue;
            if (obj.contains("maximal_tuples")) {
                for (const auto& t : obj["maximal_tuples"]) sink(tuple_from_json(t));
            } else if (obj.contains("elements") && obj.contains("n") && !obj.contains("check")) {
                sink(tuple_from_json(obj));
            }
        } catch (const std::exception& ex) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
}

std::vector<DTuple> read_tuples(std::istream& in) {
    std::vector<DTuple> out;
    for_each_tuple(in, [&](DTuple&& t) { out.push_back(std::move(t)); });
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::vector<DTuple> read_tuples_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return read_tuples(in);
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(path + ": " + ex.what());
    }
}

}  // namespace dtuple
