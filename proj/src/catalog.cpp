#include "tangle/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>
#include "tangle/error.hpp"

namespace tangle {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// JSON tree that keeps every number as its source lexeme.
struct Node {
    enum Kind { Null, Bool, Number, String, Array, Object } kind = Null;
    std::string text;
    std::vector<Node> items;
    std::vector<std::pair<std::string, Node>> fields;

    Node() = default;
    explicit Node(Kind k, std::string t = {}) : kind(k), text(std::move(t)) {}

    const Node* get(const std::string& k) const {
        for (auto& [name, v] : fields)
            if (name == k) return &v;
        return nullptr;
    }
};

class LexemeSax : public nlohmann::json_sax<json> {
public:
    Node root;
    size_t error_pos = 0;
    std::string error_msg;

    bool null() override { return put(Node{Node::Null}); }
    bool boolean(bool v) override { return put(Node{Node::Bool, v ? "true" : "false"}); }
    bool number_integer(number_integer_t v) override { return put(Node{Node::Number, std::to_string(v)}); }
    bool number_unsigned(number_unsigned_t v) override { return put(Node{Node::Number, std::to_string(v)}); }
    bool number_float(number_float_t, const string_t& s) override { return put(Node{Node::Number, s}); }
    bool string(string_t& v) override { return put(Node{Node::String, v}); }
    bool binary(binary_t&) override { return put(Node{Node::Null}); }
    bool start_object(std::size_t) override {
        stack_.push_back(Node{Node::Object});
        keys_.emplace_back();
        return true;
    }
    bool key(string_t& k) override {
        keys_.back() = k;
        return true;
    }
    bool end_object() override {
        Node n = std::move(stack_.back());
        stack_.pop_back();
        keys_.pop_back();
        return put(std::move(n));
    }
    bool start_array(std::size_t) override {
        stack_.push_back(Node{Node::Array});
        keys_.emplace_back();
        return true;
    }
    bool end_array() override { return end_object(); }
    bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
        error_pos = pos;
        error_msg = ex.what();
        return false;
    }

private:
    std::vector<Node> stack_;
    std::vector<std::string> keys_;

    bool put(Node n) {
        if (stack_.empty()) {
            root = std::move(n);
        } else if (stack_.back().kind == Node::Object) {
            stack_.back().fields.emplace_back(keys_.back(), std::move(n));
        } else {
            stack_.back().items.push_back(std::move(n));
        }
        return true;
    }
};

std::string line_col(const std::string& text, size_t pos) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < pos && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + " column " + std::to_string(col);
}

struct Reader {
    std::string origin;

    [[noreturn]] void fail(const std::string& where, const std::string& what) const {
        throw Error("ParseError", origin + ": " + where + ": " + what);
    }

    const Node& need(const Node& obj, const std::string& key, const std::string& where) const {
        if (obj.kind != Node::Object) fail(where, "expected an object");
        const Node* v = obj.get(key);
        if (!v) fail(where, "missing field '" + key + "'");
        return *v;
    }

    double number(const Node& n, const std::string& where) const {
        if (n.kind != Node::Number) fail(where, "expected a number");
        char* end = nullptr;
        double v = std::strtod(n.text.c_str(), &end);
        if (end != n.text.c_str() + n.text.size() || !std::isfinite(v)) fail(where, "bad number '" + n.text + "'");
        return v;
    }

    long long integer(const Node& n, const std::string& where) const {
        double v = number(n, where);
        double r = std::round(v);
        // floating residue such as -3.7e-15 stands for an exact integer
        if (std::abs(v - r) > 1e-6 || std::abs(r) > 9e15) fail(where, "expected an integer, got '" + n.text + "'");
        return (long long)r;
    }

    std::string str(const Node& n, const std::string& where) const {
        if (n.kind != Node::String) fail(where, "expected a string");
        return n.text;
    }

    std::vector<std::vector<int>> matrix(const Node& n, const std::string& where) const {
        if (n.kind != Node::Array) fail(where, "expected an array of rows");
        std::vector<std::vector<int>> m;
        for (size_t i = 0; i < n.items.size(); ++i) {
            const Node& row = n.items[i];
            std::string w = where + "[" + std::to_string(i) + "]";
            if (row.kind != Node::Array) fail(w, "expected an array");
            std::vector<int> r;
            for (size_t k = 0; k < row.items.size(); ++k)
                r.push_back((int)integer(row.items[k], w + "[" + std::to_string(k) + "]"));
            m.push_back(std::move(r));
        }
        return m;
    }
};

bool decimal_string(const std::string& s) {
    if (s.empty()) return false;
    size_t i = s[0] == '-' ? 1 : 0;
    bool digit = false, dot = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit((unsigned char)s[i]))
            digit = true;
        else if (s[i] == '.' && !dot)
            dot = true;
        else
            return false;
    }
    return digit;
}

}  // namespace

bool CatalogEntry::operator==(const CatalogEntry& o) const {
    return name == o.name && source == o.source && line_text == o.line_text && expected_det == o.expected_det &&
           expected_P == o.expected_P && expected_R == o.expected_R && expected_wp == o.expected_wp &&
           expected_wp_mirror == o.expected_wp_mirror && config.has_value() == o.config.has_value();
}

CatalogEntry parse_entry(const std::string& text, const std::string& origin) {
    LexemeSax sax;
    bool ok = json::sax_parse(text, &sax);
    Reader rd{origin};
    if (!ok) rd.fail(line_col(text, sax.error_pos), sax.error_msg);
    const Node& root = sax.root;
    if (root.kind != Node::Object) rd.fail("$", "expected an object");

    CatalogEntry e;
    e.file = origin;
    e.name = rd.str(rd.need(root, "name", "$"), "name");
    if (e.name.empty()) rd.fail("name", "empty name");
    if (const Node* s = root.get("source")) e.source = rd.str(*s, "source");

    if (const Node* lines = root.get("lines")) {
        if (lines->kind != Node::Array) rd.fail("lines", "expected an array");
        LineConfiguration cfg;
        for (size_t i = 0; i < lines->items.size(); ++i) {
            const Node& l = lines->items[i];
            std::string w = "lines[" + std::to_string(i) + "]";
            LineSpec spec;
            std::array<std::string, 4> lex;
            const char* keys[4] = {"t", "p", "z", "r"};
            double* dst[4] = {&spec.t, &spec.p, &spec.z, &spec.r};
            for (int f = 0; f < 4; ++f) {
                const Node& v = rd.need(l, keys[f], w);
                *dst[f] = rd.number(v, w + "." + keys[f]);
                lex[f] = v.text;
            }
            if (!(spec.r > 0)) rd.fail(w + ".r", "radius must be positive");
            if (const Node* s = l.get("sigma")) {
                long long sg = rd.integer(*s, w + ".sigma");
                if (sg != 1 && sg != -1) rd.fail(w + ".sigma", "must be +1 or -1");
                spec.sigma = (int)sg;
            }
            cfg.lines.push_back(spec);
            e.line_text.push_back(lex);
        }
        e.config = cfg;
    }

    if (const Node* ex = root.get("expected")) {
        if (ex->kind != Node::Object) rd.fail("expected", "expected an object");
        if (const Node* d = ex->get("det")) e.expected_det = rd.integer(*d, "expected.det");
        try {
            if (const Node* p = ex->get("P")) e.expected_P = ChiralityMatrix::validate(rd.matrix(*p, "expected.P"));
        } catch (const Error& err) {
            if (err.kind() == "ParseError") throw;
            rd.fail("expected.P", err.what());
        }
        try {
            if (const Node* r = ex->get("R")) e.expected_R = RingMatrix::validate(rd.matrix(*r, "expected.R"));
        } catch (const Error& err) {
            if (err.kind() == "ParseError") throw;
            rd.fail("expected.R", err.what());
        }
        for (auto [key, dst] : {std::pair{"wp", &e.expected_wp}, std::pair{"wp_mirror", &e.expected_wp_mirror}}) {
            if (const Node* w = ex->get(key)) {
                std::string s = rd.str(*w, std::string("expected.") + key);
                if (!decimal_string(s)) rd.fail(std::string("expected.") + key, "not a decimal: '" + s + "'");
                *dst = s;
            }
        }
    }
    if (e.config && e.expected_P && e.expected_P->n() != e.config->n())
        rd.fail("expected.P", "dimension " + std::to_string(e.expected_P->n()) + " does not match " +
                                  std::to_string(e.config->n()) + " lines");
    if (e.config && e.expected_R && e.expected_R->n() != e.config->n())
        rd.fail("expected.R", "dimension does not match the line count");
    return e;
}

std::vector<CatalogEntry> ingest(const std::string& path) {
    std::vector<std::string> files;
    if (fs::is_directory(path)) {
        for (auto& de : fs::directory_iterator(path))
            if (de.is_regular_file() && de.path().extension() == ".json") files.push_back(de.path().string());
        std::sort(files.begin(), files.end());
    } else if (fs::is_regular_file(path)) {
        files.push_back(path);
    } else {
        throw Error("ParseError", path + ": no such file or directory");
    }
    std::vector<CatalogEntry> out;
    std::set<std::string> names;
    for (auto& f : files) {
        std::ifstream in(f);
        if (!in) throw Error("ParseError", f + ": cannot open");
        std::stringstream ss;
        ss << in.rdbuf();
        CatalogEntry e = parse_entry(ss.str(), f);
        if (!names.insert(e.name).second) throw Error("DuplicateName", e.name + " in " + f);
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string write_rows(const std::vector<std::vector<int>>& m) {
    std::string s = "[\n";
    for (size_t i = 0; i < m.size(); ++i) {
        s += "      [";
        for (size_t k = 0; k < m[i].size(); ++k) {
            if (k) s += ", ";
            s += std::to_string(m[i][k]);
        }
        s += i + 1 < m.size() ? "],\n" : "]\n";
    }
    return s + "    ]";
}

}  // namespace

std::string write_entry(const CatalogEntry& e) {
    std::string s = "{\n  \"name\": " + json_string(e.name) + ",\n";
    if (!e.source.empty()) s += "  \"source\": " + json_string(e.source) + ",\n";
    std::vector<std::string> parts;
    if (e.config) {
        std::string l = "  \"lines\": [\n";
        for (size_t i = 0; i < e.config->lines.size(); ++i) {
            const auto& t = e.line_text[i];
            l += "    {\"t\": " + t[0] + ", \"p\": " + t[1] + ", \"z\": " + t[2] + ", \"r\": " + t[3] +
                 ", \"sigma\": " + std::to_string(e.config->lines[i].sigma) + "}";
            l += i + 1 < e.config->lines.size() ? ",\n" : "\n";
        }
        parts.push_back(l + "  ]");
    }
    std::vector<std::string> ex;
    if (e.expected_det) ex.push_back("    \"det\": " + std::to_string(*e.expected_det));
    if (e.expected_P) ex.push_back("    \"P\": " + write_rows(e.expected_P->rows()));
    if (e.expected_R) ex.push_back("    \"R\": " + write_rows(e.expected_R->rows()));
    if (e.expected_wp) ex.push_back("    \"wp\": " + json_string(*e.expected_wp));
    if (e.expected_wp_mirror) ex.push_back("    \"wp_mirror\": " + json_string(*e.expected_wp_mirror));
    if (!ex.empty()) {
        std::string b = "  \"expected\": {\n";
        for (size_t i = 0; i < ex.size(); ++i) b += ex[i] + (i + 1 < ex.size() ? ",\n" : "\n");
        parts.push_back(b + "  }");
    }
    for (size_t i = 0; i < parts.size(); ++i) s += parts[i] + (i + 1 < parts.size() ? ",\n" : "\n");
    if (parts.empty()) s.erase(s.size() - 2, 1);  // drop the trailing comma after the last scalar field
    return s + "}\n";
}

bool VerificationRow::pass() const {
    if (!error.empty() || !tangency_ok) return false;
    for (auto m : {p_match, r_match, det_match, wp_match, wp_mirror_match})
        if (m && !*m) return false;
    return true;
}

bool VerificationReport::pass() const {
    for (auto& r : rows)
        if (!r.pass()) return false;
    return true;
}

std::string VerificationReport::to_text() const {
    std::string s = "convention " + convention_name(convention) + "\n";
    auto flag = [](const std::optional<bool>& b) { return !b ? std::string("-") : *b ? std::string("ok") : std::string("FAIL"); };
    size_t passed = 0;
    for (auto& r : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1e", r.tangency_max);
        s += r.name + " tangency=" + buf + (r.tangency_ok ? "" : "(FAIL)") + " P=" + flag(r.p_match) +
             " R=" + flag(r.r_match) + " det=" + flag(r.det_match) + " wp=" + flag(r.wp_match) +
             " wp_mirror=" + flag(r.wp_mirror_match);
        if (!r.wp.empty()) s += " [" + r.wp + " / " + r.wp_mirror + "]";
        if (!r.error.empty()) s += " error=" + r.error;
        s += "\n";
        passed += r.pass();
    }
    s += std::string(pass() ? "PASS" : "FAIL") + " " + std::to_string(passed) + "/" + std::to_string(rows.size()) + "\n";
    return s;
}

VerificationRow verify_entry(const CatalogEntry& entry, AngleConvention conv) {
    VerificationRow row;
    row.name = entry.name;
    if (!entry.config) {
        row.error = "NoCoordinates";
        return row;
    }
    try {
        auto lines = realize(*entry.config, conv);
        auto tang = verify_tangency(lines);
        row.tangency_max = tang.max_residual;
        row.tangency_ok = tang.pass;
        const ChiralityMatrix* fb = entry.expected_P ? &*entry.expected_P : nullptr;
        ChiralityMatrix p = chirality_from_geometry(lines, fb);
        RingMatrix r = ring_matrix_from_geometry(lines);
        if (entry.expected_P) row.p_match = p == *entry.expected_P;
        if (entry.expected_R) row.r_match = r == *entry.expected_R;
        if (entry.expected_det) row.det_match = determinant(p) == (Int128)*entry.expected_det;
        try {
            row.wp = render_decimal(wp(p, r));
            row.wp_mirror = render_decimal(wp(mirror(p), r));
        } catch (const Error& err) {
            if (err.kind() != "SingularIMinusR") throw;
            row.wp = row.wp_mirror = "undefined";
        }
        if (entry.expected_wp) row.wp_match = row.wp == pad_decimal(*entry.expected_wp);
        if (entry.expected_wp_mirror) row.wp_mirror_match = row.wp_mirror == pad_decimal(*entry.expected_wp_mirror);
    } catch (const Error& err) {
        row.error = err.what();
    }
    return row;
}

VerificationReport verify_catalog(const std::vector<CatalogEntry>& entries, int threads) {
    VerificationReport rep;
    const CatalogEntry* ref = nullptr;
    for (auto& e : entries)
        if (e.name == "a89" && e.config) ref = &e;
    for (auto& e : entries)
        if (!ref && e.config) ref = &e;
    if (!ref) throw Error("NoConventionFits", "catalog has no configuration to calibrate on");
    rep.convention = calibrate_convention(*ref->config);
    rep.rows.resize(entries.size());
    if (threads <= 0) threads = (int)std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < entries.size();) rep.rows[i] = verify_entry(entries[i], rep.convention);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return rep;
}

std::vector<InvariantRow> read_invariant_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", path + ": cannot open");
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line)) throw Error("ParseError", path + ": line 1: empty table");
    auto split = [](const std::string& l) {
        std::vector<std::string> c;
        std::stringstream ss(l);
        std::string f;
        while (std::getline(ss, f, '\t')) c.push_back(f);
        return c;
    };
    auto head = split(line);
    auto col = [&](const std::string& name) -> int {
        for (size_t i = 0; i < head.size(); ++i)
            if (head[i] == name) return (int)i;
        return -1;
    };
    int cdet = col("det"), cname = col("name"), cwp = col("wp"), cm = col("mirror"), cwm = col("wp_mirror");
    if (cname < 0 || cwp < 0) throw Error("ParseError", path + ": line 1: need name and wp columns");
    std::vector<InvariantRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto c = split(line);
        auto at = [&](int i) -> std::string {
            if (i < 0) return "";
            if (i >= (int)c.size()) throw Error("ParseError", path + ": line " + std::to_string(lineno) + ": missing column");
            return c[i];
        };
        InvariantRow r;
        if (cdet >= 0) {
            try {
                r.det = std::stoll(at(cdet));
            } catch (const std::logic_error&) {
                throw Error("ParseError", path + ": line " + std::to_string(lineno) + ": bad det");
            }
        }
        r.name = at(cname);
        r.value = at(cwp);
        r.mirror_name = at(cm);
        r.mirror_value = at(cwm);
        for (auto* v : {&r.value, &r.mirror_value})
            if (!v->empty() && !decimal_string(*v))
                throw Error("ParseError", path + ": line " + std::to_string(lineno) + ": bad value '" + *v + "'");
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

mpz_class floor_q(const mpq_class& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

// smallest-denominator rational between lo and hi (hi absent means unbounded), 0 <= lo < hi
mpq_class simplest_between(const mpq_class& lo, bool lo_closed, const std::optional<mpq_class>& hi, bool hi_closed) {
    mpz_class f = floor_q(lo);
    if (mpq_class(f) == lo && lo_closed) return lo;
    mpq_class up(f + 1);
    if (!hi || up < *hi || (up == *hi && hi_closed)) return up;
    if (mpq_class(f) == lo) return mpq_class(f) + 1 / simplest_between(1 / (*hi - f), hi_closed, std::nullopt, false);
    mpq_class rest = simplest_between(1 / (*hi - f), hi_closed, mpq_class(1 / (lo - f)), lo_closed);
    return mpq_class(f) + 1 / rest;
}

}  // namespace

mpq_class reconstruct_decimal(const std::string& printed) {
    if (!decimal_string(printed)) throw Error("ParseError", "not a decimal: '" + printed + "'");
    bool neg = printed[0] == '-';
    std::string mag = neg ? printed.substr(1) : printed;
    auto dot = mag.find('.');
    int places = dot == std::string::npos ? 0 : (int)(mag.size() - dot - 1);
    std::string digits = dot == std::string::npos ? mag : mag.substr(0, dot) + mag.substr(dot + 1);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpq_class v(mpz_class(digits, 10), scale);
    v.canonicalize();
    mpq_class u(1, scale);
    u.canonicalize();
    mpq_class lo = v - u / 2, hi = v + u;
    if (sgn(lo) <= 0) return 0;
    mpq_class q = simplest_between(lo, true, hi, false);
    return neg ? mpq_class(-q) : q;
}

const std::vector<std::vector<std::string>>& declared_equal_groups() {
    static const std::vector<std::vector<std::string>> g = {{"a3", "b3"}, {"a9", "b9"}, {"c2", "c3", "d3"},
                                                             {"b5", "c5"}, {"a5", "d5", "e5"}, {"c9", "d9"},
                                                             {"a7", "e7"}};
    return g;
}

PairsCheckReport invariant_pairs_check(const std::vector<InvariantRow>& table) {
    PairsCheckReport rep;
    auto find = [&](const std::string& name) -> const InvariantRow& {
        for (auto& r : table)
            if (r.name == name) return r;
        throw Error("TableMismatch", "missing row " + name);
    };
    const mpq_class target(202, 5);
    for (std::string name : {"e9", "d9"}) {
        const auto& r = find(name);
        mpq_class a = reconstruct_decimal(r.value), b = reconstruct_decimal(r.mirror_value);
        mpq_class sum = a + b;
        double diff = std::abs(mpq_class(sum - target).get_d());
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1e", diff);
        rep.lines.push_back(name + ": " + r.value + " + " + r.mirror_value + " -> " + a.get_str() + " + " +
                            b.get_str() + " = " + sum.get_str() + " (|diff from 40.4| = " + buf + ")");
        if (diff > 1e-9) throw Error("TableMismatch", name + " ring invariant " + sum.get_str() + " is not 40.4");
    }
    for (auto& group : declared_equal_groups()) {
        const auto& first = find(group[0]);
        mpq_class w0 = reconstruct_decimal(first.value), m0 = reconstruct_decimal(first.mirror_value);
        std::string line;
        for (auto& name : group) {
            const auto& r = find(name);
            if (reconstruct_decimal(r.value) != w0 || reconstruct_decimal(r.mirror_value) != m0)
                throw Error("TableMismatch", name + " differs from " + group[0]);
            line += (line.empty() ? "" : " = ") + name;
        }
        rep.lines.push_back(line + ": " + w0.get_str() + " / " + m0.get_str());
    }
    return rep;
}

EqualRadiiReport equal_radii_screen(const std::vector<CatalogEntry>& entries) {
    EqualRadiiReport rep;
    for (auto& e : entries) {
        if (!e.config || !e.expected_P) continue;
        double lo = e.config->pivot_radius, hi = lo;
        bool near = true;
        for (auto& l : e.config->lines) {
            lo = std::min(lo, l.r);
            hi = std::max(hi, l.r);
            near = near && std::abs(l.r - e.config->pivot_radius) <= 0.1 * e.config->pivot_radius;
        }
        bool ee = !ee_pairs(*e.expected_P).empty();
        if (hi - lo <= 1e-6) {
            rep.equal.push_back(e.name);
            if (ee) rep.violations.push_back(e.name);
        } else if (near) {
            rep.near_equal.push_back(e.name);
            if (ee) rep.near_with_ee.push_back(e.name);
        }
    }
    return rep;
}

}  // namespace tangle
