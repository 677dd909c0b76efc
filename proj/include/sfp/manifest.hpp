#ifndef SFP_MANIFEST_HPP
#define SFP_MANIFEST_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sfp/error.hpp"

namespace sfp {

/// 1-based line and column. Positions are diagnostics only and never part of
/// the object graph, so they always compare equal.
struct SourcePos {
    int line = 1;
    int col = 1;
    bool operator==(const SourcePos&) const { return true; }
    std::string to_string() const { return std::to_string(line) + ":" + std::to_string(col); }
};

class ManifestError : public InputError {
  public:
    ManifestError(SourcePos pos, const std::string& msg) : InputError(pos.to_string() + ": " + msg), pos_(pos) {}
    SourcePos pos() const { return pos_; }

  private:
    SourcePos pos_;
};

/// Raw text of a polynomial or task value, with where it started.
struct Located {
    std::string text;
    SourcePos pos;
    bool operator==(const Located&) const = default;
};

struct VarDecl {
    std::string name;
    int weight = 1;
    SourcePos pos;
    bool operator==(const VarDecl&) const = default;
};

struct AlgebraDecl {
    std::string name;
    std::vector<VarDecl> vars;
    std::vector<Located> rels;
    std::optional<int> trunc;
    SourcePos pos;
    bool operator==(const AlgebraDecl&) const = default;
};

struct ActionEntry {
    std::string r_var;
    std::string s_var;
    Located value;
    bool operator==(const ActionEntry&) const = default;
};

struct ActionDecl {
    std::string name;
    std::string R;
    std::string S;
    std::vector<ActionEntry> entries;
    SourcePos pos;
    bool operator==(const ActionDecl&) const = default;
};

struct TaskParam {
    std::string key;
    Located value;
    bool operator==(const TaskParam&) const = default;
};

struct TaskDecl {
    std::string procedure;
    std::vector<TaskParam> params;
    SourcePos pos;
    bool operator==(const TaskDecl&) const = default;

    const TaskParam* find(std::string_view key) const {
        for (const auto& p : params)
            if (p.key == key) return &p;
        return nullptr;
    }
};

struct Manifest {
    std::optional<std::uint32_t> prime;  // GF(p); empty for QQ
    std::vector<AlgebraDecl> algebras;
    std::vector<ActionDecl> actions;
    std::vector<TaskDecl> tasks;
    bool operator==(const Manifest&) const = default;

    std::string field_name() const { return prime ? "GF(" + std::to_string(*prime) + ")" : "QQ"; }
    const AlgebraDecl* algebra(std::string_view name) const {
        for (const auto& a : algebras)
            if (a.name == name) return &a;
        return nullptr;
    }
    const ActionDecl* action(std::string_view name) const {
        for (const auto& a : actions)
            if (a.name == name) return &a;
        return nullptr;
    }
};

/// Task keys naming an algebra, an action, or carrying an integer.
struct ProcedureSpec {
    std::vector<std::string> keys;
    std::vector<std::string> required;
};

inline const std::map<std::string, ProcedureSpec>& procedures() {
    static const std::map<std::string, ProcedureSpec> table{
        {"betti", {{"algebra", "module", "hdeg", "tdeg"}, {}}},
        {"homology", {{"algebra", "cycle", "length", "tdeg"}, {"cycle"}}},
        {"minimal_generators", {{"algebra", "ideal"}, {"ideal"}}},
        {"flatness", {{"algebra", "source", "images", "hdeg", "tdeg"}, {"source", "images"}}},
        {"check_action", {{"action", "tdeg"}, {"action"}}},
        {"semi_fiber", {{"action", "tdeg"}, {"action"}}},
        {"fiber_product", {{"left", "right", "tdeg"}, {"left", "right"}}},
        {"tensor", {{"left", "right", "tdeg"}, {"left", "right"}}},
        {"trivial_extension", {{"algebra", "module", "shift", "tdeg"}, {}}},
        {"psi", {{"algebra", "source", "images", "tdeg"}, {"source", "images"}}},
        {"universal", {{"action", "target", "f", "g"}, {"action", "target", "f", "g"}}},
        {"decomposition", {{"algebra", "u", "ideal", "tdeg"}, {"u", "ideal"}}},
        {"check_lift", {{"algebra", "ideal", "cycle", "hdeg", "tdeg"}, {"ideal", "cycle"}}},
        {"min_gen_test", {{"algebra", "ideal"}, {"ideal"}}},
        {"poincare_test", {{"algebra", "ideal", "module", "hdeg", "tdeg"}, {"ideal"}}},
        {"ext2", {{"algebra", "ideal"}, {}}},
        {"socle", {{"algebra", "ideal", "tdeg", "budget"}, {"ideal"}}},
        {"retraction", {{"algebra", "sub", "source", "images", "bound", "budget"}, {}}},
        {"section", {{"algebra", "ideal", "bound", "budget"}, {"ideal"}}},
        {"regular_sequence", {{"algebra", "elems", "tdeg"}, {"elems"}}},
        {"annihilator_check", {{"algebra", "element", "hdeg"}, {"element"}}},
        {"mT_generates", {{"algebra", "source", "images"}, {"source", "images"}}},
        {"harness", {{"algebra", "sub", "source", "images", "bound", "hdeg", "budget"}, {}}},
    };
    return table;
}

inline bool is_integer_key(std::string_view key) {
    return key == "hdeg" || key == "tdeg" || key == "bound" || key == "length" || key == "shift" || key == "budget";
}

/// Splits a value at top-level commas, trimming each item.
inline std::vector<Located> split_list(const Located& v) {
    std::vector<Located> out;
    int depth = 0;
    std::size_t start = 0;
    auto push = [&](std::size_t a, std::size_t b) {
        SourcePos p = v.pos;
        while (a < b && std::isspace(static_cast<unsigned char>(v.text[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(v.text[b - 1]))) --b;
        p.col += static_cast<int>(a);
        out.push_back({v.text.substr(a, b - a), p});
    };
    for (std::size_t i = 0; i < v.text.size(); ++i) {
        char c = v.text[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            push(start, i);
            start = i + 1;
        }
    }
    push(start, v.text.size());
    if (out.size() == 1 && out[0].text.empty()) out.clear();
    return out;
}

inline int parse_int_value(const Located& v) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), x);
    if (ec != std::errc() || ptr != v.text.data() + v.text.size() || x < 0)
        throw ManifestError(v.pos, "expected a non-negative integer, got '" + v.text + "'");
    return x;
}

namespace detail {

class ManifestParser {
  public:
    explicit ManifestParser(std::string_view text) : s_(text) {}

    Manifest parse() {
        Manifest m;
        skip();
        expect_word("field");
        std::string f = identifier("field name");
        if (f == "QQ") {
        } else if (f == "GF") {
            expect('(');
            SourcePos at = pos();
            int p = integer();
            if (!is_prime(p)) throw ManifestError(at, "GF(p) needs a prime p < 2^31, got " + std::to_string(p));
            m.prime = static_cast<std::uint32_t>(p);
            expect(')');
        } else {
            throw ManifestError(last_, "unknown field '" + f + "', expected GF(p) or QQ");
        }
        expect(';');
        int stage = 0;
        while (!at_end()) {
            SourcePos at = pos();
            std::string kw = identifier("'algebra', 'action' or 'task'");
            int want = kw == "algebra" ? 0 : kw == "action" ? 1 : kw == "task" ? 2 : -1;
            if (want < 0) throw ManifestError(at, "expected 'algebra', 'action' or 'task', got '" + kw + "'");
            if (want < stage) throw ManifestError(at, "'" + kw + "' block after a later kind of block");
            stage = want;
            if (want == 0) m.algebras.push_back(algebra(m, at));
            if (want == 1) m.actions.push_back(action(m, at));
            if (want == 2) m.tasks.push_back(task(m, at));
        }
        if (m.algebras.empty()) throw ManifestError(pos(), "manifest declares no algebra");
        return m;
    }

  private:
    std::string_view s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    SourcePos last_;

    static bool is_prime(int p) {
        if (p < 2) return false;
        for (int q = 2; static_cast<long long>(q) * q <= p; ++q)
            if (p % q == 0) return false;
        return true;
    }

    SourcePos pos() const { return {line_, col_}; }
    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[i_]; }
    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    void skip() {
        while (!at_end()) {
            if (peek() == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else {
                break;
            }
        }
    }
    [[noreturn]] void fail_expected(const std::string& what) {
        std::string got = at_end() ? "end of input" : "'" + std::string(1, peek()) + "'";
        throw ManifestError(pos(), "expected " + what + ", got " + got);
    }
    void expect(char c) {
        if (peek() != c) fail_expected("'" + std::string(1, c) + "'");
        advance();
        skip();
    }
    bool accept(char c) {
        if (peek() != c) return false;
        advance();
        skip();
        return true;
    }
    std::string identifier(const std::string& what) {
        last_ = pos();
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail_expected(what);
        std::string out;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            out += peek();
            advance();
        }
        skip();
        return out;
    }
    void expect_word(const std::string& w) {
        SourcePos at = pos();
        if (std::string got = identifier("'" + w + "'"); got != w)
            throw ManifestError(at, "expected '" + w + "', got '" + got + "'");
    }
    int integer() {
        SourcePos at = pos();
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += peek();
            advance();
        }
        if (digits.empty()) fail_expected("an integer");
        if (digits.size() > 9) throw ManifestError(at, "integer too large");
        skip();
        return std::stoi(digits);
    }
    /// Text up to a top-level terminator, with comments removed.
    Located raw(std::string_view stops, bool allow_empty = false) {
        Located out{{}, pos()};
        int depth = 0;
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
                continue;
            }
            if (depth == 0 && stops.find(c) != std::string_view::npos) break;
            if (c == '{' || c == '}') break;
            if (c == '(') ++depth;
            if (c == ')') --depth;
            out.text += c == '\n' || c == '\t' || c == '\r' ? ' ' : c;
            advance();
        }
        while (!out.text.empty() && std::isspace(static_cast<unsigned char>(out.text.back()))) out.text.pop_back();
        if (out.text.empty() && !allow_empty) fail_expected("a value");
        return out;
    }

    AlgebraDecl algebra(const Manifest& m, SourcePos at) {
        AlgebraDecl a;
        a.pos = at;
        SourcePos npos = pos();
        a.name = identifier("an algebra name");
        if (m.algebra(a.name)) throw ManifestError(npos, "algebra '" + a.name + "' declared twice");
        expect('{');
        bool seen_vars = false, seen_rels = false;
        while (!accept('}')) {
            SourcePos kat = pos();
            std::string key = identifier("'vars', 'rels', 'trunc' or '}'");
            if (key == "vars") {
                if (seen_vars) throw ManifestError(kat, "'vars' given twice");
                seen_vars = true;
                if (peek() != ';') {
                    do {
                        VarDecl v;
                        v.pos = pos();
                        v.name = identifier("a variable name");
                        for (const auto& o : a.vars)
                            if (o.name == v.name) throw ManifestError(v.pos, "variable '" + v.name + "' declared twice");
                        expect('(');
                        SourcePos wat = pos();
                        bool negative = accept('-');
                        v.weight = integer();
                        if (negative || v.weight < 1)
                            throw ManifestError(wat, "bad weight for '" + v.name + "': weights must be positive");
                        expect(')');
                        a.vars.push_back(v);
                    } while (accept(','));
                }
                expect(';');
            } else if (key == "rels") {
                if (seen_rels) throw ManifestError(kat, "'rels' given twice");
                seen_rels = true;
                if (peek() != ';') {
                    do {
                        a.rels.push_back(raw(",;"));
                    } while (accept(','));
                }
                expect(';');
            } else if (key == "trunc") {
                if (a.trunc) throw ManifestError(kat, "'trunc' given twice");
                SourcePos tat = pos();
                a.trunc = integer();
                if (*a.trunc < 1) throw ManifestError(tat, "truncation degree must be at least 1");
                expect(';');
            } else {
                throw ManifestError(kat, "unknown key '" + key + "' in algebra block");
            }
        }
        if (!seen_vars) throw ManifestError(at, "algebra '" + a.name + "' has no 'vars'");
        return a;
    }

    ActionDecl action(const Manifest& m, SourcePos at) {
        ActionDecl t;
        t.pos = at;
        SourcePos npos = pos();
        t.name = identifier("an action name");
        if (m.action(t.name)) throw ManifestError(npos, "action '" + t.name + "' declared twice");
        expect('{');
        SourcePos rpos = pos();
        t.R = identifier("the acting algebra");
        const AlgebraDecl* R = m.algebra(t.R);
        if (!R) throw ManifestError(rpos, "unknown algebra '" + t.R + "'");
        expect_word("on");
        SourcePos spos = pos();
        t.S = identifier("the algebra acted on");
        const AlgebraDecl* S = m.algebra(t.S);
        if (!S) throw ManifestError(spos, "unknown algebra '" + t.S + "'");
        expect(';');
        auto has_var = [](const AlgebraDecl* A, const std::string& v) {
            return std::any_of(A->vars.begin(), A->vars.end(), [&](const VarDecl& d) { return d.name == v; });
        };
        while (!accept('}')) {
            ActionEntry e;
            SourcePos xpos = pos();
            e.r_var = identifier("an entry 'x*y = poly' or '}'");
            if (!has_var(R, e.r_var)) throw ManifestError(xpos, "'" + e.r_var + "' is not a variable of " + t.R);
            expect('*');
            SourcePos ypos = pos();
            e.s_var = identifier("a variable of " + t.S);
            if (!has_var(S, e.s_var)) throw ManifestError(ypos, "'" + e.s_var + "' is not a variable of " + t.S);
            for (const auto& o : t.entries)
                if (o.r_var == e.r_var && o.s_var == e.s_var)
                    throw ManifestError(xpos, "entry " + e.r_var + "*" + e.s_var + " given twice");
            expect('=');
            e.value = raw(";");
            expect(';');
            t.entries.push_back(e);
        }
        return t;
    }

    TaskDecl task(const Manifest& m, SourcePos at) {
        TaskDecl t;
        t.pos = at;
        SourcePos ppos = pos();
        t.procedure = identifier("a procedure name");
        auto it = procedures().find(t.procedure);
        if (it == procedures().end()) throw ManifestError(ppos, "unknown procedure '" + t.procedure + "'");
        const auto& spec = it->second;
        expect('{');
        while (!accept('}')) {
            TaskParam p;
            SourcePos kpos = pos();
            p.key = identifier("a key or '}'");
            if (std::find(spec.keys.begin(), spec.keys.end(), p.key) == spec.keys.end())
                throw ManifestError(kpos, "unknown key '" + p.key + "' for task " + t.procedure);
            if (t.find(p.key)) throw ManifestError(kpos, "key '" + p.key + "' given twice");
            expect('=');
            p.value = raw(";", true);
            expect(';');
            if (is_integer_key(p.key)) parse_int_value(p.value);
            if (p.key == "algebra" || p.key == "left" || p.key == "right" || p.key == "source" || p.key == "target")
                if (!m.algebra(p.value.text)) throw ManifestError(p.value.pos, "unknown algebra '" + p.value.text + "'");
            if (p.key == "action" && !m.action(p.value.text))
                throw ManifestError(p.value.pos, "unknown action '" + p.value.text + "'");
            t.params.push_back(p);
        }
        for (const auto& k : spec.required)
            if (!t.find(k)) throw ManifestError(at, "task " + t.procedure + " needs key '" + k + "'");
        return t;
    }
};

}  // namespace detail

inline Manifest parse_manifest(std::string_view text) { return detail::ManifestParser(text).parse(); }

/// Canonical text form; parse_manifest(pretty_print(m)) == m.
inline std::string pretty_print(const Manifest& m) {
    std::string out = "field " + m.field_name() + ";\n";
    for (const auto& a : m.algebras) {
        out += "\nalgebra " + a.name + " {\n  vars";
        for (std::size_t i = 0; i < a.vars.size(); ++i)
            out += (i ? ", " : " ") + a.vars[i].name + "(" + std::to_string(a.vars[i].weight) + ")";
        out += ";\n";
        if (!a.rels.empty()) {
            out += "  rels";
            for (std::size_t i = 0; i < a.rels.size(); ++i) out += (i ? ", " : " ") + a.rels[i].text;
            out += ";\n";
        }
        if (a.trunc) out += "  trunc " + std::to_string(*a.trunc) + ";\n";
        out += "}\n";
    }
    for (const auto& t : m.actions) {
        out += "\naction " + t.name + " {\n  " + t.R + " on " + t.S + ";\n";
        for (const auto& e : t.entries) out += "  " + e.r_var + "*" + e.s_var + " = " + e.value.text + ";\n";
        out += "}\n";
    }
    for (const auto& t : m.tasks) {
        out += "\ntask " + t.procedure + " {";
        for (const auto& p : t.params) out += " " + p.key + " =" + (p.value.text.empty() ? "" : " ") + p.value.text + ";";
        out += " }\n";
    }
    return out;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace sfp

#endif  // SFP_MANIFEST_HPP
