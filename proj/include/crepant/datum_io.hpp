#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/lattice.hpp"
#include "crepant/special_data.hpp"

namespace crepant {

enum class InputForm { sets, forest };

/// Result of reading a datum file. For the forest form the parsed shapes and the
/// parameter bindings are kept so that the file can be written back unchanged.
struct ParsedInput {
    InputForm form = InputForm::sets;
    SpecialDatum datum;
    std::vector<ForestShape> shapes;
    std::map<std::string, std::int64_t> bindings;
};

namespace io_detail {

struct Token {
    enum class Kind { word, integer, symbol, newline, end };
    Kind kind = Kind::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto push = [&](Token::Kind k, std::string text, std::size_t c) { out.push_back({k, std::move(text), line, c}); };
    while (i < src.size()) {
        const char ch = src[i];
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') ++i, ++col;
            continue;
        }
        if (ch == '\n') {
            push(Token::Kind::newline, "\\n", col);
            ++i, ++line, col = 1;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i, ++col;
            continue;
        }
        const std::size_t start = col;
        if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::string s(1, ch);
            ++i, ++col;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) s += src[i++], ++col;
            push(Token::Kind::integer, s, start);
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string s;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) s += src[i++], ++col;
            push(Token::Kind::word, s, start);
        } else if (std::string("{},:=()*/+;").find(ch) != std::string::npos) {
            push(Token::Kind::symbol, std::string(1, ch), start);
            ++i, ++col;
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
    }
    out.push_back({Token::Kind::end, "end of input", line, col});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::end; }

    [[noreturn]] void fail(const Token& t, const std::string& what) const { throw ParseError(t.line, t.column, what); }

    void skip_newlines() {
        while (peek().kind == Token::Kind::newline) ++pos_;
    }
    bool is_symbol(const char* s) const { return peek().kind == Token::Kind::symbol && peek().text == s; }
    bool is_word(const char* s) const { return peek().kind == Token::Kind::word && peek().text == s; }

    void expect_symbol(const char* s) {
        if (!is_symbol(s)) fail(peek(), std::string("expected '") + s + "', found '" + peek().text + "'");
        ++pos_;
    }
    void expect_word(const char* s) {
        if (!is_word(s)) fail(peek(), std::string("expected '") + s + "', found '" + peek().text + "'");
        ++pos_;
    }
    void expect_line_end() {
        if (peek().kind != Token::Kind::newline && peek().kind != Token::Kind::end)
            fail(peek(), "expected end of line, found '" + peek().text + "'");
        skip_newlines();
    }
    std::int64_t integer(const char* what) {
        const Token t = peek();
        if (t.kind != Token::Kind::integer) fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
        ++pos_;
        try {
            return std::stoll(t.text);
        } catch (const std::out_of_range&) {
            fail(t, std::string(what) + " does not fit in 64 bits");
        }
    }
    std::string word(const char* what) {
        const Token t = peek();
        if (t.kind != Token::Kind::word) fail(t, std::string("expected ") + what + ", found '" + t.text + "'");
        ++pos_;
        return t.text;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

struct PendingShape {
    std::string name;  // empty when the parameter was a literal
    std::int64_t value = 0;
    Token where;
    std::vector<PendingShape> children;
};

inline PendingShape parse_tree(Cursor& c) {
    PendingShape s;
    s.where = c.peek();
    if (c.is_symbol("*")) {
        c.next();
        return s;
    }
    if (c.peek().kind == Token::Kind::integer)
        s.value = c.integer("free parameter");
    else if (c.peek().kind == Token::Kind::word)
        s.name = c.word("free parameter");
    else
        c.fail(c.peek(), "expected '*' or a free parameter, found '" + c.peek().text + "'");
    c.expect_symbol("(");
    while (!c.is_symbol(")")) {
        if (c.at_end() || c.peek().kind == Token::Kind::newline) c.fail(c.peek(), "unterminated tree, expected ')'");
        s.children.push_back(parse_tree(c));
    }
    if (s.children.size() < 2) c.fail(c.peek(), "an internal vertex needs at least two children");
    c.expect_symbol(")");
    return s;
}

inline void parse_sets_body(Cursor& c, ParsedInput& out) {
    c.expect_word("dim");
    const Token dt = c.peek();
    const auto d = c.integer("dimension");
    if (d < 2) c.fail(dt, "dimension must be at least 2");
    if (d > 64) c.fail(dt, "dimension must be at most 64");
    c.expect_line_end();
    out.datum.d = static_cast<int>(d);
    while (!c.at_end()) {
        const Token start = c.peek();
        c.expect_symbol("{");
        IndexSet s;
        for (;;) {
            const Token it = c.peek();
            const auto v = c.integer("index");
            if (v < 1 || v > d) c.fail(it, "index " + std::to_string(v) + " outside 1.." + std::to_string(d));
            s.push_back(static_cast<int>(v));
            if (c.is_symbol("}")) break;
            c.expect_symbol(",");
        }
        c.expect_symbol("}");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) c.fail(start, "repeated index in " + format_set(s));
        if (out.datum.weight_of(s)) c.fail(start, "set " + format_set(s) + " listed twice");
        c.expect_symbol(":");
        const Token wt = c.peek();
        const auto w = c.integer("weight");
        if (w < 1) c.fail(wt, "weight must be positive");
        out.datum.add(std::move(s), w);
        c.expect_line_end();
    }
    if (out.datum.sets.empty()) c.fail(c.peek(), "no sets given");
}

inline void parse_forest_body(Cursor& c, ParsedInput& out) {
    std::vector<PendingShape> pending;
    while (c.is_word("tree")) {
        c.next();
        pending.push_back(parse_tree(c));
        c.expect_line_end();
    }
    if (pending.empty()) c.fail(c.peek(), "expected at least one 'tree' line");
    while (c.is_word("param")) {
        c.next();
        const Token nt = c.peek();
        const auto name = c.word("parameter name");
        c.expect_symbol("=");
        const Token vt = c.peek();
        const auto v = c.integer("parameter value");
        if (v < 2) c.fail(vt, "free parameter must be at least 2");
        if (!out.bindings.emplace(name, v).second) c.fail(nt, "parameter '" + name + "' bound twice");
        c.expect_line_end();
    }
    if (!c.at_end()) c.fail(c.peek(), "expected 'param' or end of input, found '" + c.peek().text + "'");

    std::map<std::string, bool> used;
    std::function<ForestShape(const PendingShape&)> resolve = [&](const PendingShape& p) {
        ForestShape s;
        if (p.children.empty()) return s;
        if (!p.name.empty()) {
            auto it = out.bindings.find(p.name);
            if (it == out.bindings.end()) c.fail(p.where, "unbound free parameter '" + p.name + "'");
            s.parameter = it->second;
            used[p.name] = true;
        } else {
            if (p.value < 2) c.fail(p.where, "free parameter must be at least 2");
            s.parameter = p.value;
        }
        for (const auto& ch : p.children) s.children.push_back(resolve(ch));
        return s;
    };
    for (const auto& p : pending) out.shapes.push_back(resolve(p));
    for (const auto& [name, v] : out.bindings)
        if (!used.count(name)) c.fail(c.peek(), "parameter '" + name + "' is never used");
    int leaves = 0;
    for (const auto& s : out.shapes) leaves += s.leaves();
    if (leaves < 2) c.fail(pending.front().where, "dimension must be at least 2");
    try {
        out.datum = from_forest(forest_from_shapes(out.shapes));
    } catch (const Error& e) {
        c.fail(pending.front().where, e.what());
    }
}

}  // namespace io_detail

/// Reads either input form. Errors carry 1-based line and column numbers.
inline ParsedInput parse_datum(const std::string& text) {
    io_detail::Cursor c(io_detail::tokenize(text));
    c.skip_newlines();
    if (c.at_end()) c.fail(c.peek(), "empty input");
    c.expect_word("format");
    const io_detail::Token ft = c.peek();
    const auto form = c.word("'sets' or 'forest'");
    c.expect_line_end();
    ParsedInput out;
    if (form == "sets") {
        out.form = InputForm::sets;
        io_detail::parse_sets_body(c, out);
    } else if (form == "forest") {
        out.form = InputForm::forest;
        io_detail::parse_forest_body(c, out);
    } else {
        c.fail(ft, "unknown format '" + form + "', expected 'sets' or 'forest'");
    }
    return out;
}

inline std::string write_sets(const SpecialDatum& datum) {
    std::ostringstream os;
    os << "format sets\ndim " << datum.d << "\n";
    for (const auto& [s, w] : datum.entries()) os << format_set(s) << " : " << w << "\n";
    return os.str();
}

/// Name k<first>_<last> for the parameter on the edges below a vertex.
inline std::string parameter_name(const ForestNode& n) {
    return "k" + std::to_string(n.first) + "_" + std::to_string(n.last);
}

/// One-line plane-tree rendering, parameters shown by name or by value.
inline std::string render_tree(const WatanabeForest& f, int v, bool named) {
    const auto& n = f.node(v);
    if (n.leaf()) return "*";
    std::string out = named ? parameter_name(n) : std::to_string(n.parameter);
    out += "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += " ";
        out += render_tree(f, n.children[i], named);
    }
    return out + ")";
}

/// Forest form with named parameters. Requires a datum with contiguous sets.
inline std::string write_forest(const SpecialDatum& datum) {
    const auto f = to_forest(datum);
    std::ostringstream os;
    os << "format forest\n";
    for (int r : f.roots) os << "tree " << render_tree(f, r, true) << "\n";
    for (const auto& n : f.nodes)
        if (!n.leaf()) os << "param " << parameter_name(n) << " = " << n.parameter << "\n";
    return os.str();
}

inline std::string write_datum(const ParsedInput& in) {
    return in.form == InputForm::sets ? write_sets(in.datum) : write_forest(in.datum);
}

/// Inline lattice description such as "1/7(3,3,1)" or "1/2(1,1,0)+1/2(0,1,1)".
/// Returns Z^d extended by the listed generators.
inline LatticeBasis parse_lattice(const std::string& text) {
    io_detail::Cursor c(io_detail::tokenize(text));
    std::vector<RationalVector> gens;
    std::size_t d = 0;
    for (;;) {
        const io_detail::Token gt = c.peek();
        const auto one = c.integer("'1'");
        if (one != 1) c.fail(gt, "generator must start with '1/'");
        c.expect_symbol("/");
        const io_detail::Token rt = c.peek();
        const auto r = c.integer("order");
        if (r < 1) c.fail(rt, "order must be positive");
        c.expect_symbol("(");
        RationalVector v;
        for (;;) {
            v.push_back(make_rational(c.integer("exponent"), r));
            if (c.is_symbol(")")) break;
            c.expect_symbol(",");
        }
        c.expect_symbol(")");
        if (d == 0) d = v.size();
        if (v.size() != d) c.fail(gt, "generator length " + std::to_string(v.size()) + " differs from " + std::to_string(d));
        gens.push_back(std::move(v));
        if (c.is_symbol("+")) {
            c.next();
            continue;
        }
        break;
    }
    if (!c.at_end()) c.fail(c.peek(), "unexpected '" + c.peek().text + "'");
    if (d < 2) c.fail(c.peek(), "dimension must be at least 2");
    return LatticeBasis::from_generators(gens, "N");
}

}  // namespace crepant
