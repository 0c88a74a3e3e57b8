// SPDX-License-Identifier: Apache-2.0
#include "cutseq/expr.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>

namespace cutseq {

namespace {

enum class Tok { Number, Ident, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            const std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            }
            out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
        } else if (std::isalpha(c) || c == '_') {
            const std::size_t start = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
        } else if (std::string_view("(),+-*/^[]@").find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, static_cast<char>(c)), i});
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", i,
                             "number, identifier, operator or bracket");
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

struct FieldSpec {
    std::vector<Integer> poly;  // constant term first
    std::string var;
    RationalInterval interval;
    std::size_t pos = 0;

    FieldPtr create() const { return NumberField::create(poly, interval, var); }
};

struct Node {
    enum Kind { Num, Var, Sqrt, Root, Neg, Add, Sub, Mul, Div, Pow } kind;
    std::size_t pos = 0;
    Rational value;        // Num
    std::string name;      // Var
    Integer radicand;      // Sqrt
    long exponent = 0;     // Pow
    std::shared_ptr<FieldSpec> root;  // Root
    std::unique_ptr<Node> a, b;
};
using NodePtr = std::unique_ptr<Node>;

NodePtr make_node(Node::Kind k, std::size_t pos) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->pos = pos;
    return n;
}

// Polynomial with rational coefficients, constant term first.
using Poly = std::vector<Rational>;

Poly poly_add(const Poly& x, const Poly& y, int sign) {
    Poly r(std::max(x.size(), y.size()), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] += sign * y[i];
    return r;
}

Poly poly_mul(const Poly& x, const Poly& y) {
    Poly r(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    return r;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    struct Tuple {
        std::array<NodePtr, 3> items;
        std::size_t pos = 0;
    };

    Tuple tuple() {
        Tuple t;
        t.pos = peek().pos;
        expect("(", "'('");
        for (int i = 0; i < 3; ++i) {
            t.items[static_cast<std::size_t>(i)] = expr();
            if (i < 2) expect(",", "',' or an operator");
        }
        expect(")", "')' or an operator");
        return t;
    }

    std::optional<FieldSpec> field_clause() {
        if (peek().kind == Tok::End) return std::nullopt;
        if (!is_ident("in")) throw error("unexpected token", "'in field' or end of input");
        next();
        if (!is_ident("field")) throw error("unexpected token", "'field'");
        next();
        return field_spec("@");
    }

    void end() {
        if (peek().kind != Tok::End) throw error("unexpected trailing input", "end of input");
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }
    bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool is_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }

    ParseError error(const std::string& what, const std::string& expected) const {
        const Token& t = peek();
        const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        return ParseError(what + ": found " + found, t.pos, expected);
    }

    void expect(const char* sym, const std::string& expected) {
        if (!is_sym(sym)) throw error("unexpected token", expected);
        next();
    }

    // poly SEP [lo, hi]; SEP is "@" after 'in field' and "," inside root(...).
    FieldSpec field_spec(const char* sep) {
        FieldSpec spec;
        spec.pos = peek().pos;
        const NodePtr p = expr();
        const Poly coeffs = to_poly(*p, spec.var);
        std::size_t deg = coeffs.size();
        while (deg > 0 && sgn(coeffs[deg - 1]) == 0) --deg;
        if (deg < 2) throw ParseError("field polynomial must have degree at least 1", spec.pos, "polynomial");
        for (std::size_t k = 0; k < deg; ++k) {
            if (coeffs[k].get_den() != 1)
                throw ParseError("field polynomial must have integer coefficients", spec.pos, "polynomial");
            spec.poly.push_back(coeffs[k].get_num());
        }
        if (spec.poly.back() != 1) throw ParseError("field polynomial must be monic", spec.pos, "monic polynomial");
        expect(sep, std::string("'") + sep + "'");
        expect("[", "'['");
        spec.interval.lo = signed_rational();
        expect(",", "','");
        spec.interval.hi = signed_rational();
        expect("]", "']'");
        return spec;
    }

    Rational signed_rational() {
        bool neg = false;
        if (is_sym("-")) {
            neg = true;
            next();
        }
        if (peek().kind != Tok::Number) throw error("expected a number", "rational literal");
        Rational v = parse_rational(next().text);
        if (is_sym("/")) {
            next();
            if (peek().kind != Tok::Number) throw error("expected a denominator", "number");
            const std::size_t at = peek().pos;
            const Rational d = parse_rational(next().text);
            if (sgn(d) == 0) throw ParseError("zero denominator", at, "nonzero number");
            v /= d;
        }
        return neg ? Rational(-v) : v;
    }

    Poly to_poly(const Node& n, std::string& var) {
        switch (n.kind) {
            case Node::Num: return {n.value};
            case Node::Var:
                if (!var.empty() && var != n.name)
                    throw ParseError("polynomial uses two variables", n.pos, "'" + var + "'");
                var = n.name;
                return {Rational(0), Rational(1)};
            case Node::Neg: return poly_add({Rational(0)}, to_poly(*n.a, var), -1);
            case Node::Add: return poly_add(to_poly(*n.a, var), to_poly(*n.b, var), 1);
            case Node::Sub: return poly_add(to_poly(*n.a, var), to_poly(*n.b, var), -1);
            case Node::Mul: return poly_mul(to_poly(*n.a, var), to_poly(*n.b, var));
            case Node::Div: {
                const Poly d = to_poly(*n.b, var);
                bool constant = sgn(d[0]) != 0;
                for (std::size_t k = 1; k < d.size(); ++k) constant &= sgn(d[k]) == 0;
                if (!constant) throw ParseError("polynomial division by a non-constant", n.b->pos, "nonzero number");
                Poly r = to_poly(*n.a, var);
                for (auto& c : r) c /= d[0];
                return r;
            }
            case Node::Pow: {
                if (n.exponent < 0) throw ParseError("negative power in polynomial", n.pos, "nonnegative exponent");
                const Poly base = to_poly(*n.a, var);
                Poly r{Rational(1)};
                for (long k = 0; k < n.exponent; ++k) r = poly_mul(r, base);
                return r;
            }
            default: throw ParseError("sqrt and root are not allowed in a field polynomial", n.pos, "polynomial");
        }
    }

public:
    NodePtr expr() {
        NodePtr left = term();
        while (is_sym("+") || is_sym("-")) {
            const Token op = next();
            NodePtr n = make_node(op.text == "+" ? Node::Add : Node::Sub, op.pos);
            n->a = std::move(left);
            n->b = term();
            left = std::move(n);
        }
        return left;
    }

private:
    NodePtr term() {
        NodePtr left = unary();
        while (is_sym("*") || is_sym("/")) {
            const Token op = next();
            NodePtr n = make_node(op.text == "*" ? Node::Mul : Node::Div, op.pos);
            n->a = std::move(left);
            n->b = unary();
            left = std::move(n);
        }
        return left;
    }

    NodePtr unary() {
        if (is_sym("-") || is_sym("+")) {
            const Token op = next();
            NodePtr inner = unary();
            if (op.text == "+") return inner;
            NodePtr n = make_node(Node::Neg, op.pos);
            n->a = std::move(inner);
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (!is_sym("^")) return base;
        const Token op = next();
        bool neg = false;
        if (is_sym("-")) {
            neg = true;
            next();
        }
        if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
            throw error("exponent must be an integer", "integer exponent");
        const Token e = next();
        if (e.text.size() > 3) throw ParseError("exponent too large", e.pos, "exponent below 1000");
        NodePtr n = make_node(Node::Pow, op.pos);
        n->exponent = std::stol(e.text) * (neg ? -1 : 1);
        n->a = std::move(base);
        return n;
    }

    NodePtr atom() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            NodePtr n = make_node(Node::Num, t.pos);
            n->value = parse_rational(next().text);
            return n;
        }
        if (is_sym("(")) {
            next();
            NodePtr inner = expr();
            expect(")", "')' or an operator");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            const Token id = next();
            if (id.text == "sqrt") {
                expect("(", "'(' after sqrt");
                if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
                    throw error("sqrt takes a positive integer", "positive integer");
                const Token arg = next();
                NodePtr n = make_node(Node::Sqrt, id.pos);
                n->radicand = Integer(arg.text);
                if (n->radicand <= 0) throw ParseError("sqrt takes a positive integer", arg.pos, "positive integer");
                expect(")", "')'");
                return n;
            }
            if (id.text == "root") {
                expect("(", "'(' after root");
                NodePtr n = make_node(Node::Root, id.pos);
                n->root = std::make_shared<FieldSpec>(field_spec(","));
                expect(")", "')'");
                return n;
            }
            NodePtr n = make_node(Node::Var, id.pos);
            n->name = id.text;
            return n;
        }
        throw error("unexpected token", "number, identifier, sqrt(n), root(p, [lo, hi]) or '('");
    }
};

// n = k^2 m with m squarefree.
std::pair<Integer, Integer> squarefree_split(Integer n) {
    Integer k = 1, m = 1;
    for (Integer p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            k *= p;
        }
        if (n % p == 0) {
            n /= p;
            m *= p;
        }
    }
    return {k, m * n};
}

std::optional<AlgebraicNumber> sqrt_in(const FieldPtr& f, const Integer& m) {
    if (same_field(f, NumberField::sqrt2_sqrt3())) {
        const AlgebraicNumber s2(f, {Rational(0), Rational(-9, 2), Rational(0), Rational(1, 2)});
        const AlgebraicNumber s3(f, {Rational(0), Rational(11, 2), Rational(0), Rational(-1, 2)});
        if (m == 2) return s2;
        if (m == 3) return s3;
        if (m == 6) return s2 * s3;
        return std::nullopt;
    }
    const auto& p = f->min_poly();
    if (p.size() == 3 && p[1] == 0 && p[0] == -m && sgn(f->isolating_interval().lo) >= 0)
        return AlgebraicNumber::generator(f);
    return std::nullopt;
}

struct Inventory {
    std::map<Integer, std::size_t> radicals;  // squarefree part -> first position
    std::vector<std::pair<std::shared_ptr<FieldSpec>, std::size_t>> roots;
    std::vector<const Node*> names;
};

void collect(const Node& n, Inventory& inv) {
    switch (n.kind) {
        case Node::Sqrt: {
            const Integer m = squarefree_split(n.radicand).second;
            if (m != 1) inv.radicals.emplace(m, n.pos);
            break;
        }
        case Node::Root: inv.roots.emplace_back(n.root, n.pos); break;
        case Node::Var:
            if (n.name == "sqrt2") inv.radicals.emplace(Integer(2), n.pos);
            else if (n.name == "sqrt3") inv.radicals.emplace(Integer(3), n.pos);
            else inv.names.push_back(&n);
            break;
        default: break;
    }
    if (n.a) collect(*n.a, inv);
    if (n.b) collect(*n.b, inv);
}

FieldPtr infer_field(const Inventory& inv) {
    if (!inv.roots.empty()) {
        const FieldPtr f = inv.roots.front().first->create();
        for (const auto& [spec, pos] : inv.roots) {
            if (!same_field(f, spec->create()))
                throw ParseError("two different root(...) fields; declare one field with 'in field'", pos,
                                 "the same root(...) as before");
        }
        return f;
    }
    if (inv.radicals.empty()) return NumberField::rationals();
    std::set<Integer> parts;
    for (const auto& [m, pos] : inv.radicals) parts.insert(m);
    const bool canonical_only = std::all_of(parts.begin(), parts.end(), [](const Integer& m) { return m == 2 || m == 3 || m == 6; });
    if (canonical_only && parts != std::set<Integer>{Integer(6)}) return NumberField::sqrt2_sqrt3();
    if (parts.size() == 1) {
        const Integer m = *parts.begin();
        Integer r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        return NumberField::create({-m, Integer(0), Integer(1)}, {Rational(r), Rational(r + 1)}, "x");
    }
    const std::size_t pos = std::next(inv.radicals.begin())->second;
    throw ParseError("cannot combine these square roots automatically; declare a field with 'in field'", pos,
                     "sqrt(n) with n in one quadratic field");
}

class Evaluator {
public:
    explicit Evaluator(FieldPtr f) : f_(std::move(f)) {}

    AlgebraicNumber eval(const Node& n) const {
        switch (n.kind) {
            case Node::Num: return AlgebraicNumber(f_, n.value);
            case Node::Var: {
                if (n.name == "sqrt2" || n.name == "sqrt3") return radical(Integer(n.name == "sqrt2" ? 2 : 3), n.pos);
                if (f_->degree() > 1 && n.name == f_->generator()) return AlgebraicNumber::generator(f_);
                std::string known = "number, sqrt(n), root(p, [lo, hi])";
                if (f_->degree() > 1) known = "'" + f_->generator() + "', " + known;
                throw ParseError("unknown identifier '" + n.name + "'", n.pos, known);
            }
            case Node::Sqrt: {
                const auto [k, m] = squarefree_split(n.radicand);
                if (m == 1) return AlgebraicNumber(f_, Rational(k));
                return radical(m, n.pos) * Rational(k);
            }
            case Node::Root:
                if (!same_field(f_, n.root->create()))
                    throw ParseError("root(...) does not generate the declared field", n.pos, "root of the declared field");
                return AlgebraicNumber::generator(f_);
            case Node::Neg: return AlgebraicNumber(f_) - eval(*n.a);
            case Node::Add: return eval(*n.a) + eval(*n.b);
            case Node::Sub: return eval(*n.a) - eval(*n.b);
            case Node::Mul: return eval(*n.a) * eval(*n.b);
            case Node::Div: {
                const AlgebraicNumber d = eval(*n.b);
                if (d.is_zero()) throw ParseError("division by zero", n.pos, "nonzero divisor");
                return eval(*n.a) / d;
            }
            case Node::Pow: {
                AlgebraicNumber base = eval(*n.a);
                if (n.exponent < 0) {
                    if (base.is_zero()) throw ParseError("zero to a negative power", n.pos, "nonzero base");
                    base = base.inverse();
                }
                AlgebraicNumber r(f_, Rational(1));
                for (long k = 0; k < std::abs(n.exponent); ++k) r = r * base;
                return r;
            }
        }
        throw ParseError("internal: unknown node", n.pos, "");
    }

private:
    FieldPtr f_;

    AlgebraicNumber radical(const Integer& m, std::size_t pos) const {
        const auto v = sqrt_in(f_, m);
        if (!v) throw ParseError("sqrt(" + m.get_str() + ") is not available in field " + f_->poly_string(), pos,
                                 "an element of the field");
        return *v;
    }
};

struct ParsedTuple {
    Parser::Tuple tuple;
    std::optional<FieldSpec> clause;
};

ParsedTuple parse_tuple(std::string_view text) {
    Parser p(text);
    ParsedTuple out{p.tuple(), std::nullopt};
    out.clause = p.field_clause();
    p.end();
    return out;
}

}  // namespace

Direction3 parse_direction(std::string_view text) {
    ParsedTuple t = parse_tuple(text);
    FieldPtr f;
    if (t.clause) {
        f = t.clause->create();
    } else {
        Inventory inv;
        for (const auto& item : t.tuple.items) collect(*item, inv);
        f = infer_field(inv);
        // Without a field clause only a root(...) introduces a named generator.
        for (const Node* n : inv.names) {
            if (!inv.roots.empty() && n->name == f->generator()) continue;
            throw ParseError("unknown identifier '" + n->name + "'", n->pos,
                             "number, sqrt2, sqrt3, sqrt(n), root(p, [lo, hi]) or a field clause");
        }
    }
    const Evaluator ev(f);
    return Direction3::make(ev.eval(*t.tuple.items[0]), ev.eval(*t.tuple.items[1]), ev.eval(*t.tuple.items[2]));
}

Point3 parse_point(std::string_view text, const FieldPtr& field) {
    ParsedTuple t = parse_tuple(text);
    if (t.clause && !same_field(field, t.clause->create()))
        throw FieldMismatch("start point field differs from the direction field");
    const Evaluator ev(field);
    return Point3{{ev.eval(*t.tuple.items[0]), ev.eval(*t.tuple.items[1]), ev.eval(*t.tuple.items[2])}};
}

std::string format_direction(const Direction3& w) { return w.to_string(); }

}  // namespace cutseq
