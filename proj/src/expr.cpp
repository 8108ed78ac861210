#include "umbra/expr.hpp"

#include <cctype>

#include "umbra/errors.hpp"

namespace umbra {

namespace {

[[noreturn]] void syntax_error(const std::string& what, size_t offset) {
    throw SyntaxError(what + " at byte " + std::to_string(offset));
}

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!consume(c)) syntax_error(std::string("expected '") + c + "'", pos);
    }
    std::string integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) syntax_error("expected a digit", pos);
        return s.substr(start, pos - start);
    }
    // p or p/q, both unsigned (signs come from the grammar).
    Rat rational() {
        std::string num = integer();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            std::string den = integer();
            return Rat::parse(num + "/" + den);
        }
        return Rat::parse(num);
    }
    std::string word() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }
    int small_exponent() {
        skip_ws();
        size_t start = pos;
        std::string digits = integer();
        if (digits.size() > 3) syntax_error("exponent too large", start);
        return std::stoi(digits);
    }
};

SeriesExprPtr mk(SeriesExpr::Kind k) {
    auto e = std::make_shared<SeriesExpr>();
    e->kind = k;
    return e;
}

SeriesExprPtr parse_series_sum(Cursor& c);

SeriesExprPtr parse_series_base(Cursor& c) {
    char ch = c.peek();
    if (ch == '(') {
        c.expect('(');
        auto e = parse_series_sum(c);
        c.expect(')');
        return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        auto e = mk(SeriesExpr::Kind::Number);
        e->value = c.rational();
        return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
        size_t at = c.pos;
        std::string w = c.word();
        if (w == "y") return mk(SeriesExpr::Kind::Var);
        if (w == "exp" || w == "log") {
            c.expect('(');
            auto arg = parse_series_sum(c);
            c.expect(')');
            auto e = mk(w == "exp" ? SeriesExpr::Kind::Exp : SeriesExpr::Kind::Log);
            e->args.push_back(arg);
            return e;
        }
        syntax_error("unknown name '" + w + "'", at);
    }
    syntax_error("expected a term", c.pos);
}

SeriesExprPtr parse_series_factor(Cursor& c) {
    if (c.consume('-')) {
        auto e = mk(SeriesExpr::Kind::Neg);
        e->args.push_back(parse_series_factor(c));
        return e;
    }
    auto base = parse_series_base(c);
    if (c.consume('^')) {
        auto e = mk(SeriesExpr::Kind::Pow);
        e->exponent = c.small_exponent();
        e->args.push_back(base);
        return e;
    }
    return base;
}

SeriesExprPtr parse_series_term(Cursor& c) {
    auto e = parse_series_factor(c);
    while (c.peek() == '*') {
        c.expect('*');
        auto m = mk(SeriesExpr::Kind::Mul);
        m->args.push_back(e);
        m->args.push_back(parse_series_factor(c));
        e = m;
    }
    return e;
}

SeriesExprPtr parse_series_sum(Cursor& c) {
    auto e = parse_series_term(c);
    while (true) {
        char ch = c.peek();
        if (ch != '+' && ch != '-') break;
        c.expect(ch);
        auto s = mk(ch == '+' ? SeriesExpr::Kind::Add : SeriesExpr::Kind::Sub);
        s->args.push_back(e);
        s->args.push_back(parse_series_term(c));
        e = s;
    }
    return e;
}

OpExprPtr mko(OpExpr::Kind k) {
    auto e = std::make_shared<OpExpr>();
    e->kind = k;
    return e;
}

const std::vector<std::string>& op_atoms() {
    static const std::vector<std::string> atoms = {"X",  "D",     "UP", "DP",
                                                   "G",  "GINV",  "THETA", "ID"};
    return atoms;
}

OpExprPtr parse_op_sum(Cursor& c);

OpExprPtr parse_op_base(Cursor& c) {
    char ch = c.peek();
    if (ch == '(') {
        c.expect('(');
        auto e = parse_op_sum(c);
        c.expect(')');
        return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        auto e = mko(OpExpr::Kind::Number);
        e->value = c.rational();
        return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
        size_t at = c.pos;
        std::string w = c.word();
        for (const auto& a : op_atoms())
            if (w == a) {
                auto e = mko(OpExpr::Kind::Atom);
                e->atom = w;
                return e;
            }
        throw UnknownAtom("unknown operator atom '" + w + "' at byte " + std::to_string(at));
    }
    syntax_error("expected an operator term", c.pos);
}

OpExprPtr parse_op_factor(Cursor& c) {
    if (c.consume('-')) {
        auto e = mko(OpExpr::Kind::Neg);
        e->args.push_back(parse_op_factor(c));
        return e;
    }
    auto base = parse_op_base(c);
    if (c.consume('^')) {
        auto e = mko(OpExpr::Kind::Pow);
        e->exponent = c.small_exponent();
        e->args.push_back(base);
        return e;
    }
    return base;
}

OpExprPtr parse_op_term(Cursor& c) {
    auto e = parse_op_factor(c);
    while (c.peek() == '*') {
        c.expect('*');
        auto m = mko(OpExpr::Kind::Mul);
        m->args.push_back(e);
        m->args.push_back(parse_op_factor(c));
        e = m;
    }
    return e;
}

OpExprPtr parse_op_sum(Cursor& c) {
    auto e = parse_op_term(c);
    while (true) {
        char ch = c.peek();
        if (ch != '+' && ch != '-') break;
        c.expect(ch);
        auto s = mko(ch == '+' ? OpExpr::Kind::Add : OpExpr::Kind::Sub);
        s->args.push_back(e);
        s->args.push_back(parse_op_term(c));
        e = s;
    }
    return e;
}

bool needs_parens_in_product(SeriesExpr::Kind k) {
    return k == SeriesExpr::Kind::Add || k == SeriesExpr::Kind::Sub ||
           k == SeriesExpr::Kind::Neg;
}

} // namespace

SeriesExprPtr parse_series(const std::string& text) {
    Cursor c{text};
    auto e = parse_series_sum(c);
    if (!c.eof()) syntax_error("unexpected trailing input", c.pos);
    return e;
}

YSeries<Rat> eval_series(const SeriesExpr& e, int order) {
    switch (e.kind) {
    case SeriesExpr::Kind::Number: return YSeries<Rat>::constant(order, e.value);
    case SeriesExpr::Kind::Var: return YSeries<Rat>::y(order);
    case SeriesExpr::Kind::Add: return eval_series(*e.args[0], order) + eval_series(*e.args[1], order);
    case SeriesExpr::Kind::Sub: return eval_series(*e.args[0], order) - eval_series(*e.args[1], order);
    case SeriesExpr::Kind::Neg: return eval_series(*e.args[0], order).scaled(Rat(-1));
    case SeriesExpr::Kind::Mul:
        return series_mul(eval_series(*e.args[0], order), eval_series(*e.args[1], order));
    case SeriesExpr::Kind::Pow: {
        YSeries<Rat> base = eval_series(*e.args[0], order);
        YSeries<Rat> acc = YSeries<Rat>::constant(order, Rat(1));
        for (int i = 0; i < e.exponent; ++i) acc = series_mul(acc, base);
        return acc;
    }
    case SeriesExpr::Kind::Exp: return series_exp(eval_series(*e.args[0], order));
    case SeriesExpr::Kind::Log: return series_log(eval_series(*e.args[0], order));
    }
    throw SyntaxError("corrupt series AST");
}

std::string print_series(const SeriesExpr& e) {
    switch (e.kind) {
    case SeriesExpr::Kind::Number: return e.value.str();
    case SeriesExpr::Kind::Var: return "y";
    case SeriesExpr::Kind::Add: return print_series(*e.args[0]) + " + " + print_series(*e.args[1]);
    case SeriesExpr::Kind::Sub: {
        std::string rhs = print_series(*e.args[1]);
        SeriesExpr::Kind rk = e.args[1]->kind;
        if (rk == SeriesExpr::Kind::Add || rk == SeriesExpr::Kind::Sub ||
            rk == SeriesExpr::Kind::Neg)
            rhs = "(" + rhs + ")";
        return print_series(*e.args[0]) + " - " + rhs;
    }
    case SeriesExpr::Kind::Neg: {
        std::string a = print_series(*e.args[0]);
        if (needs_parens_in_product(e.args[0]->kind)) a = "(" + a + ")";
        return "-" + a;
    }
    case SeriesExpr::Kind::Mul: {
        std::string l = print_series(*e.args[0]);
        std::string r = print_series(*e.args[1]);
        if (needs_parens_in_product(e.args[0]->kind)) l = "(" + l + ")";
        if (needs_parens_in_product(e.args[1]->kind) || e.args[1]->kind == SeriesExpr::Kind::Mul)
            r = "(" + r + ")";
        return l + "*" + r;
    }
    case SeriesExpr::Kind::Pow: {
        std::string b = print_series(*e.args[0]);
        if (e.args[0]->kind != SeriesExpr::Kind::Var &&
            e.args[0]->kind != SeriesExpr::Kind::Number)
            b = "(" + b + ")";
        return b + "^" + std::to_string(e.exponent);
    }
    case SeriesExpr::Kind::Exp: return "exp(" + print_series(*e.args[0]) + ")";
    case SeriesExpr::Kind::Log: return "log(" + print_series(*e.args[0]) + ")";
    }
    return "?";
}

bool series_expr_equal(const SeriesExpr& a, const SeriesExpr& b) {
    if (a.kind != b.kind || a.exponent != b.exponent || a.args.size() != b.args.size())
        return false;
    if (a.kind == SeriesExpr::Kind::Number && a.value != b.value) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!series_expr_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

OpExprPtr parse_op(const std::string& text) {
    Cursor c{text};
    auto e = parse_op_sum(c);
    if (!c.eof()) syntax_error("unexpected trailing input", c.pos);
    return e;
}

OpMatrix eval_op(const OpExpr& e, const MonicFamily* fam, int N) {
    switch (e.kind) {
    case OpExpr::Kind::Atom: {
        if (e.atom == "X") return OpMatrix::mult_x(N);
        if (e.atom == "D") return OpMatrix::deriv(N);
        if (e.atom == "THETA") return OpMatrix::theta(N);
        if (e.atom == "ID") return OpMatrix::identity(N);
        if (!fam)
            throw PreconditionViolated("operator atom " + e.atom + " needs a family");
        if (e.atom == "UP") return op_U(*fam);
        if (e.atom == "DP") return op_D(*fam);
        if (e.atom == "G") return op_G(*fam);
        if (e.atom == "GINV") return op_Ginv(*fam);
        throw UnknownAtom("unknown operator atom '" + e.atom + "'");
    }
    case OpExpr::Kind::Number: return OpMatrix::identity(N).scaled(e.value);
    case OpExpr::Kind::Add: return eval_op(*e.args[0], fam, N) + eval_op(*e.args[1], fam, N);
    case OpExpr::Kind::Sub: return eval_op(*e.args[0], fam, N) - eval_op(*e.args[1], fam, N);
    case OpExpr::Kind::Neg: return eval_op(*e.args[0], fam, N).scaled(Rat(-1));
    case OpExpr::Kind::Mul: return eval_op(*e.args[0], fam, N) * eval_op(*e.args[1], fam, N);
    case OpExpr::Kind::Pow: return eval_op(*e.args[0], fam, N).pow(e.exponent);
    }
    throw SyntaxError("corrupt operator AST");
}

std::string print_op(const OpExpr& e) {
    auto paren_sum = [](const OpExpr& x) {
        return x.kind == OpExpr::Kind::Add || x.kind == OpExpr::Kind::Sub ||
               x.kind == OpExpr::Kind::Neg;
    };
    switch (e.kind) {
    case OpExpr::Kind::Atom: return e.atom;
    case OpExpr::Kind::Number: return e.value.str();
    case OpExpr::Kind::Add: return print_op(*e.args[0]) + " + " + print_op(*e.args[1]);
    case OpExpr::Kind::Sub: {
        std::string rhs = print_op(*e.args[1]);
        if (paren_sum(*e.args[1])) rhs = "(" + rhs + ")";
        return print_op(*e.args[0]) + " - " + rhs;
    }
    case OpExpr::Kind::Neg: {
        std::string a = print_op(*e.args[0]);
        if (paren_sum(*e.args[0])) a = "(" + a + ")";
        return "-" + a;
    }
    case OpExpr::Kind::Mul: {
        std::string l = print_op(*e.args[0]);
        std::string r = print_op(*e.args[1]);
        if (paren_sum(*e.args[0])) l = "(" + l + ")";
        if (paren_sum(*e.args[1]) || e.args[1]->kind == OpExpr::Kind::Mul) r = "(" + r + ")";
        return l + "*" + r;
    }
    case OpExpr::Kind::Pow: {
        std::string b = print_op(*e.args[0]);
        if (e.args[0]->kind != OpExpr::Kind::Atom && e.args[0]->kind != OpExpr::Kind::Number)
            b = "(" + b + ")";
        return b + "^" + std::to_string(e.exponent);
    }
    }
    return "?";
}

bool op_expr_equal(const OpExpr& a, const OpExpr& b) {
    if (a.kind != b.kind || a.exponent != b.exponent || a.args.size() != b.args.size() ||
        a.atom != b.atom)
        return false;
    if (a.kind == OpExpr::Kind::Number && a.value != b.value) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!op_expr_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

} // namespace umbra
