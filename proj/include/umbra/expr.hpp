#pragma once

#include <memory>
#include <string>
#include <vector>

#include "umbra/family.hpp"
#include "umbra/opmatrix.hpp"
#include "umbra/series.hpp"

namespace umbra {

// AST for series-in-y expressions: rational literals, the variable y, sums,
// products, integer powers, exp, log. '/' only appears inside a rational
// literal such as 1/2.
struct SeriesExpr {
    enum class Kind { Number, Var, Add, Sub, Neg, Mul, Pow, Exp, Log };
    Kind kind;
    Rat value;    // Number
    int exponent = 0; // Pow
    std::vector<std::shared_ptr<SeriesExpr>> args;
};
using SeriesExprPtr = std::shared_ptr<SeriesExpr>;

SeriesExprPtr parse_series(const std::string& text);
YSeries<Rat> eval_series(const SeriesExpr& e, int order);
std::string print_series(const SeriesExpr& e);
bool series_expr_equal(const SeriesExpr& a, const SeriesExpr& b);

// AST for operator expressions over the atoms X, D, UP, DP, G, GINV, THETA,
// ID, with sums, composition products, integer powers and rational scalars.
struct OpExpr {
    enum class Kind { Atom, Number, Add, Sub, Neg, Mul, Pow };
    Kind kind;
    std::string atom; // Atom
    Rat value;        // Number
    int exponent = 0; // Pow
    std::vector<std::shared_ptr<OpExpr>> args;
};
using OpExprPtr = std::shared_ptr<OpExpr>;

OpExprPtr parse_op(const std::string& text);
// fam may be null when the expression avoids UP/DP/G/GINV.
OpMatrix eval_op(const OpExpr& e, const MonicFamily* fam, int N);
std::string print_op(const OpExpr& e);
bool op_expr_equal(const OpExpr& a, const OpExpr& b);

} // namespace umbra
