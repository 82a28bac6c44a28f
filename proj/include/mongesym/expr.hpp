#pragma once

// Canonical exact expressions on the jet charts.
//
// An Expr is a sum of terms c * m * a_1 * ... * a_k where c is a nonzero
// rational, m a (Laurent) monomial in the chart coordinates and a_i atoms:
//
//   Power(b, q)  b a polynomial, q a non-integer rational (negative integers
//                are admitted for non-monomial bases, which cannot be expanded)
//   Exp(g)       g a polynomial; at most one per term
//   Ln(g)        g a polynomial; may repeat
//
// Canonical form rules:
//   - terms are sorted by (monomial, atoms) in descending graded-lex order
//     with x < y < y1 < y2 < z, keys are unique and coefficients nonzero;
//   - a coordinate v that carries a Power(v, q) atom has monomial exponent 0
//     in that term (the atom holds the full exponent);
//   - Power bases carry no monomial content; numeric content is pulled out
//     only when its rational power stays in Q;
//   - integer powers of a multi-term base are expanded.
// Zero-testing is syntactic: an Expr is zero iff its term list is empty.

#include "mongesym/chart.hpp"
#include "mongesym/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mongesym {

class Expr;

struct Monomial {
    std::array<int, kCoordCount> exponents{};

    int degree() const;
    bool is_one() const;
    int operator[](Coord c) const { return exponents[static_cast<std::size_t>(index(c))]; }
    int& operator[](Coord c) { return exponents[static_cast<std::size_t>(index(c))]; }

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic comparison, z > y2 > y1 > y > x. Returns <0, 0, >0.
int compare(const Monomial& a, const Monomial& b);

struct Atom {
    enum class Kind : std::uint8_t { Power, Exp, Ln };

    Kind kind = Kind::Power;
    std::shared_ptr<const Expr> argument; // the base for Power
    Rational exponent;                    // Power only

    const Expr& arg() const { return *argument; }
};

int compare(const Atom& a, const Atom& b);

struct Term {
    Rational coefficient;
    Monomial monomial;
    std::vector<Atom> atoms;
};

/// Orders terms by (monomial, atoms), ignoring coefficients.
int compare_key(const Term& a, const Term& b);

class Expr {
public:
    explicit Expr(Chart chart = Chart::J20) : chart_(chart) {}

    static Expr constant(Chart chart, const Rational& value);
    static Expr variable(Chart chart, Coord c);
    static Expr monomial(Chart chart, const Rational& coefficient, const Monomial& m);

    /// Sorts and merges atom-normalized terms into canonical form.
    static Expr from_terms(Chart chart, std::vector<Term> terms);

    Chart chart() const { return chart_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::optional<Rational> constant_value() const;
    /// No atoms (Laurent monomials allowed).
    bool is_polynomial() const;
    bool depends_on(Coord c) const;
    /// Maximum monomial degree over all terms; -1 for zero.
    int max_degree() const;

    /// Same terms, different chart tag. Throws ChartMismatch when a coordinate
    /// outside `chart` is used.
    Expr on_chart(Chart chart) const;

    Expr& operator+=(const Expr& other);
    Expr& operator-=(const Expr& other);
    Expr& operator*=(const Expr& other);
    Expr& operator*=(const Rational& c);

    friend Expr operator+(Expr a, const Expr& b) { return a += b; }
    friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator*(Expr a, const Rational& c) { return a *= c; }
    friend Expr operator*(const Rational& c, Expr a) { return a *= c; }
    friend Expr operator-(Expr a);

    friend bool operator==(const Expr& a, const Expr& b);

private:
    friend Expr retag_unchecked(const Expr&, Chart);

    Chart chart_;
    std::vector<Term> terms_;
};

/// Total order on expressions (chart ignored); used to key atom bases.
int compare(const Expr& a, const Expr& b);

using Assignment = std::map<Coord, Rational>;
using ApproxPoint = std::array<double, kCoordCount>;

Expr scale(const Expr& a, const Rational& c);
Expr pow(const Expr& base, const Rational& exponent);
Expr exp(const Expr& argument);
Expr ln(const Expr& argument);

Expr differentiate(const Expr& a, Coord v);

/// Exact value. Throws EvaluationError for irrational powers, exp/ln away
/// from exp(0)/ln(1), division by zero, or missing coordinates.
Rational substitute(const Expr& a, const Assignment& assignment);

/// Binary floating point evaluation, for randomized cross-checks only.
double evaluate_approx(const Expr& a, const ApproxPoint& point);

/// Drops every term whose monomial degree exceeds `max_degree`.
Expr truncate(const Expr& a, int max_degree);

bool is_zero(const Expr& a);
bool equals(const Expr& a, const Expr& b);

/// Prints in the input grammar; deterministic.
std::string to_string(const Expr& a);

/// Parses the expression grammar. Throws ParseError.
Expr parse(std::string_view text, Chart chart);

/// Internal: re-tags without coordinate checks.
Expr retag_unchecked(const Expr& a, Chart chart);

} // namespace mongesym
