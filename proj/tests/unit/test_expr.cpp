#include "mongesym/error.hpp"
#include "mongesym/expr.hpp"
#include "random_expr.hpp"

#include <doctest.h>

#include <cmath>

using namespace mongesym;

namespace {

Expr p(std::string_view s)
{
    return parse(s, Chart::J20);
}

Rational r(long n, long d = 1)
{
    return make_rational(n, d);
}

Assignment point(long x, long y, long y1, long y2, long z)
{
    return {{Coord::x, r(x)}, {Coord::y, r(y)}, {Coord::y1, r(y1)}, {Coord::y2, r(y2)}, {Coord::z, r(z)}};
}

double central_difference(const Expr& e, Coord v, ApproxPoint at, double h = 1e-5)
{
    auto k = static_cast<std::size_t>(index(v));
    ApproxPoint plus = at, minus = at;
    plus[k] += h;
    minus[k] -= h;
    return (evaluate_approx(e, plus) - evaluate_approx(e, minus)) / (2 * h);
}

} // namespace

TEST_CASE("rational helpers")
{
    CHECK(rational_root(r(8, 27), 3) == r(2, 3));
    CHECK(rational_root(r(-8), 3) == r(-2));
    CHECK_FALSE(rational_root(r(-4), 2).has_value());
    CHECK_FALSE(rational_root(r(2), 3).has_value());
    CHECK(rational_power(r(8), r(-5, 3)) == r(1, 32));
    CHECK(rational_power(r(0), r(1, 3)) == r(0));
    CHECK_FALSE(rational_power(r(0), r(-1, 3)).has_value());
    CHECK(parse_rational("-10/4") == r(-5, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("parse: y + y2^(1/3) has a polynomial term and one power atom")
{
    Expr e = p("y + y2^(1/3)");
    REQUIRE(e.size() == 2);
    int atoms = 0;
    for (const auto& t : e.terms()) {
        CHECK(t.coefficient == 1);
        if (!t.atoms.empty()) {
            ++atoms;
            REQUIRE(t.atoms.size() == 1);
            CHECK(t.atoms[0].kind == Atom::Kind::Power);
            CHECK(t.atoms[0].exponent == r(1, 3));
            CHECK(to_string(t.atoms[0].arg()) == "y2");
        } else {
            CHECK(t.monomial[Coord::y] == 1);
        }
    }
    CHECK(atoms == 1);
}

TEST_CASE("parse: zero and a product of power and exp atoms")
{
    CHECK(p("0").is_zero());
    CHECK(p("x - x").is_zero());
    Expr e = p("(y2 - 1/2*y1^2)^(2/3) * exp(-4/3*y)");
    REQUIRE(e.size() == 1);
    const auto& atoms = e.terms()[0].atoms;
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].kind == Atom::Kind::Power);
    CHECK(atoms[0].exponent == r(2, 3));
    CHECK(atoms[1].kind == Atom::Kind::Exp);
    CHECK(to_string(atoms[1].arg()) == "-4/3*y");
}

TEST_CASE("parse errors")
{
    SUBCASE("syntax error with position")
    {
        try {
            (void)p("x + * y");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.position() == 4);
        }
    }
    SUBCASE("unknown identifier")
    {
        CHECK_THROWS_WITH_AS((void)p("x + w"), doctest::Contains("unknown identifier 'w'"), ParseError);
        CHECK_THROWS_AS((void)parse("z", Chart::J2), ParseError);
    }
    SUBCASE("non-rational literal")
    {
        CHECK_THROWS_WITH_AS((void)p("1.5*x"), doctest::Contains("non-rational literal"), ParseError);
        CHECK_THROWS_AS((void)p("x^(0.5)"), ParseError);
    }
    CHECK_THROWS_AS((void)p("(x + y"), ParseError);
    CHECK_THROWS_AS((void)p("x y"), ParseError);
    CHECK_THROWS_AS((void)p("1/0"), ParseError);
    CHECK_THROWS_AS((void)p("exp(y2^(1/3))"), GrammarError);
}

TEST_CASE("printing is deterministic and re-parses")
{
    CHECK(to_string(p("y2^(1/3) + y")) == "y + y2^(1/3)");
    CHECK(to_string(p("1/2*x^2")) == "1/2*x^2");
    CHECK(to_string(p("-(2/9)*y2^(-5/3)")) == "-2/9*y2^(-5/3)");
    CHECK(to_string(p("y2^(-1)")) == "y2^(-1)");
    CHECK(to_string(p("1 + exp(-4/3*y)*(y2 - 1/2*y1^2)^(2/3)")) == "(1/2*y1^2 - y2)^(2/3)*exp(-4/3*y) + 1");
    CHECK(to_string(p("2^(1/3)*3")) == "3*2^(1/3)");
    for (const char* s : {"y + y2^(1/3)", "x*y1 - 3*y1*y2", "(y2 - 1/2*y1^2)^(2/3)*exp(-4/3*y) + 1", "ln(y2)*ln(y2)",
                          "(x + y)^(-1)", "(1/2)^(1/3)*x", "-y2^(-5/3)"}) {
        Expr e = p(s);
        CHECK(p(to_string(e)) == e);
    }
}

TEST_CASE("arithmetic examples")
{
    Expr y = p("y");
    CHECK((y + (-y)).is_zero());
    CHECK(p("y2^(1/3)") * p("y2^(2/3)") == p("y2"));
    CHECK(substitute(p("y2^(1/3)"), point(0, 0, 0, 8, 0)) * substitute(p("y2^(2/3)"), point(0, 0, 0, 8, 0)) == 8);
    CHECK((p("x + y") * p("x - y")) == p("x^2 - y^2"));
    CHECK(scale(p("x + y"), r(3, 2)) == p("3/2*x + 3/2*y"));
    CHECK_THROWS_AS((void)(p("x") + parse("x", Chart::J2)), ChartMismatch);
    CHECK_THROWS_AS((void)(p("x") * parse("x", Chart::Plane)), ChartMismatch);
}

TEST_CASE("power normalization")
{
    CHECK(p("y2 * y2^(1/3)") == p("y2^(4/3)"));
    CHECK(p("y2^(-2/3) * y2^(-1/3)") == p("y2^(-1)"));
    CHECK(p("(8*y2^3)^(1/3)") == p("2*y2"));
    CHECK(p("(x*y + x)^(1/2)") == p("x^(1/2)*(y + 1)^(1/2)"));
    CHECK(p("(4*y + 4)^(1/2)") == p("2*(y + 1)^(1/2)"));
    CHECK(p("(-y - 1)^(1/3)") == p("-(y + 1)^(1/3)"));
    CHECK(p("(y2 - 1/2*y1^2)^(2/3) * (y2 - 1/2*y1^2)^(1/3)") == p("y2 - 1/2*y1^2"));
    CHECK(p("exp(y)*exp(-y)") == p("1"));
    CHECK(p("exp(x)*exp(y)") == p("exp(x + y)"));
    CHECK(p("(x + 1)^(-1) * (x + 1)^(1/2)") == p("(x + 1)^(-1/2)"));
    // Atoms do not absorb polynomial factors: this product stays expanded.
    CHECK_FALSE(p("(x + 1)^(-1) * (x + 1)") == p("1"));
    CHECK(p("8^(1/3)") == p("2"));
}

TEST_CASE("differentiate examples")
{
    Expr f = p("y + y2^(1/3)");
    Expr d = differentiate(f, Coord::y2);
    CHECK(d == p("1/3*y2^(-2/3)"));
    CHECK(std::abs(evaluate_approx(d, {0, 0, 0, 1, 0}) - central_difference(f, Coord::y2, {0, 0, 0, 1, 0})) < 1e-6);
    CHECK(differentiate(p("y2^(1/3)"), Coord::x).is_zero());
    Expr dd = differentiate(differentiate(p("y2^(1/3)"), Coord::y2), Coord::y2);
    CHECK(dd == p("-2/9*y2^(-5/3)"));
    CHECK(std::abs(evaluate_approx(dd, {0, 0, 0, 1, 0}) -
                   central_difference(d, Coord::y2, {0, 0, 0, 1, 0})) < 1e-6);

    CHECK(differentiate(p("exp(-4/3*y)"), Coord::y) == p("-4/3*exp(-4/3*y)"));
    CHECK(differentiate(p("ln(y2)"), Coord::y2) == p("y2^(-1)"));
    CHECK(differentiate(p("ln(y2 + x)"), Coord::x) == p("(y2 + x)^(-1)"));
    CHECK(differentiate(p("(y2 - 1/2*y1^2)^(2/3)"), Coord::y1) == p("-2/3*y1*(y2 - 1/2*y1^2)^(-1/3)"));
}

TEST_CASE("substitute examples")
{
    CHECK(substitute(p("y + y2^(1/3)"), point(0, 2, 0, 8, 0)) == 4);
    CHECK(substitute(p("x*y1"), point(3, 0, 5, 0, 0)) == 15);
    CHECK_THROWS_WITH_AS((void)substitute(p("y2^(1/3)"), point(0, 0, 0, 2, 0)),
                         doctest::Contains("non-rational power"), EvaluationError);
    CHECK_THROWS_AS((void)substitute(p("exp(y)"), point(0, 1, 0, 0, 0)), EvaluationError);
    CHECK(substitute(p("exp(y)"), point(0, 0, 0, 0, 0)) == 1);
    CHECK_THROWS_AS((void)substitute(p("y^(-1)"), point(0, 0, 0, 0, 0)), EvaluationError);
    CHECK_THROWS_AS((void)substitute(p("x"), Assignment{}), EvaluationError);
}

TEST_CASE("zero test examples")
{
    CHECK(is_zero(p("y2^(1/3)") * p("y2^(2/3)") - p("y2")));
    CHECK_FALSE(is_zero(p("x")));
    CHECK(equals(pow(p("x + y"), 2), p("x^2 + 2*x*y + y^2")));
}

TEST_CASE("on_chart restricts only z-free expressions")
{
    CHECK(p("x + y2").on_chart(Chart::J2) == parse("x + y2", Chart::J2));
    CHECK_THROWS_AS((void)p("z*x").on_chart(Chart::J2), ChartMismatch);
    CHECK_THROWS_AS((void)p("(z + 1)^(1/2)").on_chart(Chart::J2), ChartMismatch);
}

TEST_CASE("property: canonical form is idempotent under print/parse")
{
    testing::ExprGenerator gen(11);
    for (int i = 0; i < 300; ++i) {
        Expr e = gen.rich_expr();
        Expr again = p(to_string(e));
        REQUIRE_MESSAGE(again == e, to_string(e));
        CHECK(to_string(again) == to_string(e));
        CHECK(Expr::from_terms(Chart::J20, e.terms()) == e);
    }
}

TEST_CASE("property: ring axioms on 1000 random triples")
{
    testing::ExprGenerator gen(7);
    for (int i = 0; i < 1000; ++i) {
        Expr a = gen.rich_expr(), b = gen.rich_expr(), c = gen.power_expr();
        REQUIRE((a + b) == (b + a));
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a - a).is_zero());
    }
}

TEST_CASE("property: Leibniz rule and commuting mixed partials")
{
    testing::ExprGenerator gen(3);
    for (int i = 0; i < 300; ++i) {
        Expr a = gen.rich_expr(), b = gen.rich_expr();
        Coord u = kAllCoords[static_cast<std::size_t>(gen.uniform(0, 4))];
        Coord v = kAllCoords[static_cast<std::size_t>(gen.uniform(0, 4))];
        REQUIRE(differentiate(a * b, u) == a * differentiate(b, u) + b * differentiate(a, u));
        REQUIRE(differentiate(differentiate(a, u), v) == differentiate(differentiate(a, v), u));
    }
}

TEST_CASE("property: exact derivative matches central differences")
{
    testing::ExprGenerator gen(5);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        Expr a = gen.power_expr();
        Coord v = kAllCoords[static_cast<std::size_t>(gen.uniform(0, 4))];
        Assignment at = gen.admissible_point();
        ApproxPoint approx{};
        for (auto& [c, value] : at) approx[static_cast<std::size_t>(index(c))] = value.get_d();
        double exact = substitute(differentiate(a, v), at).get_d();
        double numeric = central_difference(a, v, approx, 1e-6);
        double scale = std::max(1.0, std::abs(exact));
        REQUIRE_MESSAGE(std::abs(exact - numeric) / scale < 1e-6, to_string(a));
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("property: zero test is sound at sample points")
{
    testing::ExprGenerator gen(9);
    for (int i = 0; i < 300; ++i) {
        Expr a = gen.power_expr(), b = gen.power_expr();
        Expr diff = a * b - b * a + a - gen.power_expr();
        if (!diff.is_zero()) continue;
        Assignment at = gen.admissible_point();
        CHECK(substitute(diff, at) == 0);
    }
    // Nonzero canonical forms are not silently collapsed.
    for (int i = 0; i < 300; ++i) {
        Expr a = gen.power_expr();
        Rational v = substitute(a, gen.admissible_point());
        if (v != 0) CHECK_FALSE(a.is_zero());
    }
}
