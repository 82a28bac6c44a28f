#pragma once

// Deterministic random expression generators shared by the property tests.

#include "mongesym/expr.hpp"

#include <random>

namespace mongesym::testing {

class ExprGenerator {
public:
    explicit ExprGenerator(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational small_rational()
    {
        int n = uniform(-4, 4);
        if (n == 0) n = 1;
        return make_rational(n, uniform(1, 3));
    }

    Expr monomial(int max_degree)
    {
        Monomial m;
        int budget = uniform(0, max_degree);
        for (int i = 0; i < budget; ++i) m.exponents[static_cast<std::size_t>(uniform(0, kCoordCount - 1))] += 1;
        return Expr::monomial(Chart::J20, small_rational(), m);
    }

    /// Sum of a few terms, each a monomial possibly times y2^(k/3).
    Expr power_expr(int max_terms = 3, bool allow_atoms = true)
    {
        Expr e(Chart::J20);
        int n = uniform(1, max_terms);
        Expr y2 = Expr::variable(Chart::J20, Coord::y2);
        for (int i = 0; i < n; ++i) {
            Expr t = monomial(2);
            if (allow_atoms && uniform(0, 2) == 0) t = t * pow(y2, make_rational(uniform(-4, 4), 3));
            e += t;
        }
        return e;
    }

    /// Adds exp/ln and non-monomial power atoms on top of power_expr.
    Expr rich_expr()
    {
        Expr e = power_expr(2);
        int pick = uniform(0, 5);
        Expr y = Expr::variable(Chart::J20, Coord::y);
        Expr y1 = Expr::variable(Chart::J20, Coord::y1);
        Expr y2 = Expr::variable(Chart::J20, Coord::y2);
        if (pick == 0) e += monomial(1) * exp(y * small_rational());
        if (pick == 1) e += monomial(1) * pow(y2 - y1 * y1 * make_rational(1, 2), make_rational(2, 3));
        if (pick == 2) e += monomial(1) * ln(y2);
        return e;
    }

    Assignment admissible_point()
    {
        Assignment a;
        for (Coord c : kAllCoords) a[c] = make_rational(uniform(-5, 5), uniform(1, 2));
        int r = uniform(1, 3);
        a[Coord::y2] = make_rational(r * r * r, 1);
        return a;
    }

private:
    std::mt19937 rng_;
};

} // namespace mongesym::testing
