#include "mongesym/expr.hpp"

namespace mongesym {

namespace {

Expr term_expr(Chart chart, Term t)
{
    return Expr::from_terms(chart, {std::move(t)});
}

} // namespace

Expr differentiate(const Expr& a, Coord v)
{
    const Chart chart = a.chart();
    std::vector<Term> simple;
    Expr result(chart);
    for (const auto& t : a.terms()) {
        if (int e = t.monomial[v]; e != 0) {
            Term d = t;
            d.coefficient *= e;
            d.monomial[v] -= 1;
            simple.push_back(std::move(d));
        }
        for (std::size_t k = 0; k < t.atoms.size(); ++k) {
            const Atom& atom = t.atoms[k];
            if (!atom.arg().depends_on(v)) continue;
            Term rest = t;
            rest.atoms.erase(rest.atoms.begin() + static_cast<std::ptrdiff_t>(k));
            Expr arg = retag_unchecked(atom.arg(), chart);
            Expr darg = differentiate(arg, v);
            switch (atom.kind) {
            case Atom::Kind::Power:
                result += term_expr(chart, std::move(rest)) * pow(arg, atom.exponent - 1) * darg * atom.exponent;
                break;
            case Atom::Kind::Exp: result += term_expr(chart, t) * darg; break;
            case Atom::Kind::Ln: result += term_expr(chart, std::move(rest)) * darg * pow(arg, -1); break;
            }
        }
    }
    result += Expr::from_terms(chart, std::move(simple));
    return result;
}

} // namespace mongesym
