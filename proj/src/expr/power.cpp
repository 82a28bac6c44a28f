#include "mongesym/error.hpp"
#include "mongesym/expr.hpp"
#include "normalize.hpp"

#include <algorithm>
#include <memory>

namespace mongesym {

namespace {

std::shared_ptr<const Expr> share(const Expr& e)
{
    return std::make_shared<const Expr>(retag_unchecked(e, Chart::J20));
}

Atom power_atom(const Expr& base, const Rational& q)
{
    return Atom{Atom::Kind::Power, share(base), q};
}

bool odd(const Integer& n)
{
    return mpz_odd_p(n.get_mpz_t()) != 0;
}

Expr atom_free_pow(const Expr& base, unsigned long n)
{
    Expr result = Expr::constant(base.chart(), 1);
    Expr square = base;
    while (n > 0) {
        if (n & 1UL) result = result * square;
        n >>= 1;
        if (n > 0) square = square * square;
    }
    return result;
}

// Power of a single term for exponents that are not non-negative integers.
Expr pow_term(Chart chart, const Term& t, const Rational& q)
{
    Term raw;
    raw.coefficient = 1;
    if (auto r = rational_power(t.coefficient, q)) {
        raw.coefficient = *r;
    } else {
        Rational c = t.coefficient;
        if (c < 0 && odd(q.get_den())) {
            raw.coefficient = odd(q.get_num()) ? -1 : 1;
            c = -c;
        }
        raw.atoms.push_back(power_atom(Expr::constant(Chart::J20, c), q));
    }
    for (Coord v : kAllCoords) {
        int e = t.monomial[v];
        if (e == 0) continue;
        Rational eq = q * e;
        if (is_integer(eq))
            raw.monomial[v] = static_cast<int>(eq.get_num().get_si());
        else
            raw.atoms.push_back(power_atom(Expr::variable(Chart::J20, v), eq));
    }
    for (const auto& a : t.atoms) {
        switch (a.kind) {
        case Atom::Kind::Power: raw.atoms.push_back(Atom{Atom::Kind::Power, a.argument, a.exponent * q}); break;
        case Atom::Kind::Exp: raw.atoms.push_back(Atom{Atom::Kind::Exp, share(a.arg() * q), 0}); break;
        case Atom::Kind::Ln: throw GrammarError("powers of ln atoms are outside the supported grammar");
        }
    }
    return detail::normalize_term(chart, std::move(raw));
}

} // namespace

namespace detail {

bool is_single_variable(const Expr& e, Coord& v)
{
    if (e.size() != 1) return false;
    const Term& t = e.terms()[0];
    if (t.coefficient != 1 || !t.atoms.empty() || t.monomial.degree() != 1) return false;
    for (Coord c : kAllCoords) {
        if (t.monomial[c] == 1) {
            v = c;
            return true;
        }
        if (t.monomial[c] != 0) return false;
    }
    return false;
}

Expr normalize_term(Chart chart, Term raw)
{
    if (raw.coefficient == 0) return Expr(chart);
    if (raw.atoms.empty()) return Expr::from_terms(chart, {std::move(raw)});

    std::vector<Atom> powers, lns, out;
    Expr exp_arg(Chart::J20);
    bool has_exp = false;
    for (auto& a : raw.atoms) {
        switch (a.kind) {
        case Atom::Kind::Power: powers.push_back(std::move(a)); break;
        case Atom::Kind::Exp:
            exp_arg += a.arg();
            has_exp = true;
            break;
        case Atom::Kind::Ln: lns.push_back(std::move(a)); break;
        }
    }
    std::stable_sort(powers.begin(), powers.end(),
                     [](const Atom& a, const Atom& b) { return compare(a.arg(), b.arg()) < 0; });

    std::vector<std::pair<std::shared_ptr<const Expr>, unsigned long>> expansions;
    for (std::size_t i = 0; i < powers.size();) {
        Rational q = powers[i].exponent;
        std::size_t j = i + 1;
        while (j < powers.size() && compare(powers[j].arg(), powers[i].arg()) == 0) q += powers[j++].exponent;
        const auto& base = powers[i].argument;
        Coord v{};
        if (is_single_variable(*base, v)) {
            q += raw.monomial[v];
            raw.monomial[v] = 0;
            if (is_integer(q))
                raw.monomial[v] = static_cast<int>(q.get_num().get_si());
            else
                out.push_back(Atom{Atom::Kind::Power, base, q});
        } else if (auto c = base->constant_value()) {
            if (*c == 0 && q <= 0) throw EvaluationError("zero raised to a non-positive power");
            if (auto r = rational_power(*c, q))
                raw.coefficient *= *r;
            else
                out.push_back(Atom{Atom::Kind::Power, base, q});
        } else if (q != 0) {
            if (is_integer(q) && q > 0)
                expansions.emplace_back(base, q.get_num().get_ui());
            else
                out.push_back(Atom{Atom::Kind::Power, base, q});
        }
        i = j;
    }
    if (has_exp && !exp_arg.is_zero())
        out.push_back(Atom{Atom::Kind::Exp, std::make_shared<const Expr>(std::move(exp_arg)), 0});
    for (auto& a : lns) out.push_back(std::move(a));
    std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return compare(a, b) < 0; });

    Expr result = Expr::from_terms(chart, {Term{raw.coefficient, raw.monomial, std::move(out)}});
    for (const auto& [base, n] : expansions) result = result * atom_free_pow(retag_unchecked(*base, chart), n);
    return result;
}

} // namespace detail

Expr pow(const Expr& base, const Rational& q)
{
    const Chart chart = base.chart();
    if (is_integer(q) && q >= 0) {
        if (!q.get_num().fits_ulong_p()) throw GrammarError("exponent too large");
        return atom_free_pow(base, q.get_num().get_ui());
    }
    if (base.is_zero()) {
        if (q > 0) return Expr(chart);
        throw EvaluationError("zero raised to a non-positive power");
    }
    if (base.size() == 1) return pow_term(chart, base.terms()[0], q);
    if (!base.is_polynomial())
        throw GrammarError("non-integer power of a sum containing exp/ln/fractional atoms is not supported");

    // Pull out monomial content.
    Monomial content = base.terms()[0].monomial;
    for (const auto& t : base.terms())
        for (std::size_t i = 0; i < content.exponents.size(); ++i)
            content.exponents[i] = std::min(content.exponents[i], t.monomial.exponents[i]);
    Expr prefactor = Expr::constant(chart, 1);
    Expr rest = base;
    if (!content.is_one()) {
        Monomial inverse;
        for (std::size_t i = 0; i < content.exponents.size(); ++i) inverse.exponents[i] = -content.exponents[i];
        rest = base * Expr::monomial(chart, 1, inverse);
        prefactor = pow_term(chart, Term{1, content, {}}, q);
    }

    // Pull out numeric content when its power stays rational; otherwise at
    // least normalize the sign when the real root is defined.
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& t : rest.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    if (rest.terms()[0].coefficient < 0) c = -c;
    if (auto r = rational_power(c, q)) {
        rest = rest * Rational(1 / c);
        prefactor = prefactor * *r;
    } else if (c < 0 && odd(q.get_den())) {
        rest = -rest;
        if (odd(q.get_num())) prefactor = -prefactor;
    }
    Expr atom = detail::normalize_term(chart, Term{1, {}, {power_atom(rest, q)}});
    return prefactor * atom;
}

Expr exp(const Expr& argument)
{
    if (!argument.is_polynomial()) throw GrammarError("exp of a non-polynomial argument is not supported");
    if (argument.is_zero()) return Expr::constant(argument.chart(), 1);
    return detail::normalize_term(argument.chart(), Term{1, {}, {Atom{Atom::Kind::Exp, share(argument), 0}}});
}

Expr ln(const Expr& argument)
{
    if (!argument.is_polynomial()) throw GrammarError("ln of a non-polynomial argument is not supported");
    if (argument.is_zero()) throw EvaluationError("ln of zero");
    if (auto value = argument.constant_value(); value && *value == 1) return Expr(argument.chart());
    return Expr::from_terms(argument.chart(), {Term{1, {}, {Atom{Atom::Kind::Ln, share(argument), 0}}}});
}

} // namespace mongesym
