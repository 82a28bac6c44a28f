#include "mongesym/error.hpp"
#include "mongesym/expr.hpp"

#include <cmath>

namespace mongesym {

namespace {

Rational int_power(const Rational& base, int e)
{
    if (e == 0) return 1;
    if (base == 0) {
        if (e < 0) throw EvaluationError("division by zero");
        return 0;
    }
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
    Rational r(num, den);
    r.canonicalize();
    if (e < 0) r = 1 / r;
    return r;
}

} // namespace

Rational substitute(const Expr& a, const Assignment& assignment)
{
    auto value_of = [&](Coord c) -> const Rational& {
        auto it = assignment.find(c);
        if (it == assignment.end()) throw EvaluationError("no value assigned to " + std::string(name(c)));
        return it->second;
    };
    Rational total = 0;
    for (const auto& t : a.terms()) {
        Rational v = t.coefficient;
        for (Coord c : kAllCoords)
            if (int e = t.monomial[c]; e != 0) v *= int_power(value_of(c), e);
        for (const auto& atom : t.atoms) {
            Rational arg = substitute(atom.arg(), assignment);
            switch (atom.kind) {
            case Atom::Kind::Power: {
                auto r = rational_power(arg, atom.exponent);
                if (!r)
                    throw EvaluationError("non-rational power: (" + to_string(arg) + ")^(" + to_string(atom.exponent) +
                                          ")");
                v *= *r;
                break;
            }
            case Atom::Kind::Exp:
                if (arg != 0) throw EvaluationError("exp(" + to_string(arg) + ") is not rational");
                break;
            case Atom::Kind::Ln:
                if (arg != 1) throw EvaluationError("ln(" + to_string(arg) + ") is not rational");
                v = 0;
                break;
            }
        }
        total += v;
    }
    return total;
}

double evaluate_approx(const Expr& a, const ApproxPoint& point)
{
    double total = 0.0;
    for (const auto& t : a.terms()) {
        double v = t.coefficient.get_d();
        for (Coord c : kAllCoords)
            if (int e = t.monomial[c]; e != 0) v *= std::pow(point[static_cast<std::size_t>(index(c))], e);
        for (const auto& atom : t.atoms) {
            double arg = evaluate_approx(atom.arg(), point);
            switch (atom.kind) {
            case Atom::Kind::Power: {
                double q = atom.exponent.get_d();
                if (arg < 0 && mpz_odd_p(atom.exponent.get_den_mpz_t())) {
                    double mag = std::pow(-arg, q);
                    v *= mpz_odd_p(atom.exponent.get_num_mpz_t()) ? -mag : mag;
                } else {
                    v *= std::pow(arg, q);
                }
                break;
            }
            case Atom::Kind::Exp: v *= std::exp(arg); break;
            case Atom::Kind::Ln: v *= std::log(arg); break;
            }
        }
        total += v;
    }
    return total;
}

} // namespace mongesym
