#include "mongesym/expr.hpp"
#include "normalize.hpp"

namespace mongesym {

namespace {

std::string exponent_suffix(const Rational& q)
{
    if (is_integer(q) && q > 0) return "^" + to_string(q);
    return "^(" + to_string(q) + ")";
}

std::string atom_string(const Atom& a)
{
    switch (a.kind) {
    case Atom::Kind::Exp: return "exp(" + to_string(a.arg()) + ")";
    case Atom::Kind::Ln: return "ln(" + to_string(a.arg()) + ")";
    case Atom::Kind::Power: break;
    }
    Coord v{};
    if (detail::is_single_variable(a.arg(), v)) return std::string(name(v)) + exponent_suffix(a.exponent);
    if (auto c = a.arg().constant_value(); c && is_integer(*c) && *c > 0)
        return to_string(*c) + exponent_suffix(a.exponent);
    return "(" + to_string(a.arg()) + ")" + exponent_suffix(a.exponent);
}

std::string unsigned_term(const Term& t)
{
    std::string factors;
    auto append = [&](const std::string& f) {
        if (!factors.empty()) factors += '*';
        factors += f;
    };
    for (Coord c : kAllCoords) {
        int e = t.monomial[c];
        if (e == 0) continue;
        if (e == 1)
            append(std::string(name(c)));
        else
            append(std::string(name(c)) + exponent_suffix(e));
    }
    for (const auto& a : t.atoms) append(atom_string(a));
    Rational c = abs(t.coefficient);
    if (factors.empty()) return to_string(c);
    if (c == 1) return factors;
    return to_string(c) + "*" + factors;
}

} // namespace

std::string to_string(const Expr& a)
{
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        bool negative = t.coefficient < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += unsigned_term(t);
        first = false;
    }
    return out;
}

} // namespace mongesym
