#include "mongesym/rational.hpp"

#include <stdexcept>

namespace mongesym {

Rational make_rational(long numerator, long denominator)
{
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

namespace {

std::optional<Integer> integer_root(const Integer& value, unsigned long k)
{
    if (value < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = integer_root(-value, k);
        if (!r) return std::nullopt;
        return Integer(-*r);
    }
    Integer root;
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), k) == 0) return std::nullopt;
    return root;
}

Integer integer_pow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

} // namespace

std::optional<Rational> rational_root(const Rational& value, unsigned long k)
{
    if (k == 0) return std::nullopt;
    auto num = integer_root(value.get_num(), k);
    if (!num) return std::nullopt;
    auto den = integer_root(value.get_den(), k);
    if (!den) return std::nullopt;
    Rational r(*num, *den);
    r.canonicalize();
    return r;
}

std::optional<Rational> rational_power(const Rational& value, const Rational& exponent)
{
    if (exponent == 0) return Rational(1);
    if (value == 0) {
        if (exponent > 0) return Rational(0);
        return std::nullopt;
    }
    Integer enumer = abs(exponent.get_num());
    if (!enumer.fits_ulong_p() || !exponent.get_den().fits_ulong_p()) return std::nullopt;
    auto root = rational_root(value, exponent.get_den().get_ui());
    if (!root) return std::nullopt;
    unsigned long e = enumer.get_ui();
    Rational r(integer_pow(root->get_num(), e), integer_pow(root->get_den(), e));
    r.canonicalize();
    if (exponent < 0) r = 1 / r;
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!valid_int(s, true)) throw std::invalid_argument("not a rational: " + s);
        if (s[0] == '+') s.erase(0, 1);
        return Rational(Integer(s));
    }
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!valid_int(n, true) || !valid_int(d, false)) throw std::invalid_argument("not a rational: " + s);
    if (n[0] == '+') n.erase(0, 1);
    Integer den(d);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational q(Integer(n), den);
    q.canonicalize();
    return q;
}

} // namespace mongesym
