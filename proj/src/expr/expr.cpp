#include "mongesym/expr.hpp"

#include "mongesym/error.hpp"
#include "normalize.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace mongesym {

int Monomial::degree() const
{
    return std::accumulate(exponents.begin(), exponents.end(), 0);
}

bool Monomial::is_one() const
{
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < r.exponents.size(); ++i) r.exponents[i] = a.exponents[i] + b.exponents[i];
    return r;
}

int compare(const Monomial& a, const Monomial& b)
{
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int i = kCoordCount - 1; i >= 0; --i) {
        auto k = static_cast<std::size_t>(i);
        if (a.exponents[k] != b.exponents[k]) return a.exponents[k] < b.exponents[k] ? -1 : 1;
    }
    return 0;
}

int compare(const Atom& a, const Atom& b)
{
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.argument != b.argument) {
        if (int c = compare(*a.argument, *b.argument)) return c;
    }
    if (a.exponent != b.exponent) return a.exponent < b.exponent ? -1 : 1;
    return 0;
}

int compare_key(const Term& a, const Term& b)
{
    if (int c = compare(a.monomial, b.monomial)) return c;
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.atoms.size(); ++i)
        if (int c = compare(a.atoms[i], b.atoms[i])) return c;
    return 0;
}

int compare(const Expr& a, const Expr& b)
{
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (int c = compare_key(ta[i], tb[i])) return c;
        if (ta[i].coefficient != tb[i].coefficient) return ta[i].coefficient < tb[i].coefficient ? -1 : 1;
    }
    return 0;
}

Expr Expr::constant(Chart chart, const Rational& value)
{
    Expr e(chart);
    if (value != 0) e.terms_.push_back(Term{value, {}, {}});
    return e;
}

Expr Expr::variable(Chart chart, Coord c)
{
    if (!contains(chart, c))
        throw ChartMismatch("coordinate " + std::string(name(c)) + " is not on chart " + std::string(name(chart)));
    Monomial m;
    m[c] = 1;
    return monomial(chart, 1, m);
}

Expr Expr::monomial(Chart chart, const Rational& coefficient, const Monomial& m)
{
    Expr e(chart);
    if (coefficient != 0) e.terms_.push_back(Term{coefficient, m, {}});
    return e;
}

Expr Expr::from_terms(Chart chart, std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare_key(a, b) > 0; });
    Expr e(chart);
    e.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!e.terms_.empty() && compare_key(e.terms_.back(), t) == 0) {
            e.terms_.back().coefficient += t.coefficient;
            if (e.terms_.back().coefficient == 0) e.terms_.pop_back();
        } else if (t.coefficient != 0) {
            e.terms_.push_back(std::move(t));
        }
    }
    return e;
}

bool Expr::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].atoms.empty() && terms_[0].monomial.is_one());
}

std::optional<Rational> Expr::constant_value() const
{
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) return std::nullopt;
    return terms_[0].coefficient;
}

bool Expr::is_polynomial() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.atoms.empty(); });
}

bool Expr::depends_on(Coord c) const
{
    for (const auto& t : terms_) {
        if (t.monomial[c] != 0) return true;
        for (const auto& a : t.atoms)
            if (a.arg().depends_on(c)) return true;
    }
    return false;
}

int Expr::max_degree() const
{
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
}

Expr Expr::on_chart(Chart chart) const
{
    for (Coord c : kAllCoords)
        if (!contains(chart, c) && depends_on(c))
            throw ChartMismatch("expression depends on " + std::string(name(c)) + ", which is not on chart " +
                                std::string(name(chart)));
    return retag_unchecked(*this, chart);
}

Expr retag_unchecked(const Expr& a, Chart chart)
{
    Expr r = a;
    r.chart_ = chart;
    return r;
}

namespace {

void require_same_chart(const Expr& a, const Expr& b)
{
    if (a.chart() != b.chart())
        throw ChartMismatch("chart mismatch: " + std::string(name(a.chart())) + " vs " + std::string(name(b.chart())));
}

} // namespace

Expr& Expr::operator+=(const Expr& other)
{
    require_same_chart(*this, other);
    if (other.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = other.terms_;
        return *this;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < other.terms_.size()) {
        int c = compare_key(terms_[i], other.terms_[j]);
        if (c > 0) {
            merged.push_back(std::move(terms_[i++]));
        } else if (c < 0) {
            merged.push_back(other.terms_[j++]);
        } else {
            Rational s = terms_[i].coefficient + other.terms_[j].coefficient;
            if (s != 0) {
                merged.push_back(std::move(terms_[i]));
                merged.back().coefficient = std::move(s);
            }
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) merged.push_back(std::move(terms_[i]));
    for (; j < other.terms_.size(); ++j) merged.push_back(other.terms_[j]);
    terms_ = std::move(merged);
    return *this;
}

Expr& Expr::operator-=(const Expr& other)
{
    return *this += -other;
}

Expr& Expr::operator*=(const Expr& other)
{
    *this = *this * other;
    return *this;
}

Expr& Expr::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coefficient *= c;
    return *this;
}

Expr operator-(Expr a)
{
    for (auto& t : a.terms_) t.coefficient = -t.coefficient;
    return a;
}

Expr operator*(const Expr& a, const Expr& b)
{
    require_same_chart(a, b);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            if (ta.atoms.empty() && tb.atoms.empty()) {
                out.push_back(Term{ta.coefficient * tb.coefficient, ta.monomial * tb.monomial, {}});
                continue;
            }
            Term raw{ta.coefficient * tb.coefficient, ta.monomial * tb.monomial, ta.atoms};
            raw.atoms.insert(raw.atoms.end(), tb.atoms.begin(), tb.atoms.end());
            Expr p = detail::normalize_term(a.chart_, std::move(raw));
            for (auto& t : p.terms_) out.push_back(std::move(t));
        }
    }
    return Expr::from_terms(a.chart_, std::move(out));
}

bool operator==(const Expr& a, const Expr& b)
{
    return a.chart_ == b.chart_ && compare(a, b) == 0;
}

Expr scale(const Expr& a, const Rational& c)
{
    return a * c;
}

Expr truncate(const Expr& a, int max_degree)
{
    std::vector<Term> kept;
    for (const auto& t : a.terms())
        if (t.monomial.degree() <= max_degree) kept.push_back(t);
    return Expr::from_terms(a.chart(), std::move(kept));
}

bool is_zero(const Expr& a)
{
    return a.is_zero();
}

bool equals(const Expr& a, const Expr& b)
{
    return (a - b).is_zero();
}

} // namespace mongesym
