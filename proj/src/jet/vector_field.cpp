#include "mongesym/vector_field.hpp"

#include "mongesym/error.hpp"

#include <algorithm>

namespace mongesym {

namespace {

std::size_t slot(Chart chart, Coord c)
{
    if (!contains(chart, c))
        throw ChartMismatch("coordinate " + std::string(name(c)) + " is not on chart " + std::string(name(chart)));
    return static_cast<std::size_t>(index(c));
}

void require_same_chart(const VectorField& a, const VectorField& b)
{
    if (a.chart() != b.chart())
        throw ChartMismatch("vector fields on different charts: " + std::string(name(a.chart())) + " vs " +
                            std::string(name(b.chart())));
}

} // namespace

VectorField::VectorField(Chart chart)
    : chart_(chart), coefficients_(static_cast<std::size_t>(dimension(chart)), Expr(chart))
{
}

VectorField::VectorField(Chart chart, std::vector<Expr> coefficients) : chart_(chart), coefficients_(std::move(coefficients))
{
    if (coefficients_.size() != static_cast<std::size_t>(dimension(chart)))
        throw Error("vector field on " + std::string(name(chart)) + " needs " + std::to_string(dimension(chart)) +
                    " coefficients");
    for (const auto& e : coefficients_)
        if (e.chart() != chart) throw ChartMismatch("coefficient chart differs from vector field chart");
}

VectorField VectorField::coordinate(Chart chart, Coord c)
{
    VectorField v(chart);
    v.coefficients_[slot(chart, c)] = Expr::constant(chart, 1);
    return v;
}

const Expr& VectorField::operator[](Coord c) const
{
    return coefficients_[slot(chart_, c)];
}

void VectorField::set(Coord c, Expr value)
{
    if (value.chart() != chart_) throw ChartMismatch("coefficient chart differs from vector field chart");
    coefficients_[slot(chart_, c)] = std::move(value);
}

bool VectorField::is_zero() const
{
    return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr VectorField::apply(const Expr& f) const
{
    if (f.chart() != chart_) throw ChartMismatch("function and vector field on different charts");
    Expr out(chart_);
    for (Coord c : coordinates(chart_)) {
        const Expr& a = coefficients_[static_cast<std::size_t>(index(c))];
        if (a.is_zero() || !f.depends_on(c)) continue;
        out += a * differentiate(f, c);
    }
    return out;
}

VectorField& VectorField::operator+=(const VectorField& other)
{
    require_same_chart(*this, other);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other)
{
    require_same_chart(*this, other);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
    return *this;
}

VectorField operator-(const VectorField& a)
{
    VectorField r = a;
    for (auto& e : r.coefficients_) e = -e;
    return r;
}

VectorField operator*(const Rational& c, const VectorField& v)
{
    VectorField r = v;
    for (auto& e : r.coefficients_) e *= c;
    return r;
}

VectorField operator*(const Expr& f, const VectorField& v)
{
    VectorField r = v;
    for (auto& e : r.coefficients_) e = f * e;
    return r;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w)
{
    require_same_chart(v, w);
    std::vector<Expr> out;
    out.reserve(v.coefficients().size());
    for (std::size_t i = 0; i < v.coefficients().size(); ++i)
        out.push_back(v.apply(w.coefficients()[i]) - w.apply(v.coefficients()[i]));
    return VectorField(v.chart(), std::move(out));
}

std::string to_string(const VectorField& v)
{
    std::string out;
    for (Coord c : coordinates(v.chart())) {
        const Expr& a = v[c];
        if (a.is_zero()) continue;
        std::string d = "d/d" + std::string(name(c));
        std::string coef = to_string(a);
        std::string piece;
        if (coef == "1")
            piece = d;
        else if (coef == "-1")
            piece = "-" + d;
        else if (a.size() == 1)
            piece = coef + "*" + d;
        else
            piece = "(" + coef + ")*" + d;
        if (!out.empty()) {
            if (piece[0] == '-')
                piece = " - " + piece.substr(1);
            else
                piece = " + " + piece;
        }
        out += piece;
    }
    return out.empty() ? "0" : out;
}

nlohmann::ordered_json to_json(const VectorField& v)
{
    nlohmann::ordered_json j;
    j["chart"] = std::string(name(v.chart()));
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
    for (Coord c : coordinates(v.chart())) coeffs[std::string(name(c))] = to_string(v[c]);
    j["coefficients"] = coeffs;
    return j;
}

VectorField vector_field_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("chart") || !j.contains("coefficients"))
        throw Error("vector field JSON needs 'chart' and 'coefficients'");
    auto chart = chart_from_name(j.at("chart").get<std::string>());
    if (!chart) throw Error("unknown chart '" + j.at("chart").get<std::string>() + "'");
    VectorField v(*chart);
    for (const auto& [key, value] : j.at("coefficients").items()) {
        auto c = coord_from_name(key);
        if (!c || !contains(*chart, *c)) throw Error("coordinate '" + key + "' is not on chart " + std::string(name(*chart)));
        v.set(*c, parse(value.get<std::string>(), *chart));
    }
    return v;
}

} // namespace mongesym
