#pragma once

#include "mongesym/expr.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mongesym {

/// A vector field sum_i a_i d/du_i on one chart; one coefficient per chart
/// coordinate, in chart order.
class VectorField {
public:
    explicit VectorField(Chart chart = Chart::J20);
    VectorField(Chart chart, std::vector<Expr> coefficients);

    /// The coordinate field d/dc.
    static VectorField coordinate(Chart chart, Coord c);

    Chart chart() const { return chart_; }
    const std::vector<Expr>& coefficients() const { return coefficients_; }
    const Expr& operator[](Coord c) const;
    void set(Coord c, Expr value);

    bool is_zero() const;

    /// Directional derivative V(f).
    Expr apply(const Expr& f) const;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);

    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator-(const VectorField& a);
    friend VectorField operator*(const Rational& c, const VectorField& v);
    /// Multiplication by a function.
    friend VectorField operator*(const Expr& f, const VectorField& v);
    friend bool operator==(const VectorField& a, const VectorField& b) = default;

private:
    Chart chart_;
    std::vector<Expr> coefficients_;
};

/// [V, W]_i = V(W_i) - W(V_i).
VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// Human-readable "x*d/dy + d/dy1 + 1/2*x^2*d/dz".
std::string to_string(const VectorField& v);

/// {"chart": "J20", "coefficients": {"x": "...", ...}} with every chart
/// coordinate present, in chart order.
nlohmann::ordered_json to_json(const VectorField& v);

/// Inverse of to_json; missing coordinates default to zero. Throws
/// ParseError / mongesym::Error on malformed input.
VectorField vector_field_from_json(const nlohmann::json& j);

} // namespace mongesym
