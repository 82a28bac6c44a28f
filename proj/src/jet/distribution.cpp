#include "mongesym/distribution.hpp"

#include "mongesym/error.hpp"

#include <algorithm>

namespace mongesym {

namespace {

Expr var(Coord c)
{
    return Expr::variable(Chart::J20, c);
}

void add_locus(std::vector<std::string>& loci, std::string entry)
{
    if (std::find(loci.begin(), loci.end(), entry) == loci.end()) loci.push_back(std::move(entry));
}

} // namespace

Distribution2 distribution_from_monge(const MongeEquation& m)
{
    if (m.rhs.chart() != Chart::J20) throw ChartMismatch("Monge right-hand side must live on J20");
    VectorField x2 = VectorField::coordinate(Chart::J20, Coord::x);
    x2.set(Coord::y, var(Coord::y1));
    x2.set(Coord::y1, var(Coord::y2));
    x2.set(Coord::z, m.rhs);
    return Distribution2{m, VectorField::coordinate(Chart::J20, Coord::y2), std::move(x2)};
}

Expr genericity_hessian(const MongeEquation& m)
{
    return differentiate(differentiate(m.rhs, Coord::y2), Coord::y2);
}

std::array<VectorField, 5> frame_fields(const Distribution2& d)
{
    VectorField x3 = lie_bracket(d.x1, d.x2);
    VectorField x4 = lie_bracket(d.x1, x3);
    VectorField x5 = lie_bracket(d.x2, x3);
    return {d.x1, d.x2, x3, x4, x5};
}

Expr determinant(const std::vector<std::vector<Expr>>& rows, Chart chart)
{
    const std::size_t n = rows.size();
    if (n == 0) return Expr::constant(chart, 1);
    for (const auto& r : rows)
        if (r.size() != n) throw Error("determinant of a non-square matrix");
    if (n == 1) return rows[0][0];
    Expr total(chart);
    for (std::size_t col = 0; col < n; ++col) {
        if (rows[0][col].is_zero()) continue;
        std::vector<std::vector<Expr>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Expr> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(rows[r][c]);
            minor.push_back(std::move(row));
        }
        Expr term = rows[0][col] * determinant(minor, chart);
        if (col % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

Expr frame_determinant(const Distribution2& d)
{
    auto frame = frame_fields(d);
    std::vector<std::vector<Expr>> rows;
    for (const auto& f : frame) rows.push_back(f.coefficients());
    return determinant(rows, Chart::J20);
}

GenericityReport genericity_report(const MongeEquation& m)
{
    GenericityReport r;
    r.hessian = genericity_hessian(m);
    r.determinant = frame_determinant(distribution_from_monge(m));
    if (r.determinant == r.hessian)
        r.determinant_sign = 1;
    else if (r.determinant == -r.hessian)
        r.determinant_sign = -1;
    r.generic = !r.hessian.is_zero();
    if (!r.generic) {
        r.excluded_locus.push_back("everywhere");
        return r;
    }
    if (r.hessian.is_constant()) return r;

    if (r.hessian.size() > 1) add_locus(r.excluded_locus, to_string(r.hessian) + " = 0");
    for (const auto& t : r.hessian.terms()) {
        if (r.hessian.size() == 1)
            for (Coord c : kAllCoords)
                if (t.monomial[c] != 0) add_locus(r.excluded_locus, std::string(name(c)) + " = 0");
        for (const auto& a : t.atoms) {
            switch (a.kind) {
            case Atom::Kind::Power:
                if (r.hessian.size() == 1 || a.exponent < 0) add_locus(r.excluded_locus, to_string(a.arg()) + " = 0");
                if (mpz_even_p(a.exponent.get_den_mpz_t())) add_locus(r.excluded_locus, to_string(a.arg()) + " < 0");
                break;
            case Atom::Kind::Ln:
                add_locus(r.excluded_locus, to_string(a.arg()) + " <= 0");
                if (r.hessian.size() == 1) add_locus(r.excluded_locus, to_string(a.arg()) + " = 1");
                break;
            case Atom::Kind::Exp: break;
            }
        }
    }
    return r;
}

std::array<Expr, 3> membership_residuals(const VectorField& v, const Distribution2& d)
{
    if (v.chart() != Chart::J20) throw ChartMismatch("membership test needs a J20 vector field");
    const Expr& vx = v[Coord::x];
    return {v[Coord::y] - var(Coord::y1) * vx, v[Coord::y1] - var(Coord::y2) * vx, v[Coord::z] - d.equation.rhs * vx};
}

std::optional<Witness> in_distribution(const VectorField& v, const Distribution2& d)
{
    auto residuals = membership_residuals(v, d);
    for (const auto& r : residuals)
        if (!r.is_zero()) return std::nullopt;
    return Witness{v[Coord::y2], v[Coord::x]};
}

SymmetryCheck is_symmetry(const VectorField& s, const Distribution2& d)
{
    auto r1 = membership_residuals(lie_bracket(s, d.x1), d);
    auto r2 = membership_residuals(lie_bracket(s, d.x2), d);
    SymmetryCheck check;
    std::copy(r1.begin(), r1.end(), check.residuals.begin());
    std::copy(r2.begin(), r2.end(), check.residuals.begin() + 3);
    check.holds = std::all_of(check.residuals.begin(), check.residuals.end(), [](const Expr& e) { return e.is_zero(); });
    return check;
}

VectorField project_to_J2(const VectorField& v)
{
    if (v.chart() != Chart::J20) throw ChartMismatch("projection expects a J20 vector field");
    std::vector<Expr> out;
    for (Coord c : coordinates(Chart::J2)) {
        if (v[c].depends_on(Coord::z))
            throw ProjectionError("coefficient of d/d" + std::string(name(c)) +
                                  " depends on z; the pushforward to J2 is undefined");
        out.push_back(v[c].on_chart(Chart::J2));
    }
    return VectorField(Chart::J2, std::move(out));
}

VectorField prolong_plane_field(const Expr& xi, const Expr& eta)
{
    Expr a = xi.on_chart(Chart::Plane).on_chart(Chart::J2);
    Expr b = eta.on_chart(Chart::Plane).on_chart(Chart::J2);
    Expr y1 = Expr::variable(Chart::J2, Coord::y1);
    Expr y2 = Expr::variable(Chart::J2, Coord::y2);
    auto total_dx = [&](const Expr& f) {
        return differentiate(f, Coord::x) + y1 * differentiate(f, Coord::y) + y2 * differentiate(f, Coord::y1);
    };
    Expr dxi = total_dx(a);
    Expr eta1 = total_dx(b) - y1 * dxi;
    Expr eta2 = total_dx(eta1) - y2 * dxi;
    return VectorField(Chart::J2, {a, b, eta1, eta2});
}

} // namespace mongesym
