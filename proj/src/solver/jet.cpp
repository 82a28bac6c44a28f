#include "mongesym/solver.hpp"

#include "mongesym/error.hpp"

#include <algorithm>
#include <map>

namespace mongesym {

namespace {

Expr var(Coord c)
{
    return Expr::variable(Chart::J20, c);
}

Rational factorial(int n)
{
    Rational f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

std::vector<Monomial> monomials_of_degree(int degree)
{
    std::vector<Monomial> out;
    Monomial m;
    auto rec = [&](auto&& self, std::size_t slot, int budget) -> void {
        if (slot + 1 == kCoordCount) {
            m.exponents[slot] = budget;
            out.push_back(m);
            m.exponents[slot] = 0;
            return;
        }
        for (int e = 0; e <= budget; ++e) {
            m.exponents[slot] = e;
            self(self, slot + 1, budget - e);
        }
        m.exponents[slot] = 0;
    };
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
    return out;
}

/// Unknowns t^a d/du_i with |a| <= order, highest degree first.
std::vector<AnsatzUnknown> jet_unknowns(int order)
{
    std::vector<AnsatzUnknown> out;
    for (int d = order; d >= 0; --d) {
        auto ms = monomials_of_degree(d);
        for (Coord c : kAllCoords)
            for (const auto& m : ms) out.push_back({c, Expr::monomial(Chart::J20, 1, m)});
    }
    return out;
}

std::size_t jet_unknown_count(int order)
{
    std::size_t n = 0;
    for (int d = 0; d <= order; ++d) n += monomials_of_degree(d).size();
    return n * kCoordCount;
}

ResidualContext jet_context(const MongeEquation& m, const Assignment& p, int order)
{
    auto shifted = [&](Coord c) { return var(c) + Expr::constant(Chart::J20, p.at(c)); };
    ResidualContext ctx;
    ctx.y1 = shifted(Coord::y1);
    ctx.y2 = shifted(Coord::y2);
    ctx.f = taylor(m.rhs, p, order);
    ctx.truncate = order - 1;
    for (Coord c : kAllCoords) ctx.df[static_cast<std::size_t>(index(c))] = differentiate(ctx.f, c);
    return ctx;
}

/// Coordinates of a polynomial field of order <= J in the basis t^a d/du_i.
Vector jet_vector(const VectorField& v, const std::map<std::pair<int, std::array<int, kCoordCount>>, std::size_t>& slots)
{
    Vector out = zero_vector(slots.size());
    for (Coord c : kAllCoords)
        for (const auto& t : v[c].terms()) {
            if (!t.atoms.empty()) throw Error("jet fields must be polynomial");
            auto it = slots.find({index(c), t.monomial.exponents});
            if (it == slots.end()) throw Error("jet field exceeds the jet order");
            out[it->second] = t.coefficient;
        }
    return out;
}

VectorField truncate(const VectorField& v, int order)
{
    std::vector<Expr> comps;
    for (const auto& e : v.coefficients()) comps.push_back(truncate(e, order));
    return VectorField(v.chart(), std::move(comps));
}

} // namespace

Expr taylor(const Expr& f, const Assignment& p, int order)
{
    if (f.chart() != Chart::J20) throw ChartMismatch("taylor expects a J20 expression");
    Expr out(Chart::J20);
    Monomial alpha;
    auto rec = [&](auto&& self, const Expr& g, std::size_t from, int degree) -> void {
        Rational denom = 1;
        for (int e : alpha.exponents) denom *= factorial(e);
        Rational value = substitute(g, p);
        if (value != 0) out += Expr::monomial(Chart::J20, value / denom, alpha);
        if (degree == order) return;
        for (std::size_t s = from; s < kCoordCount; ++s) {
            Coord c = kAllCoords[s];
            if (!g.depends_on(c)) continue;
            Expr dg = differentiate(g, c);
            if (dg.is_zero()) continue;
            alpha.exponents[s] += 1;
            self(self, dg, s, degree + 1);
            alpha.exponents[s] -= 1;
        }
    };
    rec(rec, f, 0, 0);
    return out;
}

Assignment default_base_point()
{
    return {{Coord::x, 0}, {Coord::y, 0}, {Coord::y1, 0}, {Coord::y2, 1}, {Coord::z, 0}};
}

JetSolution solve_jets(const MongeEquation& m, const Assignment& base_point, int order, int jet_order, unsigned threads)
{
    if (jet_order < 0 || order < jet_order + 2) throw Error("jet solve needs order >= jet_order + 2");
    for (Coord c : kAllCoords)
        if (!base_point.count(c)) throw Error("base point is missing coordinate " + std::string(name(c)));

    auto unknowns = jet_unknowns(order);
    auto sys = determining_system(jet_context(m, base_point, order), unknowns, threads);
    Echelon e(unknowns.size());
    e.insert_all(std::move(sys.rows));

    const std::size_t n = unknowns.size();
    const std::size_t low = jet_unknown_count(jet_order), next = jet_unknown_count(jet_order + 1);
    JetSolution s;
    s.order = order;
    s.jet_order = jet_order;
    s.unknowns = n;
    s.rows = sys.provenance.size();
    s.dimension = low - e.pivots_from(n - low);
    s.next_dimension = next - e.pivots_from(n - next);

    for (const auto& v : sparse_nullspace(e.rows_from(n - next), n - next, n)) {
        std::vector<Expr> comps(kCoordCount, Expr(Chart::J20));
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0) continue;
            const auto& u = unknowns[n - next + k];
            comps[static_cast<std::size_t>(index(u.component))] += v[k] * u.function;
        }
        s.jets.emplace_back(Chart::J20, std::move(comps));
    }
    return s;
}

StructureConstants jet_structure_constants(const JetSolution& s)
{
    if (s.next_dimension != s.dimension || s.jets.size() != s.dimension)
        throw Error("jet structure constants need the (J+1)-jets to be determined by the J-jets");
    const int j = s.jet_order;
    std::map<std::pair<int, std::array<int, kCoordCount>>, std::size_t> slots;
    for (int d = 0; d <= j; ++d)
        for (const auto& m : monomials_of_degree(d))
            for (Coord c : kAllCoords) slots.emplace(std::make_pair(index(c), m.exponents), slots.size());

    Matrix low;
    for (const auto& jet : s.jets) low.push_back(jet_vector(truncate(jet, j), slots));
    if (rank(low) != low.size()) throw Error("truncated jets are dependent");

    StructureConstants c(s.jets.size());
    for (std::size_t a = 0; a < s.jets.size(); ++a)
        for (std::size_t b = a + 1; b < s.jets.size(); ++b) {
            VectorField br = truncate(lie_bracket(s.jets[a], s.jets[b]), j);
            auto coords = coordinates_in(low, jet_vector(br, slots));
            if (!coords) throw Error("bracket of jets leaves the jet solution space");
            c.set_bracket(a, b, *coords);
        }
    return c;
}

bool jets_verified(const MongeEquation& m, const Assignment& base_point, const JetSolution& s)
{
    ResidualContext ctx = jet_context(m, base_point, s.jet_order + 1);
    for (const auto& jet : s.jets) {
        std::array<Expr, 6> total;
        total.fill(Expr(Chart::J20));
        for (Coord c : kAllCoords) {
            auto r = unit_residuals(ctx, c, jet[c]);
            for (std::size_t k = 0; k < 6; ++k) total[k] += r[k];
        }
        for (const auto& e : total)
            if (!e.is_zero()) return false;
    }
    return true;
}

} // namespace mongesym
