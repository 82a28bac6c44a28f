#include "mongesym/presentation.hpp"

#include "mongesym/error.hpp"

#include <map>
#include <random>

namespace mongesym {

namespace {

void require_common_chart(const VectorField& v, const std::vector<VectorField>& basis)
{
    for (const auto& b : basis)
        if (b.chart() != v.chart()) throw ChartMismatch("express_in_basis: fields on different charts");
}

bool residual_vanishes(const VectorField& v, const std::vector<VectorField>& basis, const Vector& c)
{
    VectorField r = v;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c[i] != 0) r -= c[i] * basis[i];
    return r.is_zero();
}

/// Rows of sampled coefficient values: one row per (point, coordinate), one
/// column per basis field, plus the value of V.
std::optional<Vector> sampled_candidate(const VectorField& v, const std::vector<VectorField>& basis)
{
    const std::size_t n = basis.size();
    const auto coords = coordinates(v.chart());
    const std::size_t attempts = 8 + 4 * n;
    Matrix a;
    Vector rhs;
    std::size_t admissible = 0;
    for (const auto& point : sample_points(attempts)) {
        Matrix rows;
        Vector values;
        try {
            for (Coord c : coords) {
                Vector row(n);
                for (std::size_t i = 0; i < n; ++i) row[i] = substitute(basis[i][c], point);
                values.push_back(substitute(v[c], point));
                rows.push_back(std::move(row));
            }
        } catch (const EvaluationError&) {
            continue;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            a.push_back(std::move(rows[r]));
            rhs.push_back(values[r]);
        }
        if (++admissible >= 2 && rank(a) == n) break;
    }
    if (rank(a) < n) return std::nullopt;
    auto c = solve(a, rhs, n);
    if (!c) return Vector{}; // inconsistent: V is not in the span
    return c;
}

struct KeyLess {
    bool operator()(const Term& a, const Term& b) const { return compare_key(a, b) < 0; }
};

std::optional<Vector> matched_candidate(const VectorField& v, const std::vector<VectorField>& basis)
{
    const std::size_t n = basis.size();
    Matrix a;
    Vector rhs;
    for (Coord c : coordinates(v.chart())) {
        std::map<Term, std::pair<Vector, Rational>, KeyLess> rows;
        auto row_for = [&](const Term& t) -> std::pair<Vector, Rational>& {
            auto it = rows.find(t);
            if (it == rows.end()) it = rows.emplace(t, std::make_pair(zero_vector(n), Rational(0))).first;
            return it->second;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& t : basis[i][c].terms()) row_for(t).first[i] = t.coefficient;
        for (const auto& t : v[c].terms()) row_for(t).second = t.coefficient;
        for (auto& [key, row] : rows) {
            a.push_back(std::move(row.first));
            rhs.push_back(row.second);
        }
    }
    if (a.empty()) return zero_vector(n);
    return solve(a, rhs, n);
}

} // namespace

std::vector<Assignment> sample_points(std::size_t count)
{
    std::mt19937 rng(20240611u);
    auto draw = [&](int span) { return static_cast<long>(rng() % static_cast<unsigned>(2 * span + 1)) - span; };
    std::vector<Assignment> out;
    for (std::size_t i = 0; i < count; ++i) {
        Assignment p;
        for (Coord c : kAllCoords) {
            if (c == Coord::y2) {
                long k = 1 + static_cast<long>(rng() % 4u);
                long d = 1 + static_cast<long>(rng() % 2u);
                p[c] = make_rational(k * k * k, d * d * d);
            } else {
                long num = draw(7);
                long den = 1 + static_cast<long>(rng() % 3u);
                p[c] = make_rational(num, den);
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::optional<Vector> express_in_basis(const VectorField& v, const std::vector<VectorField>& basis)
{
    require_common_chart(v, basis);
    if (basis.empty()) return v.is_zero() ? std::optional<Vector>(Vector{}) : std::nullopt;
    if (v.is_zero()) return zero_vector(basis.size());

    auto candidate = sampled_candidate(v, basis);
    if (candidate && candidate->empty()) return std::nullopt;
    if (!candidate) candidate = matched_candidate(v, basis);
    if (!candidate || !residual_vanishes(v, basis, *candidate)) return std::nullopt;
    return candidate;
}

LieAlgebraPresentation close_under_bracket(const std::vector<VectorField>& fields, std::size_t cap)
{
    std::vector<VectorField> basis;
    auto add = [&](const VectorField& f) -> Vector {
        if (auto c = express_in_basis(f, basis)) return *c;
        if (basis.size() + 1 > cap)
            throw CapExceeded("bracket closure exceeds the dimension cap of " + std::to_string(cap));
        basis.push_back(f);
        return unit_vector(basis.size(), basis.size() - 1);
    };
    for (const auto& f : fields) {
        if (!basis.empty() && f.chart() != basis.front().chart())
            throw ChartMismatch("close_under_bracket: fields on different charts");
        add(f);
    }

    std::map<std::pair<std::size_t, std::size_t>, Vector> brackets;
    for (std::size_t j = 1; j < basis.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) brackets[{i, j}] = add(lie_bracket(basis[i], basis[j]));

    const std::size_t n = basis.size();
    LieAlgebraPresentation p{basis, StructureConstants(n)};
    for (auto& [ij, c] : brackets) {
        c.resize(n, Rational(0));
        p.constants.set_bracket(ij.first, ij.second, c);
    }
    return p;
}

LieAlgebraPresentation presentation_of(const std::vector<VectorField>& basis)
{
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<VectorField> others(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(i));
        if (express_in_basis(basis[i], others)) throw Error("presentation_of: basis fields are linearly dependent");
    }
    LieAlgebraPresentation p{basis, StructureConstants(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto c = express_in_basis(lie_bracket(basis[i], basis[j]), basis);
            if (!c) throw Error("presentation_of: bracket leaves the span");
            p.constants.set_bracket(i, j, *c);
        }
    return p;
}

} // namespace mongesym
