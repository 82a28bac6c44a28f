#include "mongesym/solver.hpp"

#include <map>

namespace mongesym {

Matrix brute_force_nullspace(const MongeEquation& m, const Ansatz& ansatz)
{
    Distribution2 d = distribution_from_monge(m);
    const std::size_t n = ansatz.unknowns.size();
    std::map<std::pair<int, std::string>, Vector> rows;
    for (std::size_t u = 0; u < n; ++u) {
        VectorField e(Chart::J20);
        e.set(ansatz.unknowns[u].component, ansatz.unknowns[u].function);
        auto check = is_symmetry(e, d);
        for (int r = 0; r < 6; ++r)
            for (const auto& t : check.residuals[static_cast<std::size_t>(r)].terms()) {
                Term key{Rational(1), t.monomial, t.atoms};
                auto& row = rows[{r, to_string(Expr::from_terms(Chart::J20, {key}))}];
                if (row.empty()) row = zero_vector(n);
                row[u] += t.coefficient;
            }
    }
    Matrix eqs;
    for (auto& [key, row] : rows) eqs.push_back(std::move(row));
    return row_basis(nullspace(eqs, n));
}

} // namespace mongesym
