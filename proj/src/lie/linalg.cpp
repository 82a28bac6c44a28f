#include "mongesym/linalg.hpp"

#include "mongesym/error.hpp"

#include <utility>

namespace mongesym {

Vector zero_vector(std::size_t n)
{
    return Vector(n, Rational(0));
}

Vector unit_vector(std::size_t n, std::size_t i)
{
    Vector v = zero_vector(n);
    v.at(i) = 1;
    return v;
}

bool is_zero(const Vector& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::vector<std::size_t> rref(Matrix& m)
{
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m.front().size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t found = row;
        while (found < m.size() && m[found][col] == 0) ++found;
        if (found == m.size()) continue;
        std::swap(m[row], m[found]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

std::size_t rank(Matrix m)
{
    return rref(m).size();
}

Matrix row_basis(Matrix rows)
{
    rref(rows);
    return rows;
}

Matrix nullspace(const Matrix& a, std::size_t columns)
{
    Matrix m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(columns, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix out;
    for (std::size_t free = 0; free < columns; ++free) {
        if (is_pivot[free]) continue;
        Vector v = unit_vector(columns, free);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b, std::size_t columns)
{
    if (a.size() != b.size()) throw Error("solve: row count differs from right-hand side length");
    Matrix m;
    m.reserve(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        Vector row = a[r];
        row.push_back(b[r]);
        m.push_back(std::move(row));
    }
    auto pivots = rref(m);
    Vector x = zero_vector(columns);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == columns) return std::nullopt;
        x[pivots[r]] = m[r][columns];
    }
    return x;
}

std::optional<Vector> coordinates_in(const Matrix& basis, const Vector& v)
{
    const std::size_t n = basis.size();
    if (n == 0) return is_zero(v) ? std::optional<Vector>(Vector{}) : std::nullopt;
    return solve(transpose(basis, v.size()), v, n);
}

Matrix transpose(const Matrix& m, std::size_t columns)
{
    Matrix t(columns, zero_vector(m.size()));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < columns; ++c) t[c][r] = m[r][c];
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t columns)
{
    Matrix out(a.size(), zero_vector(columns));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < columns; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Signature signature(Matrix s)
{
    const std::size_t n = s.size();
    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        // Bring a nonzero diagonal entry to position k, creating one from an
        // off-diagonal pair if necessary.
        std::size_t p = k;
        while (p < n && s[p][p] == 0) ++p;
        if (p == n) {
            std::size_t i = n, j = n;
            for (std::size_t a = k; a < n && i == n; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    if (s[a][b] != 0) {
                        i = a;
                        j = b;
                        break;
                    }
            if (i == n) {
                sig.zero += n - k;
                return sig;
            }
            // row_i += row_j, col_i += col_j: new s_ii = s_ii + 2 s_ij + s_jj.
            for (std::size_t c = 0; c < n; ++c) s[i][c] += s[j][c];
            for (std::size_t r = 0; r < n; ++r) s[r][i] += s[r][j];
            p = i;
        }
        std::swap(s[k], s[p]);
        for (auto& row : s) std::swap(row[k], row[p]);
        const Rational d = s[k][k];
        // Schur complement of the pivot.
        for (std::size_t r = k + 1; r < n; ++r) {
            if (s[r][k] == 0) continue;
            Rational f = s[r][k] / d;
            for (std::size_t c = k + 1; c < n; ++c) s[r][c] -= f * s[k][c];
        }
        for (std::size_t r = k + 1; r < n; ++r) s[r][k] = s[k][r] = 0;
        if (d > 0)
            ++sig.positive;
        else
            ++sig.negative;
    }
    return sig;
}

std::optional<std::vector<std::size_t>> coordinate_indices(const Matrix& subspace_rref)
{
    std::vector<std::size_t> out;
    for (const auto& row : subspace_rref) {
        std::optional<std::size_t> at;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] == 0) continue;
            if (at || row[i] != 1) return std::nullopt;
            at = i;
        }
        if (!at) return std::nullopt;
        out.push_back(*at);
    }
    return out;
}

std::string to_string(const Vector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

} // namespace mongesym
