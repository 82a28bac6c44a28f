#include "mongesym/sparse.hpp"

#include "mongesym/error.hpp"

#include <algorithm>
#include <numeric>

namespace mongesym {

namespace {

void make_primitive(SparseRow& row)
{
    if (row.empty()) return;
    Integer g = 0;
    for (const auto& v : row.values) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    bool negate = row.values.front() < 0;
    if (g != 1 || negate) {
        if (negate) g = -g;
        for (auto& v : row.values) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

/// a * row - b * pivot, both sorted.
SparseRow combine(const Integer& a, const SparseRow& row, const Integer& b, const SparseRow& pivot)
{
    SparseRow out;
    out.columns.reserve(row.size() + pivot.size());
    out.values.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    Integer tmp;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row.columns[i] < pivot.columns[j])) {
            out.columns.push_back(row.columns[i]);
            out.values.push_back(a * row.values[i]);
            ++i;
        } else if (i == row.size() || pivot.columns[j] < row.columns[i]) {
            out.columns.push_back(pivot.columns[j]);
            out.values.push_back(-b * pivot.values[j]);
            ++j;
        } else {
            tmp = a * row.values[i] - b * pivot.values[j];
            if (tmp != 0) {
                out.columns.push_back(row.columns[i]);
                out.values.push_back(tmp);
            }
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

SparseRow primitive_row(std::vector<std::pair<std::uint32_t, Rational>> entries)
{
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Integer l = 1;
    for (const auto& [c, q] : entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    SparseRow row;
    for (std::size_t k = 0; k < entries.size();) {
        const std::uint32_t c = entries[k].first;
        Integer v = 0;
        for (; k < entries.size() && entries[k].first == c; ++k) v += entries[k].second.get_num() * (l / entries[k].second.get_den());
        if (v == 0) continue;
        row.columns.push_back(c);
        row.values.push_back(std::move(v));
    }
    make_primitive(row);
    return row;
}

Echelon::Echelon(std::size_t columns) : columns_(columns), pivot_of_(columns, -1) {}

bool Echelon::insert(SparseRow row)
{
    while (!row.empty()) {
        const std::uint32_t lead = row.columns.front();
        if (lead >= columns_) throw Error("Echelon: column out of range");
        const std::int64_t p = pivot_of_[lead];
        if (p < 0) {
            make_primitive(row);
            pivot_of_[lead] = static_cast<std::int64_t>(rows_.size());
            rows_.push_back(std::move(row));
            return true;
        }
        const SparseRow& pivot = rows_[static_cast<std::size_t>(p)];
        Integer g;
        mpz_gcd(g.get_mpz_t(), pivot.values.front().get_mpz_t(), row.values.front().get_mpz_t());
        Integer a = pivot.values.front() / g, b = row.values.front() / g;
        row = combine(a, row, b, pivot);
        make_primitive(row);
    }
    return false;
}

void Echelon::insert_all(std::vector<SparseRow> rows)
{
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a].size() != rows[b].size()) return rows[a].size() < rows[b].size();
        if (rows[a].empty()) return false;
        int c = mpz_cmpabs(rows[a].values.front().get_mpz_t(), rows[b].values.front().get_mpz_t());
        return c < 0;
    });
    for (auto i : order) insert(std::move(rows[i]));
}

std::vector<const SparseRow*> Echelon::rows_from(std::size_t first_column) const
{
    std::vector<std::pair<std::uint32_t, const SparseRow*>> found;
    for (const auto& r : rows_)
        if (r.columns.front() >= first_column) found.emplace_back(r.columns.front(), &r);
    std::sort(found.begin(), found.end());
    std::vector<const SparseRow*> out;
    for (const auto& [c, r] : found) out.push_back(r);
    return out;
}

std::size_t Echelon::pivots_from(std::size_t first_column) const
{
    std::size_t n = 0;
    for (std::size_t c = first_column; c < columns_; ++c)
        if (pivot_of_[c] >= 0) ++n;
    return n;
}

Matrix sparse_nullspace(const std::vector<const SparseRow*>& rows, std::size_t first, std::size_t columns)
{
    const std::size_t width = columns - first;
    std::vector<const SparseRow*> sorted = rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const SparseRow* a, const SparseRow* b) { return a->columns.front() > b->columns.front(); });
    std::vector<bool> is_pivot(width, false);
    for (const SparseRow* r : sorted) {
        if (r->columns.front() < first) throw Error("sparse_nullspace: row reaches below the first column");
        is_pivot[r->columns.front() - first] = true;
    }
    // The reduced-echelon basis vector for free column f is the null vector
    // with v_f = 1 and every other free entry 0; back-substitution finds it.
    Matrix out;
    for (std::size_t f = 0; f < width; ++f) {
        if (is_pivot[f]) continue;
        Vector v = unit_vector(width, f);
        for (const SparseRow* r : sorted) {
            Rational s = 0;
            for (std::size_t k = 1; k < r->size(); ++k) {
                const Rational& x = v[r->columns[k] - first];
                if (x != 0) s += x * r->values[k];
            }
            v[r->columns.front() - first] = -s / r->values.front();
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace mongesym
