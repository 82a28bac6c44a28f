#pragma once

// Sparse homogeneous linear systems over Q, eliminated fraction-free over Z.

#include "mongesym/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mongesym {

/// Entries sorted by strictly increasing column.
struct SparseRow {
    std::vector<std::uint32_t> columns;
    std::vector<Integer> values;

    std::size_t size() const { return columns.size(); }
    bool empty() const { return columns.empty(); }
};

/// Scales a rational row to a primitive integer row (content 1, leading
/// entry positive). Entries may be unsorted; repeated columns are summed.
SparseRow primitive_row(std::vector<std::pair<std::uint32_t, Rational>> entries);

/// Row echelon form built incrementally: each inserted row is reduced
/// against the existing pivots on its leading entry only, then kept as a new
/// pivot row if nonzero. Pivot rows stay primitive.
class Echelon {
public:
    explicit Echelon(std::size_t columns);

    std::size_t columns() const { return columns_; }
    std::size_t rank() const { return rows_.size(); }

    /// Returns true if the row was independent of the current pivots.
    bool insert(SparseRow row);

    /// Inserts all rows, shortest first, ties broken by the magnitude of the
    /// leading entry and then by input position.
    void insert_all(std::vector<SparseRow> rows);

    /// Pivot rows whose pivot column is at least `first_column`; these only
    /// involve columns >= first_column.
    std::vector<const SparseRow*> rows_from(std::size_t first_column) const;

    std::size_t pivots_from(std::size_t first_column) const;

    const std::vector<SparseRow>& rows() const { return rows_; }

private:
    std::size_t columns_;
    std::vector<SparseRow> rows_;
    std::vector<std::int64_t> pivot_of_; // column -> row index or -1
};

/// Deterministic nullspace basis of the rows restricted to columns
/// [first, columns): reduced echelon form, one vector per free column with
/// that entry equal to 1, in increasing free-column order. Vectors are
/// indexed from `first`.
Matrix sparse_nullspace(const std::vector<const SparseRow*>& rows, std::size_t first, std::size_t columns);

} // namespace mongesym
