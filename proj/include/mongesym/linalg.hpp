#pragma once

// Small dense exact linear algebra over Q. Vectors are rows.

#include "mongesym/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mongesym {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);

/// In-place reduced row echelon form; zero rows are removed. Returns the pivot
/// column of each remaining row.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of the row space, in reduced echelon form.
Matrix row_basis(Matrix rows);

/// Basis of {x : A x = 0}, one vector per free column (that column set to 1).
Matrix nullspace(const Matrix& a, std::size_t columns);

/// A solution of A x = b with all free variables zero, if the system is
/// consistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b, std::size_t columns);

/// Coefficients c with sum_i c_i basis_i = v; basis rows must be independent.
std::optional<Vector> coordinates_in(const Matrix& basis, const Vector& v);

Matrix transpose(const Matrix& m, std::size_t columns);
Matrix multiply(const Matrix& a, const Matrix& b, std::size_t columns);

/// Counts of positive, negative and zero entries after exact congruence
/// diagonalisation of a symmetric matrix.
struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

Signature signature(Matrix symmetric);

/// Indices i with the subspace equal to span{e_i}, when it is spanned by
/// coordinate vectors.
std::optional<std::vector<std::size_t>> coordinate_indices(const Matrix& subspace_rref);

std::string to_string(const Vector& v);

} // namespace mongesym
