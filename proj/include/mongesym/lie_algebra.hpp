#pragma once

// Finite-dimensional Lie algebras given by structure constants over Q, and the
// structural computations on them. Subspaces are matrices of row vectors in
// basis coordinates, kept in reduced echelon form.

#include "mongesym/linalg.hpp"

#include <json.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mongesym {

/// [b_i, b_j] = sum_k c(i, j, k) b_k.
class StructureConstants {
public:
    explicit StructureConstants(std::size_t dimension = 0);

    std::size_t dimension() const { return n_; }
    const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }

    /// Sets [b_i, b_j] = v and [b_j, b_i] = -v.
    void set_bracket(std::size_t i, std::size_t j, const Vector& v);
    Vector bracket_of_basis(std::size_t i, std::size_t j) const;
    Vector bracket(const Vector& a, const Vector& b) const;

    /// Matrix of ad(a) acting on column coordinates: (ad a)[k][j] = coefficient
    /// of b_k in [a, b_j].
    Matrix ad(const Vector& a) const;

    friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

private:
    std::size_t n_;
    std::vector<Rational> c_;
};

bool is_antisymmetric(const StructureConstants& c);

/// First (i, j, k, l) with i < j < k whose Jacobi sum is nonzero.
std::optional<std::array<std::size_t, 4>> jacobi_violation(const StructureConstants& c);
inline bool satisfies_jacobi(const StructureConstants& c)
{
    return !jacobi_violation(c).has_value();
}

/// span{[a, b] : a in A, b in B}.
Matrix bracket_span(const StructureConstants& c, const Matrix& a, const Matrix& b);
Matrix whole_algebra(std::size_t n);

Matrix center(const StructureConstants& c);

/// Subspaces g = D0 ⊇ D1 ⊇ ... until the sequence repeats or reaches 0.
std::vector<Matrix> derived_series(const StructureConstants& c);
std::vector<Matrix> lower_central_series(const StructureConstants& c);
std::vector<std::size_t> dimensions(const std::vector<Matrix>& series);

bool is_solvable(const StructureConstants& c);
bool is_nilpotent(const StructureConstants& c);
bool is_abelian(const StructureConstants& c);

/// K(b_i, b_j) = trace(ad b_i ad b_j).
Matrix killing_form(const StructureConstants& c);

/// [g, g]^⊥ under the Killing form.
Matrix radical(const StructureConstants& c);

/// Constants of the subalgebra spanned by the rows of `basis` (independent),
/// in that basis. Throws mongesym::Error when the span is not closed.
StructureConstants restrict_to(const StructureConstants& c, const Matrix& basis);

/// A subalgebra complementary to the solvable ideal `rad`, found by solving
/// the lifting equations one abelian layer of rad at a time. Absent when a
/// layer has no solution (g / rad not semisimple).
std::optional<Matrix> levi_complement(const StructureConstants& c, const Matrix& rad);

bool is_heisenberg(const StructureConstants& c);
/// Dimension 3 with nondegenerate indefinite Killing form.
bool is_sl2(const StructureConstants& c);

/// Positions (e, h, f) in `basis` with [h,e] = 2e, [h,f] = -2f, [e,f] = h,
/// when the basis itself is a standard triple in some order.
std::optional<std::array<std::size_t, 3>> standard_sl2_triple(const StructureConstants& c, const Matrix& basis);

struct Recognition {
    std::string verdict; ///< sl2_semidirect_heisenberg, heisenberg, sl2, unrecognized
    Matrix radical;
    std::optional<Matrix> complement;
};

Recognition recognize(const StructureConstants& c);

struct StructureReport {
    std::size_t dimension = 0;
    Matrix center;
    std::vector<std::size_t> derived_dims;
    std::vector<std::size_t> lcs_dims;
    bool solvable = false;
    bool nilpotent = false;
    bool abelian = false;
    Matrix killing;
    std::size_t killing_rank = 0;
    Signature killing_signature;
    Recognition recognition;
};

StructureReport analyze(const StructureConstants& c);

/// Subspaces are written as index lists when spanned by basis vectors and as
/// explicit coordinate vectors always.
nlohmann::ordered_json to_json(const StructureReport& r);
nlohmann::ordered_json subspace_json(const Matrix& subspace);

/// "2*S1 - S3", "0".
std::string format_combination(const Vector& coefficients, const std::vector<std::string>& names);

/// One line "[Si,Sj] = ..." per pair i < j.
std::vector<std::string> bracket_table(const StructureConstants& c, const std::vector<std::string>& names);

} // namespace mongesym
