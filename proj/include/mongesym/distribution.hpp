#pragma once

// Rank-2 distributions on J20 defined by Monge equations z' = F(x, y, y1, y2, z).

#include "mongesym/expr.hpp"
#include "mongesym/vector_field.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mongesym {

struct MongeEquation {
    Expr rhs{Chart::J20}; ///< F, on chart J20
    std::string label;    ///< catalog key or the inline text it came from
};

/// D = span{X1, X2} with X1 = d/dy2, X2 = d/dx + y1 d/dy + y2 d/dy1 + F d/dz.
struct Distribution2 {
    MongeEquation equation;
    VectorField x1;
    VectorField x2;
};

Distribution2 distribution_from_monge(const MongeEquation& m);

/// d^2F/dy2^2; the distribution is generic exactly where it is nonzero.
Expr genericity_hessian(const MongeEquation& m);

/// (X1, X2, [X1,X2], [X1,X3], [X2,X3]).
std::array<VectorField, 5> frame_fields(const Distribution2& d);

/// Determinant of the 5x5 coefficient matrix of frame_fields, rows in frame
/// order, columns in chart order.
Expr frame_determinant(const Distribution2& d);

/// Laplace expansion; skips zero entries. Square matrices only.
Expr determinant(const std::vector<std::vector<Expr>>& rows, Chart chart);

struct GenericityReport {
    Expr hessian;
    Expr determinant;
    /// +1 / -1 when determinant = +-hessian canonically, 0 otherwise.
    int determinant_sign = 0;
    bool generic = false;
    /// Where the hessian vanishes or is undefined, e.g. "y2 = 0".
    std::vector<std::string> excluded_locus;
};

GenericityReport genericity_report(const MongeEquation& m);

/// (v_y - y1 v_x, v_y1 - y2 v_x, v_z - F v_x); all zero iff V lies in D.
std::array<Expr, 3> membership_residuals(const VectorField& v, const Distribution2& d);

struct Witness {
    Expr alpha; ///< coefficient of X1
    Expr beta;  ///< coefficient of X2
};

/// V = alpha X1 + beta X2 if V is a section of D.
std::optional<Witness> in_distribution(const VectorField& v, const Distribution2& d);

struct SymmetryCheck {
    bool holds = false;
    /// Membership residuals of [S, X1] (first three) and [S, X2] (last three).
    std::array<Expr, 6> residuals;
};

SymmetryCheck is_symmetry(const VectorField& s, const Distribution2& d);

/// Push forward along J20 -> J2 (drop d/dz). Throws ProjectionError when a
/// horizontal coefficient depends on z.
VectorField project_to_J2(const VectorField& v);

/// Second prolongation of xi d/dx + eta d/dy (both on Plane) to J2.
VectorField prolong_plane_field(const Expr& xi, const Expr& eta);

} // namespace mongesym
