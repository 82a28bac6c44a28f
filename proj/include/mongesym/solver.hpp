#pragma once

// Symmetry algebras of Monge distributions from the linear determining
// equations [S, X1], [S, X2] in D.
//
// Two unknown spaces are supported:
//   polynomial  coefficients are combinations of monomials of bounded total
//               degree times y2^q, q in a finite offset set; nullspace vectors
//               are exact symmetry fields;
//   jet         coefficients are Taylor polynomials of order K at a base point
//               p; residuals are required to vanish to order K - 1 and the
//               dimension is that of the space of J-jets (J < K) that extend
//               to order K. This also sees symmetries that are not
//               polynomial, e.g. exponentials with irrational rates.

#include "mongesym/distribution.hpp"
#include "mongesym/lie_algebra.hpp"
#include "mongesym/sparse.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mongesym {

struct AnsatzSpec {
    int degree = 0;
    std::vector<Rational> offsets{Rational(0)};
};

struct AnsatzUnknown {
    Coord component;
    Expr function; ///< m * y2^q
};

struct Ansatz {
    AnsatzSpec spec;
    std::vector<AnsatzUnknown> unknowns;

    /// sum_u c_u function_u d/d component_u.
    VectorField field(const Vector& coefficients) const;
};

/// Unknowns ordered by component (x, y, y1, y2, z), then monomial degree,
/// then graded-lex monomial order, then offset; duplicate functions (integer
/// offsets) are kept once. Throws mongesym::Error for a negative degree or
/// offsets without 0.
Ansatz build_ansatz(const AnsatzSpec& spec);

/// Ingredients of the closed-form residuals, possibly Taylor-expanded.
struct ResidualContext {
    Expr y1, y2, f;              ///< the functions y1, y2, F (or their expansions)
    std::array<Expr, kCoordCount> df; ///< dF/du_i
    std::optional<int> truncate;  ///< drop terms above this degree
};

ResidualContext exact_context(const MongeEquation& m);

/// The six symmetry residuals of the field g d/du_i: the membership
/// residuals of [S, X1] followed by those of [S, X2]. Agrees with
/// is_symmetry on exact contexts.
std::array<Expr, 6> unit_residuals(const ResidualContext& ctx, Coord component, const Expr& g);

struct RowOrigin {
    int residual = 0; ///< 0..5 as in unit_residuals
    std::string key;  ///< the monomial/atom key the row collects
};

struct DeterminingSystem {
    std::size_t unknowns = 0;
    std::vector<SparseRow> rows;
    std::vector<RowOrigin> provenance;
};

/// One row per (residual, term key); rows are generated in parallel over
/// unknown chunks and merged in key order.
DeterminingSystem determining_system(const ResidualContext& ctx, const std::vector<AnsatzUnknown>& unknowns,
                                     unsigned threads = 0);
DeterminingSystem determining_equations(const Distribution2& d, const Ansatz& ansatz, unsigned threads = 0);

struct NullspaceResult {
    std::size_t dimension = 0;
    Matrix basis; ///< reduced-echelon basis, one row per free unknown
};

NullspaceResult nullspace(const DeterminingSystem& system);

/// Reference solution space: is_symmetry on each unknown field, rows by
/// printed term key, dense exact elimination. Slow; for cross-checks only.
/// Rows of the result are in reduced echelon form.
Matrix brute_force_nullspace(const MongeEquation& m, const Ansatz& ansatz);

/// Worker count: MONGESYM_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned solver_threads();

/// Taylor polynomial of f at p to total order `order`, in the shifted
/// coordinates t = u - p (written with the chart's coordinate names).
Expr taylor(const Expr& f, const Assignment& p, int order);

Assignment default_base_point();

struct JetSolution {
    int order = 0;       ///< K
    int jet_order = 0;   ///< J
    std::size_t unknowns = 0;
    std::size_t rows = 0;
    std::size_t dimension = 0;      ///< dim of J-jets extending to order K
    std::size_t next_dimension = 0; ///< same for (J+1)-jets
    /// Basis of the (J+1)-jets extending to order K, as polynomial fields in
    /// shifted coordinates.
    std::vector<VectorField> jets;
};

JetSolution solve_jets(const MongeEquation& m, const Assignment& base_point, int order, int jet_order,
                       unsigned threads = 0);

/// Constants of the symmetry algebra from (J+1)-jets: brackets truncated to
/// order J are expressed through the J-jets. Needs next_dimension ==
/// dimension; throws mongesym::Error otherwise.
StructureConstants jet_structure_constants(const JetSolution& s);

/// Residuals of each jet vanish to order J.
bool jets_verified(const MongeEquation& m, const Assignment& base_point, const JetSolution& s);

enum class SolveMethod { Polynomial, Jet };

struct SolveOptions {
    SolveMethod method = SolveMethod::Jet;
    int max_degree = 9; ///< ansatz degree, or jet order K
    std::vector<Rational> offsets{Rational(0)};
    Assignment base_point = default_base_point();
    int jet_order = 2; ///< J
    unsigned threads = 0;
    bool verify = true;
    std::function<void(const std::string&)> progress;
};

struct DegreeRow {
    int degree = 0;
    std::size_t unknowns = 0;
    std::size_t rows = 0;
    std::size_t dimension = 0;
    double seconds = 0;
};

struct SolveReport {
    std::string equation;
    SolveMethod method = SolveMethod::Jet;
    std::vector<Rational> offsets;
    Assignment base_point;
    int jet_order = 0;
    std::vector<DegreeRow> table;
    bool stabilized = false;
    std::size_t dimension = 0;
    /// Exact symmetry fields (polynomial) or (J+1)-jets (jet).
    std::vector<VectorField> basis;
    /// Re-check of every basis element; unset when not requested.
    std::optional<bool> verified;
    std::optional<StructureConstants> constants;
};

/// Polynomial: degrees 0..max_degree. Jet: orders jet_order+2..max_degree.
/// Stabilized (heuristic) when the last two dimensions agree.
SolveReport symmetry_dimension(const MongeEquation& m, const SolveOptions& options);

nlohmann::ordered_json to_json(const SolveReport& r, bool timings = false);

std::string method_name(SolveMethod m);
std::optional<SolveMethod> method_from_name(std::string_view name);

struct MaximalityVerdict {
    struct Candidate {
        std::string equation;
        std::size_t dimension = 0;
        bool solvable = false;
        std::vector<std::size_t> derived_dims;
    };
    std::vector<Candidate> candidates;
    bool six_dimensional_solvable = true;
    bool holds = false;
    std::string verdict;
};

/// Each candidate must be seven-dimensional with constants attached; the
/// verdict holds when all candidates are solvable and `six` is not (a
/// solvable algebra cannot contain sl(2)). Throws mongesym::Error for a
/// candidate of the wrong dimension.
MaximalityVerdict maximality_argument(const StructureConstants& six, const std::vector<SolveReport>& candidates);

nlohmann::ordered_json to_json(const MaximalityVerdict& v);

} // namespace mongesym
