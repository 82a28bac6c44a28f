#pragma once

// Lie algebras of vector fields: bases, coordinates and structure constants.

#include "mongesym/lie_algebra.hpp"
#include "mongesym/vector_field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mongesym {

struct LieAlgebraPresentation {
    std::vector<VectorField> basis;
    StructureConstants constants;
};

/// Coordinates c with V = sum_i c_i basis_i (constant coefficients). Candidates
/// come from exact evaluation at deterministic sample points (y2 a positive
/// cube); symbolic coefficient matching takes over when too few points are
/// admissible. A candidate is returned only if V - sum c_i basis_i is
/// symbolically zero.
std::optional<Vector> express_in_basis(const VectorField& v, const std::vector<VectorField>& basis);

/// The first `count` points of the sample sequence used by express_in_basis.
std::vector<Assignment> sample_points(std::size_t count);

/// Basis of the Lie algebra generated by `fields`: redundant inputs are
/// dropped and new brackets appended until closed. Throws CapExceeded when
/// the dimension would exceed `cap`.
LieAlgebraPresentation close_under_bracket(const std::vector<VectorField>& fields, std::size_t cap);

/// Structure constants of fields already known to span a Lie algebra.
/// Throws mongesym::Error when the fields are dependent or a bracket leaves
/// the span.
LieAlgebraPresentation presentation_of(const std::vector<VectorField>& basis);

} // namespace mongesym
