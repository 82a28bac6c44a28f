#pragma once

// Named equations and vector fields, addressable by stable string keys.
//
//   equations: "eq2", "flat", "eq1(I)", "dz13(r1,r2)", "strazzullo"
//   fields:    "S1".."S6" (J20), "equiaffine1".."equiaffine5" (Plane)

#include "mongesym/distribution.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mongesym::catalog {

/// z' = y + y2^(1/3).
MongeEquation eq2();
/// z' = y2^2, the flat model.
MongeEquation flat();
/// z' = -1/2 (y2^2 + 10/3 y1^2 + (1 + I^2) y^2).
MongeEquation eq1(const Rational& invariant);
/// z' = y2^2 + r1 y1^2 + r2 y^2.
MongeEquation dz13(const Rational& r1, const Rational& r2);
/// z' = 1 + exp(-4/3 y) (y2 - 1/2 y1^2)^(2/3).
MongeEquation strazzullo();

/// S1..S6 of the six-dimensional symmetry algebra of eq2 (1-based).
VectorField lemma_field(int i);

struct PlaneField {
    Expr xi{Chart::Plane};
    Expr eta{Chart::Plane};
};

/// x d/dy, x d/dx - y d/dy, y d/dx, d/dx, d/dy (1-based).
PlaneField equiaffine_generator(int i);

/// Throws mongesym::Error for unknown keys or malformed parameters.
MongeEquation equation_by_key(std::string_view key);
std::optional<MongeEquation> find_equation(std::string_view key);

/// Plane generators are returned as vector fields on chart Plane.
VectorField field_by_key(std::string_view key);
std::optional<VectorField> find_field(std::string_view key);

std::vector<std::string> equation_keys();
std::vector<std::string> field_keys();

} // namespace mongesym::catalog
