#pragma once

#include "mongesym/expr.hpp"

namespace mongesym::detail {

/// Canonicalizes a product term whose atom list may contain repeated bases,
/// several Exp atoms, or Power atoms that fold back into the polynomial part.
Expr normalize_term(Chart chart, Term raw);

/// True when `e` is exactly the coordinate v (coefficient 1, degree 1).
bool is_single_variable(const Expr& e, Coord& v);

} // namespace mongesym::detail
