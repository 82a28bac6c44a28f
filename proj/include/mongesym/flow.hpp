#pragma once

// Floating-point flows of vector fields, for cross-checking symbolic brackets.

#include "mongesym/vector_field.hpp"

namespace mongesym {

/// RK4 integration of V from p over time t.
ApproxPoint flow(const VectorField& v, ApproxPoint p, double t, int steps = 64);

/// [V,W](p) estimated from the commutator of flows,
/// phi^W_{-t} phi^V_{-t} phi^W_t phi^V_t (p) = p + t^2 [V,W](p) + O(t^3),
/// Richardson-extrapolated in t.
ApproxPoint flow_commutator(const VectorField& v, const VectorField& w, const ApproxPoint& p, double t = 2e-3);

} // namespace mongesym
