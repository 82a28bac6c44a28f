#include "mongesym/flow.hpp"

namespace mongesym {

namespace {

ApproxPoint axpy(ApproxPoint a, const ApproxPoint& b, double s)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

} // namespace

ApproxPoint flow(const VectorField& v, ApproxPoint p, double t, int steps)
{
    auto rhs = [&](const ApproxPoint& q) {
        ApproxPoint d{};
        for (Coord c : coordinates(v.chart())) d[static_cast<std::size_t>(index(c))] = evaluate_approx(v[c], q);
        return d;
    };
    const double h = t / steps;
    for (int i = 0; i < steps; ++i) {
        ApproxPoint k1 = rhs(p);
        ApproxPoint k2 = rhs(axpy(p, k1, h / 2));
        ApproxPoint k3 = rhs(axpy(p, k2, h / 2));
        ApproxPoint k4 = rhs(axpy(p, k3, h));
        for (std::size_t j = 0; j < p.size(); ++j) p[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    return p;
}

ApproxPoint flow_commutator(const VectorField& v, const VectorField& w, const ApproxPoint& p, double t)
{
    auto estimate = [&](double s) {
        ApproxPoint q = flow(w, flow(v, flow(w, flow(v, p, s), s), -s), -s);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = (q[i] - p[i]) / (s * s);
        return q;
    };
    ApproxPoint coarse = estimate(t), fine = estimate(t / 2);
    ApproxPoint out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2 * fine[i] - coarse[i];
    return out;
}

} // namespace mongesym
