#include "mongesym/solver.hpp"

#include "mongesym/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <map>
#include <thread>

namespace mongesym {

namespace {

Expr var(Coord c)
{
    return Expr::variable(Chart::J20, c);
}

std::vector<Monomial> monomials_up_to(int degree)
{
    std::vector<Monomial> out;
    Monomial m;
    auto rec = [&](auto&& self, std::size_t slot, int budget) -> void {
        if (slot == kCoordCount) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= budget; ++e) {
            m.exponents[slot] = e;
            self(self, slot + 1, budget - e);
        }
        m.exponents[slot] = 0;
    };
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return compare(a, b) < 0; });
    return out;
}

struct RowKey {
    int residual;
    Term key;
};

struct RowKeyLess {
    bool operator()(const RowKey& a, const RowKey& b) const
    {
        if (a.residual != b.residual) return a.residual < b.residual;
        return compare_key(a.key, b.key) < 0;
    }
};

using RowMap = std::map<RowKey, std::vector<std::pair<std::uint32_t, Rational>>, RowKeyLess>;

void collect(RowMap& rows, const ResidualContext& ctx, const AnsatzUnknown& u, std::uint32_t column)
{
    auto residuals = unit_residuals(ctx, u.component, u.function);
    for (int r = 0; r < 6; ++r)
        for (const auto& t : residuals[static_cast<std::size_t>(r)].terms()) {
            RowKey key{r, Term{Rational(1), t.monomial, t.atoms}};
            rows[key].emplace_back(column, t.coefficient);
        }
}

} // namespace

VectorField Ansatz::field(const Vector& coefficients) const
{
    if (coefficients.size() != unknowns.size()) throw Error("ansatz coefficient vector has the wrong length");
    std::vector<Expr> comps(kCoordCount, Expr(Chart::J20));
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        if (coefficients[u] != 0)
            comps[static_cast<std::size_t>(index(unknowns[u].component))] += coefficients[u] * unknowns[u].function;
    return VectorField(Chart::J20, std::move(comps));
}

Ansatz build_ansatz(const AnsatzSpec& spec)
{
    if (spec.degree < 0) throw Error("ansatz degree must be non-negative");
    if (std::find(spec.offsets.begin(), spec.offsets.end(), Rational(0)) == spec.offsets.end())
        throw Error("ansatz offsets must contain 0");
    std::vector<Rational> offsets = spec.offsets;
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

    Ansatz a{spec, {}};
    const auto monomials = monomials_up_to(spec.degree);
    std::vector<Expr> functions;
    for (const auto& m : monomials)
        for (const auto& q : offsets) {
            Expr f = Expr::monomial(Chart::J20, 1, m);
            if (q != 0) f = f * pow(var(Coord::y2), q);
            if (std::find(functions.begin(), functions.end(), f) == functions.end()) functions.push_back(std::move(f));
        }
    for (Coord c : kAllCoords)
        for (const auto& f : functions) a.unknowns.push_back({c, f});
    return a;
}

ResidualContext exact_context(const MongeEquation& m)
{
    ResidualContext ctx;
    ctx.y1 = var(Coord::y1);
    ctx.y2 = var(Coord::y2);
    ctx.f = m.rhs;
    for (Coord c : kAllCoords) ctx.df[static_cast<std::size_t>(index(c))] = differentiate(m.rhs, c);
    return ctx;
}

std::array<Expr, 6> unit_residuals(const ResidualContext& ctx, Coord component, const Expr& g)
{
    auto slot = [](Coord c) { return static_cast<std::size_t>(index(c)); };
    auto x2 = [&](const Expr& h) {
        Expr out = differentiate(h, Coord::x);
        if (h.depends_on(Coord::y)) out += ctx.y1 * differentiate(h, Coord::y);
        if (h.depends_on(Coord::y1)) out += ctx.y2 * differentiate(h, Coord::y1);
        if (h.depends_on(Coord::z)) out += ctx.f * differentiate(h, Coord::z);
        return out;
    };
    auto membership = [&](const std::array<Expr, kCoordCount>& v, Expr* out) {
        const Expr& vx = v[slot(Coord::x)];
        out[0] = v[slot(Coord::y)] - ctx.y1 * vx;
        out[1] = v[slot(Coord::y1)] - ctx.y2 * vx;
        out[2] = v[slot(Coord::z)] - ctx.f * vx;
    };

    std::array<Expr, kCoordCount> v;
    v.fill(Expr(Chart::J20));
    v[slot(component)] = -differentiate(g, Coord::y2);

    std::array<Expr, kCoordCount> w;
    w.fill(Expr(Chart::J20));
    w[slot(component)] = -x2(g);
    if (component == Coord::y1) w[slot(Coord::y)] += g;
    if (component == Coord::y2) w[slot(Coord::y1)] += g;
    const Expr& dfi = ctx.df[slot(component)];
    if (!dfi.is_zero()) w[slot(Coord::z)] += g * dfi;

    std::array<Expr, 6> r;
    membership(v, r.data());
    membership(w, r.data() + 3);
    if (ctx.truncate)
        for (auto& e : r) e = truncate(e, *ctx.truncate);
    return r;
}

unsigned solver_threads()
{
    if (const char* env = std::getenv("MONGESYM_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

DeterminingSystem determining_system(const ResidualContext& ctx, const std::vector<AnsatzUnknown>& unknowns,
                                     unsigned threads)
{
    if (threads == 0) threads = solver_threads();
    const std::size_t n = unknowns.size();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n / 16 + 1));
    std::vector<RowMap> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](std::size_t w) {
        try {
            const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
            for (std::size_t u = lo; u < hi; ++u) collect(partial[w], ctx, unknowns[u], static_cast<std::uint32_t>(u));
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    // Chunks cover increasing column ranges, so merging in worker order
    // keeps every row's entries sorted and the result schedule-independent.
    RowMap merged = std::move(partial[0]);
    for (std::size_t w = 1; w < workers; ++w)
        for (auto& [key, entries] : partial[w]) {
            auto& dst = merged[key];
            dst.insert(dst.end(), std::make_move_iterator(entries.begin()), std::make_move_iterator(entries.end()));
        }

    DeterminingSystem sys;
    sys.unknowns = n;
    for (auto& [key, entries] : merged) {
        SparseRow row = primitive_row(std::move(entries));
        if (row.empty()) continue;
        sys.rows.push_back(std::move(row));
        sys.provenance.push_back({key.residual, to_string(Expr::from_terms(Chart::J20, {key.key}))});
    }
    return sys;
}

DeterminingSystem determining_equations(const Distribution2& d, const Ansatz& ansatz, unsigned threads)
{
    return determining_system(exact_context(d.equation), ansatz.unknowns, threads);
}

NullspaceResult nullspace(const DeterminingSystem& system)
{
    Echelon e(system.unknowns);
    e.insert_all(system.rows);
    NullspaceResult r;
    r.basis = sparse_nullspace(e.rows_from(0), 0, system.unknowns);
    r.dimension = r.basis.size();
    return r;
}

} // namespace mongesym
