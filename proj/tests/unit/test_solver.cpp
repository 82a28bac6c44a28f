#include "mongesym/catalog.hpp"
#include "mongesym/error.hpp"
#include "mongesym/presentation.hpp"
#include "mongesym/solver.hpp"
#include "random_expr.hpp"

#include <doctest.h>

#include <cstdlib>
#include <map>

using namespace mongesym;

namespace {

Expr p(std::string_view s)
{
    return parse(s, Chart::J20);
}

std::vector<MongeEquation> catalog_equations()
{
    return {catalog::eq2(),          catalog::flat(),       catalog::eq1(0), catalog::eq1(make_rational(3, 4)),
            catalog::dz13(1, 1),     catalog::dz13(10, 9), catalog::strazzullo()};
}

/// Brute-force determining system: generic Lie brackets through
/// is_symmetry on each unknown basis field, rows collected by printed term
/// key, dense exact elimination.
Matrix oracle_nullspace(const MongeEquation& m, const Ansatz& a)
{
    Distribution2 d = distribution_from_monge(m);
    const std::size_t n = a.unknowns.size();
    std::map<std::pair<int, std::string>, Vector> rows;
    for (std::size_t u = 0; u < n; ++u) {
        VectorField e(Chart::J20);
        e.set(a.unknowns[u].component, a.unknowns[u].function);
        auto check = is_symmetry(e, d);
        for (int r = 0; r < 6; ++r)
            for (const auto& t : check.residuals[static_cast<std::size_t>(r)].terms()) {
                Term key{Rational(1), t.monomial, t.atoms};
                auto& row = rows[{r, to_string(Expr::from_terms(Chart::J20, {key}))}];
                if (row.empty()) row = zero_vector(n);
                row[u] += t.coefficient;
            }
    }
    Matrix eqs;
    for (auto& [key, row] : rows) eqs.push_back(row);
    return row_basis(nullspace(eqs, n));
}

/// Ansatz coordinates of an exact field, if it lies in the ansatz space.
std::optional<Vector> ansatz_coordinates(const Ansatz& a, const VectorField& v)
{
    Vector c = zero_vector(a.unknowns.size());
    for (Coord comp : kAllCoords) {
        Expr rest = v[comp];
        for (std::size_t u = 0; u < a.unknowns.size(); ++u) {
            if (a.unknowns[u].component != comp) continue;
            const Term& lead = a.unknowns[u].function.terms().front();
            for (const auto& t : rest.terms())
                if (compare_key(t, lead) == 0) {
                    c[u] = t.coefficient;
                    break;
                }
            if (c[u] != 0) rest -= c[u] * a.unknowns[u].function;
        }
        if (!rest.is_zero()) return std::nullopt;
    }
    return c;
}

bool in_row_span(const Matrix& span, const Vector& v)
{
    Matrix m = span;
    std::size_t before = rank(m);
    m.push_back(v);
    return rank(m) == before;
}

SolveReport run(const MongeEquation& m, SolveMethod method, int degree, unsigned threads = 0)
{
    SolveOptions o;
    o.method = method;
    o.max_degree = degree;
    o.threads = threads;
    return symmetry_dimension(m, o);
}

} // namespace

TEST_CASE("build_ansatz counts")
{
    CHECK(build_ansatz({0, {0}}).unknowns.size() == 5);
    CHECK(build_ansatz({1, {0}}).unknowns.size() == 30);
    CHECK(build_ansatz({2, {0, make_rational(1, 3)}}).unknowns.size() == 210);
    // y2 * y2^0 and 1 * y2^1 coincide and are kept once.
    CHECK(build_ansatz({1, {0, 1}}).unknowns.size() == 55);
    CHECK_THROWS_AS((void)build_ansatz({-1, {0}}), Error);
    CHECK_THROWS_AS((void)build_ansatz({1, {make_rational(1, 3)}}), Error);

    auto a = build_ansatz({1, {0}});
    CHECK(a.unknowns.front().component == Coord::x);
    CHECK(a.unknowns.front().function == p("1"));
    CHECK(a.unknowns.back().component == Coord::z);
    CHECK(a.unknowns.back().function == p("z"));
}

TEST_CASE("closed-form residuals agree with generic brackets")
{
    testing::ExprGenerator gen(31);
    for (const auto& m : catalog_equations()) {
        Distribution2 d = distribution_from_monge(m);
        ResidualContext ctx = exact_context(m);
        for (int trial = 0; trial < 25; ++trial) {
            Coord c = kAllCoords[static_cast<std::size_t>(gen.uniform(0, 4))];
            Expr g = gen.power_expr();
            VectorField v(Chart::J20);
            v.set(c, g);
            auto expected = is_symmetry(v, d).residuals;
            auto got = unit_residuals(ctx, c, g);
            INFO(m.label << " " << name(c) << " " << to_string(g));
            for (std::size_t k = 0; k < 6; ++k) CHECK(got[k] == expected[k]);
        }
    }
}

TEST_CASE("nullspace examples")
{
    DeterminingSystem empty;
    empty.unknowns = 3;
    CHECK(nullspace(empty).dimension == 3);

    DeterminingSystem one;
    one.unknowns = 2;
    one.rows.push_back(primitive_row({{0, Rational(1)}, {1, Rational(-1)}}));
    auto ns = nullspace(one);
    REQUIRE(ns.dimension == 1);
    CHECK(ns.basis[0] == Vector{1, 1});
}

TEST_CASE("sparse elimination matches dense elimination")
{
    testing::ExprGenerator gen(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t cols = static_cast<std::size_t>(gen.uniform(1, 9));
        const int nrows = gen.uniform(0, 10);
        Matrix dense;
        std::vector<SparseRow> rows;
        for (int r = 0; r < nrows; ++r) {
            Vector row = zero_vector(cols);
            std::vector<std::pair<std::uint32_t, Rational>> entries;
            for (std::size_t c = 0; c < cols; ++c)
                if (gen.uniform(0, 2) == 0) {
                    row[c] = gen.small_rational();
                    entries.emplace_back(static_cast<std::uint32_t>(c), row[c]);
                }
            dense.push_back(row);
            rows.push_back(primitive_row(entries));
        }
        Echelon e(cols);
        e.insert_all(rows);
        CHECK(e.rank() == rank(dense));
        CHECK(sparse_nullspace(e.rows_from(0), 0, cols) == nullspace(dense, cols));
    }
}

TEST_CASE("determining_equations: flat model at degree 0")
{
    Distribution2 d = distribution_from_monge(catalog::flat());
    auto a = build_ansatz({0, {0}});
    auto sys = determining_equations(d, a);
    CHECK(sys.rows.size() == sys.provenance.size());
    auto ns = nullspace(sys);
    CHECK(ns.dimension == 3);
    for (const auto& v : ns.basis) CHECK(is_symmetry(a.field(v), d).holds);
    // d/dx, d/dy + ..., d/dz: the constant fields that are symmetries.
    CHECK(is_symmetry(VectorField::coordinate(Chart::J20, Coord::x), d).holds);
    CHECK(is_symmetry(VectorField::coordinate(Chart::J20, Coord::z), d).holds);
    CHECK(is_symmetry(VectorField::coordinate(Chart::J20, Coord::y), d).holds);
}

TEST_CASE("property: oracle equivalence at degrees 0 and 1 on every catalog equation")
{
    for (const auto& m : catalog_equations())
        for (int degree = 0; degree <= 1; ++degree) {
            INFO(m.label << " degree " << degree);
            auto a = build_ansatz({degree, {0}});
            auto sys = determining_equations(distribution_from_monge(m), a);
            auto ns = nullspace(sys);
            Matrix oracle = oracle_nullspace(m, a);
            CHECK(ns.dimension == oracle.size());
            CHECK(row_basis(ns.basis) == oracle);
        }
}

TEST_CASE("eq2 at degree 2 contains the six printed fields")
{
    auto a = build_ansatz({2, {0}});
    Distribution2 d = distribution_from_monge(catalog::eq2());
    auto ns = nullspace(determining_equations(d, a));
    CHECK(ns.dimension == 6);
    for (int i = 1; i <= 6; ++i) {
        auto c = ansatz_coordinates(a, catalog::lemma_field(i));
        REQUIRE(c);
        CHECK(in_row_span(ns.basis, *c));
    }
}

TEST_CASE("property: soundness, monotonicity and closure of polynomial runs")
{
    for (const auto& m : {catalog::eq2(), catalog::flat(), catalog::dz13(1, 1), catalog::eq1(1)}) {
        INFO(m.label);
        auto r = run(m, SolveMethod::Polynomial, 3);
        CHECK(r.verified == true);
        Distribution2 d = distribution_from_monge(m);
        for (const auto& f : r.basis) CHECK(is_symmetry(f, d).holds);
        for (std::size_t k = 1; k < r.table.size(); ++k) CHECK(r.table[k].dimension >= r.table[k - 1].dimension);
        if (r.constants) CHECK(satisfies_jacobi(*r.constants));
    }
    auto eq2 = run(catalog::eq2(), SolveMethod::Polynomial, 2);
    REQUIRE(eq2.constants);
    CHECK(analyze(*eq2.constants).recognition.verdict == "sl2_semidirect_heisenberg");

    SolveOptions wide;
    wide.method = SolveMethod::Polynomial;
    wide.max_degree = 1;
    wide.offsets = {0, make_rational(1, 3), make_rational(-1, 3)};
    auto narrow = run(catalog::eq2(), SolveMethod::Polynomial, 1);
    auto widened = symmetry_dimension(catalog::eq2(), wide);
    CHECK(widened.dimension >= narrow.dimension);
    CHECK(widened.verified == true);
}

TEST_CASE("property: determinism across runs and worker counts")
{
    auto a = to_json(run(catalog::eq2(), SolveMethod::Polynomial, 2, 1)).dump();
    auto b = to_json(run(catalog::eq2(), SolveMethod::Polynomial, 2, 4)).dump();
    auto c = to_json(run(catalog::eq2(), SolveMethod::Polynomial, 2, 3)).dump();
    CHECK(a == b);
    CHECK(a == c);
    auto j1 = to_json(run(catalog::dz13(1, 1), SolveMethod::Jet, 6, 1)).dump();
    auto j2 = to_json(run(catalog::dz13(1, 1), SolveMethod::Jet, 6, 4)).dump();
    CHECK(j1 == j2);
}

TEST_CASE("taylor expansion")
{
    auto base = default_base_point();
    CHECK(taylor(p("y2^(1/3)"), base, 3) == p("1 + 1/3*y2 - 1/9*y2^2 + 5/81*y2^3"));
    CHECK(taylor(p("y2^2 + y1^2"), base, 5) == p("1 + 2*y2 + y2^2 + y1^2"));
    CHECK(taylor(p("x*y*z"), base, 2).is_zero());
    CHECK(taylor(p("exp(x)"), base, 3) == p("1 + x + 1/2*x^2 + 1/6*x^3"));
    Assignment bad = base;
    bad[Coord::y2] = 2;
    CHECK_THROWS_AS((void)taylor(p("y2^(1/3)"), bad, 2), EvaluationError);
}

TEST_CASE("jet method dimensions")
{
    auto flat = solve_jets(catalog::flat(), default_base_point(), 7, 2);
    CHECK(flat.dimension == 14);
    CHECK(flat.next_dimension == 14);
    CHECK(jets_verified(catalog::flat(), default_base_point(), flat));

    auto dz = solve_jets(catalog::dz13(1, 1), default_base_point(), 8, 2);
    CHECK(dz.dimension == 7);
    auto c = jet_structure_constants(dz);
    CHECK(satisfies_jacobi(c));
    CHECK(is_solvable(c));

    CHECK_THROWS_AS((void)solve_jets(catalog::flat(), default_base_point(), 3, 2), Error);
}

TEST_CASE("jets of exact symmetries lie in the jet solution space")
{
    auto base = default_base_point();
    auto jets = solve_jets(catalog::eq2(), base, 9, 2);
    REQUIRE(jets.dimension == 6);
    REQUIRE(jets.next_dimension == 6);
    for (int i = 1; i <= 6; ++i) {
        VectorField s = catalog::lemma_field(i);
        std::vector<Expr> comps;
        for (Coord c : kAllCoords) comps.push_back(taylor(s[c], base, 3));
        auto coords = express_in_basis(VectorField(Chart::J20, comps), jets.jets);
        INFO("S" << i);
        CHECK(coords.has_value());
    }
    auto exact = analyze(presentation_of([] {
                             std::vector<VectorField> v;
                             for (int i = 1; i <= 6; ++i) v.push_back(catalog::lemma_field(i));
                             return v;
                         }())
                             .constants);
    auto from_jets = analyze(jet_structure_constants(jets));
    CHECK(from_jets.recognition.verdict == exact.recognition.verdict);
    CHECK(from_jets.derived_dims == exact.derived_dims);
    CHECK(from_jets.killing_signature.positive == exact.killing_signature.positive);
    CHECK(from_jets.killing_signature.negative == exact.killing_signature.negative);
}

TEST_CASE("maximality_argument")
{
    auto dz = run(catalog::dz13(1, 1), SolveMethod::Jet, 9);
    REQUIRE(dz.dimension == 7);
    std::vector<VectorField> s;
    for (int i = 1; i <= 6; ++i) s.push_back(catalog::lemma_field(i));
    auto six = presentation_of(s).constants;
    auto v = maximality_argument(six, {dz});
    CHECK(v.holds);
    CHECK(v.candidates.at(0).solvable);
    CHECK_FALSE(v.six_dimensional_solvable);

    auto heis = presentation_of({s[3], s[4], s[5]}).constants;
    CHECK_FALSE(maximality_argument(heis, {dz}).holds);

    auto eq2 = run(catalog::eq2(), SolveMethod::Polynomial, 2);
    CHECK_THROWS_AS((void)maximality_argument(six, {eq2}), Error);
}

TEST_CASE("solve report JSON")
{
    auto r = run(catalog::eq2(), SolveMethod::Polynomial, 2);
    auto j = to_json(r);
    CHECK(j["method"] == "poly");
    CHECK(j["offsets"] == nlohmann::ordered_json::array({"0"}));
    CHECK(j["table"].size() == 3);
    CHECK(j["table"][2]["unknowns"] == 105);
    CHECK(j["dimension"] == 6);
    CHECK(j["basis"].size() == 6);
    CHECK(j["structure"]["verdict"] == "sl2_semidirect_heisenberg");
    CHECK_FALSE(j.contains("timings"));
    CHECK(to_json(r, true).contains("timings"));
}

TEST_CASE("MONGESYM_THREADS caps workers")
{
    setenv("MONGESYM_THREADS", "3", 1);
    CHECK(solver_threads() == 3);
    setenv("MONGESYM_THREADS", "junk", 1);
    CHECK(solver_threads() >= 1);
    unsetenv("MONGESYM_THREADS");
}
