#include "mongesym/catalog.hpp"
#include "mongesym/error.hpp"
#include "mongesym/presentation.hpp"
#include "flow_oracle.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace mongesym;

namespace {

std::vector<VectorField> lemma_fields()
{
    std::vector<VectorField> out;
    for (int i = 1; i <= 6; ++i) out.push_back(catalog::lemma_field(i));
    return out;
}

const std::vector<std::string> kNames = {"S1", "S2", "S3", "S4", "S5", "S6"};

Vector vec(std::initializer_list<long> xs)
{
    Vector v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

/// Constants of a matrix Lie algebra given by a basis of square matrices,
/// bracket = commutator. Independent of the vector-field machinery.
StructureConstants matrix_algebra(const std::vector<Matrix>& basis, std::size_t size)
{
    Matrix flat;
    for (const auto& m : basis) {
        Vector row;
        for (const auto& r : m) row.insert(row.end(), r.begin(), r.end());
        flat.push_back(row);
    }
    StructureConstants c(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Matrix ab = multiply(basis[i], basis[j], size), ba = multiply(basis[j], basis[i], size);
            Vector row;
            for (std::size_t r = 0; r < size; ++r)
                for (std::size_t s = 0; s < size; ++s) row.push_back(ab[r][s] - ba[r][s]);
            auto coords = coordinates_in(flat, row);
            REQUIRE(coords);
            c.set_bracket(i, j, *coords);
        }
    return c;
}

Matrix elementary(std::size_t size, std::size_t r, std::size_t s, long value = 1)
{
    Matrix m(size, zero_vector(size));
    m[r][s] = value;
    return m;
}

StructureConstants strictly_upper(std::size_t size)
{
    std::vector<Matrix> basis;
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t s = r + 1; s < size; ++s) basis.push_back(elementary(size, r, s));
    return matrix_algebra(basis, size);
}

StructureConstants sl2_matrices()
{
    Matrix h = elementary(2, 0, 0);
    h[1][1] = -1;
    return matrix_algebra({elementary(2, 0, 1), h, elementary(2, 1, 0)}, 2);
}

StructureConstants so3_matrices()
{
    auto rot = [](std::size_t a, std::size_t b) {
        Matrix m = elementary(3, a, b);
        m[b][a] = -1;
        return m;
    };
    return matrix_algebra({rot(0, 1), rot(1, 2), rot(0, 2)}, 3);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("linalg basics")
{
    Matrix a = {vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 1, 1})};
    CHECK(rank(a) == 2);
    Matrix ns = nullspace(a, 3);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == vec({-1, -1, 1}));
    CHECK(nullspace({}, 2).size() == 2);
    CHECK(nullspace({vec({1, -1})}, 2) == Matrix{vec({1, 1})});
    CHECK(solve({vec({1, 1}), vec({1, -1})}, vec({3, 1}), 2) == vec({2, 1}));
    CHECK_FALSE(solve({vec({1, 1}), vec({2, 2})}, vec({1, 3}), 2));
    CHECK(coordinates_in({vec({1, 0, 1}), vec({0, 1, 1})}, vec({2, 3, 5})) == vec({2, 3}));
    CHECK_FALSE(coordinates_in({vec({1, 0, 1})}, vec({0, 1, 0})));
    CHECK(coordinate_indices({vec({0, 1, 0}), vec({0, 0, 1})}) == std::vector<std::size_t>{1, 2});
    CHECK_FALSE(coordinate_indices({vec({1, 1, 0})}));
}

TEST_CASE("exact signature")
{
    auto sig = signature({vec({1, 0, 0}), vec({0, -3, 0}), vec({0, 0, 0})});
    CHECK(sig.positive == 1);
    CHECK(sig.negative == 1);
    CHECK(sig.zero == 1);
    sig = signature({vec({0, 1}), vec({1, 0})});
    CHECK(sig.positive == 1);
    CHECK(sig.negative == 1);
    // Eigenvalues 1, 3, 6 (positive definite, non-diagonal).
    sig = signature({vec({2, -1, 0}), vec({-1, 2, -1}), vec({0, -1, 2})});
    CHECK(sig.positive == 3);
    sig = signature({vec({1, 2}), vec({2, 1})}); // eigenvalues 3, -1
    CHECK(sig.positive == 1);
    CHECK(sig.negative == 1);
}

TEST_CASE("express_in_basis examples")
{
    auto s = lemma_fields();
    CHECK(express_in_basis(lie_bracket(s[3], s[4]), s) == vec({0, 0, 0, 0, 0, 1}));
    CHECK(express_in_basis(VectorField(Chart::J20), s) == vec({0, 0, 0, 0, 0, 0}));
    CHECK_FALSE(express_in_basis(VectorField::coordinate(Chart::J20, Coord::y), {s[3]}));

    VectorField combo = make_rational(3, 2) * s[0] - make_rational(1, 7) * s[2] + Rational(5) * s[5];
    CHECK(express_in_basis(combo, s) == Vector{make_rational(3, 2), 0, make_rational(-1, 7), 0, 0, 5});
    CHECK_THROWS_AS((void)express_in_basis(s[0], {VectorField(Chart::J2)}), ChartMismatch);
}

TEST_CASE("express_in_basis falls back to coefficient matching when no sample point is admissible")
{
    Expr e = exp(parse("y", Chart::J20));
    VectorField b1(Chart::J20), b2(Chart::J20), v(Chart::J20);
    b1.set(Coord::z, e);
    b2.set(Coord::x, parse("y2^(1/3)", Chart::J20) * e);
    v.set(Coord::z, Rational(2) * e);
    v.set(Coord::x, parse("-y2^(1/3)", Chart::J20) * e);
    CHECK(express_in_basis(v, {b1, b2}) == vec({2, -1}));
    v.set(Coord::y, e);
    CHECK_FALSE(express_in_basis(v, {b1, b2}));
}

TEST_CASE("property: sample-then-verify rejects perturbed fields")
{
    auto s = lemma_fields();
    // A polynomial vanishing at every sample point: the sampled system is
    // consistent, so only the symbolic check can reject.
    Expr trap = Expr::constant(Chart::J20, 1);
    for (const auto& p : sample_points(64)) trap = trap * (Expr::variable(Chart::J20, Coord::y2) - Expr::constant(Chart::J20, p.at(Coord::y2)));
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        VectorField v(Chart::J20);
        Vector expected;
        for (const auto& f : s) {
            Rational c = make_rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
            expected.push_back(c);
            v += c * f;
        }
        REQUIRE(express_in_basis(v, s) == expected);
        VectorField trapped = v;
        trapped.set(kAllCoords[rng() % 5], v[kAllCoords[rng() % 5]] + trap);
        if (trapped == v) continue;
        CHECK_FALSE(express_in_basis(trapped, s));
        VectorField nudged = v;
        nudged.set(Coord::y1, v[Coord::y1] + parse("1/1000*y*y2^(1/3)", Chart::J20));
        CHECK_FALSE(express_in_basis(nudged, s));
    }
}

TEST_CASE("close_under_bracket examples")
{
    auto s = lemma_fields();
    auto p = close_under_bracket(s, 10);
    CHECK(p.basis == s);

    auto one = close_under_bracket({s[3]}, 10);
    CHECK(one.constants.dimension() == 1);
    CHECK(is_abelian(one.constants));

    auto sl = close_under_bracket({s[0], s[2]}, 10);
    REQUIRE(sl.basis.size() == 3);
    CHECK(sl.basis[2] == s[1]);
    // basis (S1, S3, S2)
    CHECK(sl.constants.bracket_of_basis(0, 1) == vec({0, 0, 1}));  // [S1,S3] = S2
    CHECK(sl.constants.bracket_of_basis(2, 0) == vec({2, 0, 0}));  // [S2,S1] = 2 S1
    CHECK(sl.constants.bracket_of_basis(2, 1) == vec({0, -2, 0})); // [S2,S3] = -2 S3

    CHECK_THROWS_AS((void)close_under_bracket({s[0], s[2]}, 2), CapExceeded);
    auto redundant = close_under_bracket({s[3], Rational(2) * s[3], VectorField(Chart::J20), s[4]}, 10);
    CHECK(redundant.basis.size() == 3);
}

TEST_CASE("golden bracket table")
{
    auto p = presentation_of(lemma_fields());
    std::string table;
    for (const auto& line : bracket_table(p.constants, kNames)) table += line + "\n";
    CHECK(table == read_file(std::string(MONGESYM_GOLDEN_DIR) + "/eq2_bracket_table.txt"));
    CHECK(is_antisymmetric(p.constants));
    CHECK(satisfies_jacobi(p.constants));
}

TEST_CASE("bracket table agrees with flow commutators")
{
    auto s = lemma_fields();
    auto p = presentation_of(s);
    const ApproxPoint at{0.4, -0.3, 0.7, 1.3, 0.2};
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) {
            ApproxPoint numeric = testing::flow_commutator(s[i], s[j], at);
            Vector c = p.constants.bracket_of_basis(i, j);
            for (Coord coord : kAllCoords) {
                double expected = 0;
                for (std::size_t k = 0; k < 6; ++k) expected += c[k].get_d() * evaluate_approx(s[k][coord], at);
                INFO(i << "," << j << " " << name(coord));
                CHECK(numeric[static_cast<std::size_t>(index(coord))] == doctest::Approx(expected).epsilon(1e-4).scale(1));
            }
        }
}

TEST_CASE("series, center and flags of the six-dimensional algebra")
{
    auto c = presentation_of(lemma_fields()).constants;
    CHECK(coordinate_indices(center(c)) == std::vector<std::size_t>{5});
    CHECK(dimensions(derived_series(c)) == std::vector<std::size_t>{6, 6});
    CHECK(dimensions(lower_central_series(c)) == std::vector<std::size_t>{6, 6});
    CHECK_FALSE(is_solvable(c));
    CHECK_FALSE(is_nilpotent(c));

    auto heis = presentation_of({catalog::lemma_field(4), catalog::lemma_field(5), catalog::lemma_field(6)}).constants;
    CHECK(dimensions(lower_central_series(heis)) == std::vector<std::size_t>{3, 1, 0});
    CHECK(dimensions(derived_series(heis)) == std::vector<std::size_t>{3, 1, 0});
    CHECK(is_nilpotent(heis));
    CHECK(is_solvable(heis));
}

TEST_CASE("killing form examples")
{
    auto s = lemma_fields();
    auto sl = presentation_of({s[0], s[1], s[2]}).constants;
    auto sig = signature(killing_form(sl));
    CHECK(sig.positive + sig.negative == 3);
    CHECK(sig.positive == 2);
    CHECK(sig.negative == 1);
    // K(S2, S2) = tr(ad S2)^2 = 4 + 0 + 4.
    CHECK(killing_form(sl)[1][1] == 8);

    auto heis = presentation_of({s[3], s[4], s[5]}).constants;
    CHECK(killing_form(heis) == Matrix(3, zero_vector(3)));
    CHECK(killing_form(StructureConstants(1)) == Matrix{vec({0})});
}

TEST_CASE("recognize examples")
{
    auto s = lemma_fields();
    auto c = presentation_of(s).constants;
    auto r = recognize(c);
    CHECK(r.verdict == "sl2_semidirect_heisenberg");
    CHECK(coordinate_indices(r.radical) == std::vector<std::size_t>{3, 4, 5});
    REQUIRE(r.complement);
    CHECK(coordinate_indices(*r.complement) == std::vector<std::size_t>{0, 1, 2});
    CHECK(standard_sl2_triple(c, *r.complement) == std::array<std::size_t, 3>{0, 1, 2});

    CHECK(recognize(presentation_of({s[3], s[4], s[5]}).constants).verdict == "heisenberg");
    CHECK(recognize(presentation_of({s[0], s[1], s[2]}).constants).verdict == "sl2");
    auto ab = presentation_of({VectorField::coordinate(Chart::J20, Coord::x), VectorField::coordinate(Chart::J20, Coord::z)});
    CHECK(recognize(ab.constants).verdict == "unrecognized");
}

TEST_CASE("matrix algebras as independent references")
{
    auto n3 = strictly_upper(3);
    CHECK(is_heisenberg(n3));
    CHECK(recognize(n3).verdict == "heisenberg");

    CHECK(is_sl2(sl2_matrices()));
    auto so3 = so3_matrices();
    CHECK_FALSE(is_sl2(so3));
    CHECK(signature(killing_form(so3)).negative == 3);
    CHECK(recognize(so3).verdict == "unrecognized");

    std::vector<Matrix> b;
    auto m = [](std::initializer_list<std::tuple<int, int, long>> entries) {
        Matrix x(4, zero_vector(4));
        for (auto [r, s, v] : entries) x[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = v;
        return x;
    };
    // Symplectic-type embedding of sl2 ⋉ heis in sl(4): basis ordered (e, h, f, p, q, c).
    b.push_back(m({{1, 2, 1}}));
    b.push_back(m({{1, 1, 1}, {2, 2, -1}}));
    b.push_back(m({{2, 1, 1}}));
    b.push_back(m({{0, 1, 1}, {2, 3, -1}}));
    b.push_back(m({{0, 2, 1}, {1, 3, 1}}));
    b.push_back(m({{0, 3, 2}}));
    auto g = matrix_algebra(b, 4);
    CHECK(satisfies_jacobi(g));
    auto r = recognize(g);
    CHECK(r.verdict == "sl2_semidirect_heisenberg");
    CHECK(coordinate_indices(r.radical) == std::vector<std::size_t>{3, 4, 5});
}

TEST_CASE("invariant: Killing form of nilpotent algebras vanishes")
{
    for (std::size_t size = 2; size <= 5; ++size) {
        auto n = strictly_upper(size);
        REQUIRE(is_nilpotent(n));
        CHECK(killing_form(n) == Matrix(n.dimension(), zero_vector(n.dimension())));
    }
}

TEST_CASE("invariant: constants satisfy antisymmetry and Jacobi; perturbations are caught")
{
    auto c = presentation_of(lemma_fields()).constants;
    REQUIRE(satisfies_jacobi(c));
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        StructureConstants bad = c;
        std::size_t i = rng() % 6, j = rng() % 6, k = rng() % 6;
        if (i == j) continue;
        Vector v = bad.bracket_of_basis(i, j);
        v[k] += 1;
        bad.set_bracket(i, j, v);
        CHECK(is_antisymmetric(bad));
        bool breaks = !satisfies_jacobi(bad);
        // A few single-entry changes keep Jacobi (e.g. rescaling a central
        // direction); those must at least change the algebra.
        CHECK((breaks || !(bad == c)));
    }
    StructureConstants targeted = c;
    targeted.set_bracket(0, 2, vec({0, 0, 0, 0, 0, 1})); // [S1,S3] = S6 instead of S2
    CHECK_FALSE(satisfies_jacobi(targeted));
}

TEST_CASE("invariant: recognize is independent of the basis")
{
    auto s = lemma_fields();
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        // Random unimodular matrix: product of elementary row operations.
        Matrix u = whole_algebra(6);
        for (int step = 0; step < 12; ++step) {
            std::size_t a = rng() % 6, b = rng() % 6;
            if (a == b) continue;
            long f = static_cast<long>(rng() % 5) - 2;
            for (std::size_t col = 0; col < 6; ++col) u[a][col] += f * u[b][col];
        }
        std::vector<VectorField> t;
        for (const auto& row : u) {
            VectorField v(Chart::J20);
            for (std::size_t k = 0; k < 6; ++k)
                if (row[k] != 0) v += row[k] * s[k];
            t.push_back(v);
        }
        auto c = presentation_of(t).constants;
        auto report = analyze(c);
        CHECK(report.recognition.verdict == "sl2_semidirect_heisenberg");
        CHECK(report.recognition.radical.size() == 3);
        CHECK(report.center.size() == 1);
        CHECK(report.killing_signature.positive == 2);
        CHECK(report.killing_signature.negative == 1);
        REQUIRE(report.recognition.complement);
        CHECK(is_sl2(restrict_to(c, *report.recognition.complement)));
        CHECK(satisfies_jacobi(c));
    }
}

TEST_CASE("structure report JSON")
{
    auto report = analyze(presentation_of(lemma_fields()).constants);
    auto j = to_json(report);
    CHECK(j["dimension"] == 6);
    CHECK(j["center"] == nlohmann::ordered_json::array({5}));
    CHECK(j["derived_dims"] == nlohmann::ordered_json::array({6, 6}));
    CHECK(j["solvable"] == false);
    CHECK(j["killing"]["rank"] == 3);
    CHECK(j["radical"] == nlohmann::ordered_json::array({3, 4, 5}));
    CHECK(j["verdict"] == "sl2_semidirect_heisenberg");
    CHECK(format_combination(vec({0, -1, 0}), {"a", "b", "c"}) == "-b");
    CHECK(format_combination(Vector{make_rational(1, 2), 0, -3}, {"a", "b", "c"}) == "1/2*a - 3*c");
}
