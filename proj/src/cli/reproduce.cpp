#include "mongesym/catalog.hpp"
#include "mongesym/cli.hpp"
#include "mongesym/error.hpp"
#include "mongesym/flow.hpp"
#include "mongesym/linalg.hpp"
#include "mongesym/presentation.hpp"
#include "mongesym/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace mongesym::cli {

namespace {

const std::vector<std::string> kGoldenTable = {
    "[S1,S2] = -2*S1", "[S1,S3] = S2", "[S1,S4] = -S5", "[S1,S5] = 0",  "[S1,S6] = 0",
    "[S2,S3] = -2*S3", "[S2,S4] = -S4", "[S2,S5] = S5", "[S2,S6] = 0",  "[S3,S4] = 0",
    "[S3,S5] = -S4",   "[S3,S6] = 0",  "[S4,S5] = S6", "[S4,S6] = 0",  "[S5,S6] = 0",
};

const std::vector<std::string> kNames = {"S1", "S2", "S3", "S4", "S5", "S6"};

struct State {
    const ChecklistOptions& options;
    std::optional<StructureConstants> six;
    std::vector<SolveReport> seven;
    std::vector<std::pair<std::string, StructureConstants>> presentations;

    bool fault(std::string_view item) const { return options.inject_fault == item; }
};

struct Item {
    std::string name;
    std::string claim;
    double limit;
    void (*body)(State&, CheckItem&);
};

void expect(CheckItem& item, bool ok, const std::string& what)
{
    if (!ok) item.diagnostics.push_back(what);
}

Vector unit(std::size_t n, std::size_t i)
{
    return unit_vector(n, i);
}

/// S1..S6, with a small d/dy added to field `perturbed` (1-based) if nonzero.
std::vector<VectorField> lemma_fields(int perturbed = 0)
{
    std::vector<VectorField> out;
    for (int i = 1; i <= 6; ++i) {
        VectorField f = catalog::lemma_field(i);
        if (i == perturbed) f += make_rational(1, 100) * VectorField::coordinate(Chart::J20, Coord::y);
        out.push_back(std::move(f));
    }
    return out;
}

const StructureConstants& six_of(State& st)
{
    if (!st.six) st.six = presentation_of(lemma_fields()).constants;
    return *st.six;
}

std::string dims_of(const SolveReport& r)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < r.table.size(); ++i) s << (i ? ", " : "") << r.table[i].dimension;
    return s.str();
}

void lemma_item(State& st, CheckItem& item)
{
    Distribution2 d = distribution_from_monge(catalog::eq2());
    auto fields = lemma_fields(st.fault("lemma-fields") ? 3 : 0);
    std::size_t zero = 0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        auto chk = is_symmetry(fields[i], d);
        for (std::size_t k = 0; k < 6; ++k) {
            if (chk.residuals[k].is_zero())
                ++zero;
            else
                item.diagnostics.push_back(kNames[i] + " residual " + std::to_string(k + 1) + " = " +
                                           to_string(chk.residuals[k]));
        }
    }
    item.notes.push_back(std::to_string(zero) + " of 36 residuals are symbolically zero");
}

void structure_item(State& st, CheckItem& item)
{
    StructureConstants c = six_of(st);
    if (st.fault("structure")) c.set_bracket(0, 2, unit(6, 5));

    auto table = bracket_table(c, kNames);
    expect(item, table.size() == kGoldenTable.size(), "bracket table has the wrong number of lines");
    for (std::size_t k = 0; k < std::min(table.size(), kGoldenTable.size()); ++k)
        expect(item, table[k] == kGoldenTable[k], "expected " + kGoldenTable[k] + ", got " + table[k]);

    auto s = lemma_fields();
    const std::vector<ApproxPoint> points = {{0.4, -0.3, 0.7, 1.3, 0.2}, {-0.2, 0.5, -0.6, 0.8, 1.1}};
    std::size_t compared = 0;
    for (const auto& p : points)
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j) {
                ApproxPoint est = flow_commutator(s[i], s[j], p);
                for (Coord x : kAllCoords) {
                    double exact = 0;
                    for (std::size_t k = 0; k < 6; ++k)
                        if (c(i, j, k) != 0) exact += c(i, j, k).get_d() * evaluate_approx(s[k][x], p);
                    const double got = est[static_cast<std::size_t>(index(x))];
                    ++compared;
                    if (std::abs(got - exact) > 1e-4 * (1 + std::abs(exact))) {
                        std::ostringstream m;
                        m << "flow commutator of " << kNames[i] << ", " << kNames[j] << " d/" << name(x) << " is "
                          << got << ", constants give " << exact;
                        item.diagnostics.push_back(m.str());
                    }
                }
            }
    item.notes.push_back(std::to_string(compared) + " flow-commutator components agree to 1e-4");

    Recognition r = recognize(c);
    expect(item, r.verdict == "sl2_semidirect_heisenberg", "verdict is " + r.verdict);
    expect(item, r.radical == Matrix{unit(6, 3), unit(6, 4), unit(6, 5)}, "radical is not <S4,S5,S6>");
    expect(item, center(c) == Matrix{unit(6, 5)}, "center is not <S6>");
    st.presentations.emplace_back("S1..S6", six_of(st));
}

void projection_item(State& st, CheckItem& item)
{
    auto a = project_algebra(lemma_fields(st.fault("projection") ? 1 : 0));
    expect(item, a.kernel == Matrix{unit(6, 5)}, "kernel of the projection is not <S6>");
    for (int i = 1; i <= 5; ++i) {
        auto g = catalog::equiaffine_generator(i);
        const auto& image = a.images[static_cast<std::size_t>(i - 1)];
        expect(item, image == prolong_plane_field(g.xi, g.eta),
               "projection of S" + std::to_string(i) + " is " + to_string(image) +
                   ", not the prolongation of equiaffine" + std::to_string(i));
    }
}

std::vector<MongeEquation> catalog_equations()
{
    return {catalog::eq2(),      catalog::flat(),       catalog::eq1(0),       catalog::eq1(make_rational(3, 4)),
            catalog::dz13(1, 1), catalog::dz13(10, 9), catalog::strazzullo()};
}

void genericity_item(State& st, CheckItem& item)
{
    Expr expected = parse(st.fault("genericity") ? "-1/9*y2^(-5/3)" : "-2/9*y2^(-5/3)", Chart::J20);
    Expr h = genericity_hessian(catalog::eq2());
    expect(item, h == expected, "hessian of eq2 is " + to_string(h));
    for (const auto& m : catalog_equations()) {
        auto g = genericity_report(m);
        expect(item, g.determinant_sign != 0, "frame determinant of " + m.label + " is not +-hessian");
        if (g.determinant_sign != 0)
            expect(item, g.determinant == scale(g.hessian, g.determinant_sign), "sign check failed for " + m.label);
    }
}

SolveReport solve(const MongeEquation& m, SolveMethod method, int degree, unsigned threads)
{
    SolveOptions o;
    o.method = method;
    o.max_degree = degree;
    o.threads = threads;
    return symmetry_dimension(m, o);
}

void landscape_item(State& st, CheckItem& item)
{
    struct Case {
        MongeEquation equation;
        SolveMethod method;
        int degree;
        std::size_t expected;
        bool must_stabilize;
    };
    const std::size_t flat_expected = st.fault("landscape") ? 15 : 14;
    const std::vector<Case> cases = {
        {catalog::flat(), SolveMethod::Jet, 9, flat_expected, true},
        {catalog::flat(), SolveMethod::Polynomial, 7, flat_expected, true},
        {catalog::dz13(1, 1), SolveMethod::Jet, 9, 7, true},
        {catalog::dz13(10, 9), SolveMethod::Jet, 9, 14, true},
        {catalog::eq2(), SolveMethod::Polynomial, 2, 6, false},
        {catalog::eq1(1), SolveMethod::Jet, 9, 7, true},
        {catalog::eq1(0), SolveMethod::Jet, 9, 14, true},
    };
    for (const auto& c : cases) {
        SolveReport r = solve(c.equation, c.method, c.degree, st.options.threads);
        const std::string what = c.equation.label + " (" + method_name(c.method) + ", " +
                                 (c.method == SolveMethod::Jet ? "K" : "degree") + " up to " +
                                 std::to_string(c.degree) + ")";
        item.notes.push_back(what + ": dimensions " + dims_of(r) + (r.stabilized ? ", stabilized" : ""));
        expect(item, r.dimension == c.expected,
               what + " has dimension " + std::to_string(r.dimension) + ", expected " + std::to_string(c.expected));
        if (c.must_stabilize) expect(item, r.stabilized, what + " did not stabilize");
        expect(item, r.verified == true, what + " basis failed re-verification");
        expect(item, r.constants.has_value(), what + " has no structure constants");
        if (r.constants) st.presentations.emplace_back(what, *r.constants);
        if (r.dimension == 7 && r.constants) st.seven.push_back(r);
        if (c.equation.label == "eq2")
            for (const auto& f : lemma_fields())
                expect(item, express_in_basis(f, r.basis).has_value(), "a lemma field is outside the degree-2 span");
    }
}

void maximality_item(State& st, CheckItem& item)
{
    StructureConstants six = six_of(st);
    if (st.fault("maximality")) six = restrict_to(six, radical(six));
    expect(item, !st.seven.empty(), "no 7-dimensional algebra available from the landscape item");
    if (st.seven.empty()) return;
    auto v = maximality_argument(six, st.seven);
    for (const auto& c : v.candidates)
        expect(item, c.solvable, c.equation + " is not solvable");
    expect(item, !v.six_dimensional_solvable, "the 6-dimensional algebra is solvable");
    expect(item, v.holds, "maximality argument does not hold");
    item.notes.push_back(v.verdict);
}

void properties_item(State& st, CheckItem& item)
{
    for (const auto& [label, c] : st.presentations)
        expect(item, satisfies_jacobi(c), "Jacobi fails for " + label);
    item.notes.push_back("Jacobi holds on " + std::to_string(st.presentations.size()) + " presentations");

    std::size_t compared = 0;
    for (const auto& m : catalog_equations()) {
        Distribution2 d = distribution_from_monge(m);
        for (int degree = 0; degree <= 1; ++degree) {
            Ansatz a = build_ansatz({degree, {Rational(0)}});
            auto ns = nullspace(determining_equations(d, a, st.options.threads));
            ++compared;
            expect(item, row_basis(ns.basis) == brute_force_nullspace(m, a),
                   "solver and coefficient matching differ on " + m.label + " at degree " + std::to_string(degree));
        }
    }
    item.notes.push_back("solver equals direct coefficient matching in " + std::to_string(compared) + " runs");

    auto report = [&](const MongeEquation& m, SolveMethod method, int degree, unsigned threads) {
        return to_json(solve(m, method, degree, threads)).dump();
    };
    expect(item, report(catalog::dz13(1, 1), SolveMethod::Jet, 7, 1) == report(catalog::dz13(1, 1), SolveMethod::Jet, 7, 3),
           "jet reports differ between runs");
    expect(item, report(catalog::eq2(), SolveMethod::Polynomial, 2, 1) == report(catalog::eq2(), SolveMethod::Polynomial, 2, 4),
           "polynomial reports differ between runs");

    Distribution2 d = distribution_from_monge(catalog::eq2());
    auto fields = lemma_fields(st.fault("properties") ? 0 : 3);
    expect(item, !is_symmetry(fields[2], d).holds, "negative control: perturbed S3 passed verification");
    StructureConstants bad = six_of(st);
    bad.set_bracket(0, 2, unit(6, 5));
    expect(item, !satisfies_jacobi(bad), "negative control: perturbed constants passed Jacobi");
}

double finite_difference(const Expr& f, ApproxPoint p, Coord c)
{
    auto central = [&](double h) {
        ApproxPoint lo = p, hi = p;
        lo[static_cast<std::size_t>(index(c))] -= h;
        hi[static_cast<std::size_t>(index(c))] += h;
        return (evaluate_approx(f, hi) - evaluate_approx(f, lo)) / (2 * h);
    };
    const double h = 1e-3;
    return (4 * central(h / 2) - central(h)) / 3;
}

void grammar_item(State& st, CheckItem& item)
{
    MongeEquation m = catalog::strazzullo();
    Expr source = parse("1 + exp(-4/3*y)*(y2 - 1/2*y1^2)^(2/3)", Chart::J20);
    expect(item, source == m.rhs, "source text does not parse to the catalog equation");
    expect(item, parse(to_string(m.rhs), Chart::J20) == m.rhs, "printing and parsing do not round-trip");
    Expr h = genericity_hessian(m);
    expect(item, !h.is_zero(), "genericity hessian vanishes");

    Expr sampled = st.fault("grammar-edge") ? m.rhs + make_rational(1, 1000) * Expr::variable(Chart::J20, Coord::x) : m.rhs;
    Expr dy2 = differentiate(m.rhs, Coord::y2);
    const std::vector<ApproxPoint> points = {
        {0.3, 0.2, 0.5, 1.7, 0.1}, {-0.4, 0.7, -0.3, 2.2, 1.0}, {1.1, -0.5, 0.9, 0.8, -0.6}};
    auto compare = [&](const std::string& what, double exact, double approx) {
        if (std::abs(exact - approx) > 1e-6 * std::abs(exact) + 1e-12) {
            std::ostringstream s;
            s << what << ": derivative " << exact << ", finite difference " << approx;
            item.diagnostics.push_back(s.str());
        }
    };
    for (const auto& p : points) {
        for (Coord c : kAllCoords)
            compare("dF/d" + std::string(name(c)), evaluate_approx(differentiate(m.rhs, c), p),
                    finite_difference(sampled, p, c));
        compare("d2F/dy2^2", evaluate_approx(h, p), finite_difference(dy2, p, Coord::y2));
    }
    item.notes.push_back("first partials and the hessian match finite differences at 3 points");
}

const std::vector<Item>& items()
{
    static const std::vector<Item> list = {
        {"lemma-fields", "S1..S6 are symmetries of eq2, all 36 residuals zero", 5, lemma_item},
        {"structure", "bracket table matches the golden table and flows; sl(2) x| heisenberg with radical <S4,S5,S6>",
         5, structure_item},
        {"projection", "projection kernel is <S6>; S1..S5 project to prolonged equiaffine fields", 2, projection_item},
        {"genericity", "eq2 hessian is -2/9*y2^(-5/3); frame determinant is +-hessian on the catalog", 2,
         genericity_item},
        {"landscape", "dimensions 14 (flat), 7 (dz13(1,1)), 14 (dz13(10,9)), 6 (eq2 at degree 2); eq1(1) 7, eq1(0) 14", 600,
         landscape_item},
        {"maximality", "7-dimensional algebras are solvable, <S1..S6> is not", 10, maximality_item},
        {"properties", "Jacobi, oracle equivalence at degrees 0-1, determinism, negative controls", 120,
         properties_item},
        {"grammar-edge", "strazzullo parses, hessian nonzero, derivatives match finite differences to 1e-6", 2,
         grammar_item},
    };
    return list;
}

} // namespace

std::vector<std::string> checklist_names()
{
    std::vector<std::string> out;
    for (const auto& i : items()) out.push_back(i.name);
    return out;
}

std::vector<CheckItem> run_checklist(const ChecklistOptions& options)
{
    State st{options, std::nullopt, {}, {}};
    std::vector<CheckItem> out;
    int id = 0;
    for (const auto& spec : items()) {
        CheckItem item;
        item.id = ++id;
        item.name = spec.name;
        item.claim = spec.claim;
        item.limit_seconds = spec.limit;
        auto start = std::chrono::steady_clock::now();
        try {
            spec.body(st, item);
        } catch (const std::exception& e) {
            item.diagnostics.push_back(std::string("exception: ") + e.what());
        }
        item.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (item.seconds > item.limit_seconds) {
            std::ostringstream s;
            s << "runtime " << item.seconds << " s exceeds the limit of " << item.limit_seconds << " s";
            item.diagnostics.push_back(s.str());
        }
        item.passed = item.diagnostics.empty();
        if (options.on_item) options.on_item(item);
        out.push_back(std::move(item));
    }
    return out;
}

nlohmann::ordered_json to_json(const std::vector<CheckItem>& items, bool timings)
{
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& i : items) {
        nlohmann::ordered_json j;
        j["id"] = i.id;
        j["name"] = i.name;
        j["claim"] = i.claim;
        j["passed"] = i.passed;
        j["limit_seconds"] = i.limit_seconds;
        if (timings) j["seconds"] = i.seconds;
        j["diagnostics"] = i.diagnostics;
        j["notes"] = i.notes;
        list.push_back(j);
        passed += i.passed ? 1 : 0;
    }
    nlohmann::ordered_json j;
    j["report"] = "reproduce";
    j["items"] = list;
    j["passed"] = passed;
    j["total"] = items.size();
    j["all_passed"] = passed == items.size();
    return j;
}

} // namespace mongesym::cli
