#include "mongesym/catalog.hpp"

#include "mongesym/error.hpp"

#include <regex>

namespace mongesym::catalog {

namespace {

Expr j20(std::string_view text)
{
    return parse(text, Chart::J20);
}

VectorField field(std::initializer_list<std::pair<Coord, const char*>> entries)
{
    VectorField v(Chart::J20);
    for (const auto& [c, text] : entries) v.set(c, j20(text));
    return v;
}

} // namespace

MongeEquation eq2()
{
    return {j20("y + y2^(1/3)"), "eq2"};
}

MongeEquation flat()
{
    return {j20("y2^2"), "flat"};
}

MongeEquation eq1(const Rational& invariant)
{
    Expr y = j20("y"), y1 = j20("y1"), y2 = j20("y2");
    Rational c = 1 + invariant * invariant;
    Expr inner = y2 * y2 + y1 * y1 * make_rational(10, 3) + y * y * c;
    return {inner * make_rational(-1, 2), "eq1(" + to_string(invariant) + ")"};
}

MongeEquation dz13(const Rational& r1, const Rational& r2)
{
    Expr y = j20("y"), y1 = j20("y1"), y2 = j20("y2");
    return {y2 * y2 + y1 * y1 * r1 + y * y * r2, "dz13(" + to_string(r1) + "," + to_string(r2) + ")"};
}

MongeEquation strazzullo()
{
    return {j20("1 + exp(-4/3*y)*(y2 - 1/2*y1^2)^(2/3)"), "strazzullo"};
}

VectorField lemma_field(int i)
{
    switch (i) {
    case 1: return field({{Coord::y, "x"}, {Coord::y1, "1"}, {Coord::z, "1/2*x^2"}});
    case 2: return field({{Coord::x, "x"}, {Coord::y, "-y"}, {Coord::y1, "-2*y1"}, {Coord::y2, "-3*y2"}});
    case 3: return field({{Coord::x, "y"}, {Coord::y1, "-y1^2"}, {Coord::y2, "-3*y1*y2"}, {Coord::z, "1/2*y^2"}});
    case 4: return field({{Coord::x, "1"}});
    case 5: return field({{Coord::y, "1"}, {Coord::z, "x"}});
    case 6: return field({{Coord::z, "1"}});
    default: throw Error("symmetry field index out of range: " + std::to_string(i));
    }
}

PlaneField equiaffine_generator(int i)
{
    auto plane = [](const char* xi, const char* eta) {
        return PlaneField{parse(xi, Chart::Plane), parse(eta, Chart::Plane)};
    };
    switch (i) {
    case 1: return plane("0", "x");
    case 2: return plane("x", "-y");
    case 3: return plane("y", "0");
    case 4: return plane("1", "0");
    case 5: return plane("0", "1");
    default: throw Error("equiaffine generator index out of range: " + std::to_string(i));
    }
}

std::optional<MongeEquation> find_equation(std::string_view key)
{
    const std::string k(key);
    if (k == "eq2") return eq2();
    if (k == "flat") return flat();
    if (k == "strazzullo") return strazzullo();
    static const std::regex eq1_re(R"(eq1\(\s*([-+]?\d+(?:/\d+)?)\s*\))");
    static const std::regex dz13_re(R"(dz13\(\s*([-+]?\d+(?:/\d+)?)\s*,\s*([-+]?\d+(?:/\d+)?)\s*\))");
    std::smatch m;
    try {
        if (std::regex_match(k, m, eq1_re)) return eq1(parse_rational(m[1].str()));
        if (std::regex_match(k, m, dz13_re)) return dz13(parse_rational(m[1].str()), parse_rational(m[2].str()));
    } catch (const std::invalid_argument& e) {
        throw Error(std::string("bad catalog parameter: ") + e.what());
    }
    return std::nullopt;
}

MongeEquation equation_by_key(std::string_view key)
{
    if (auto m = find_equation(key)) return *m;
    throw Error("unknown equation key '" + std::string(key) + "'");
}

std::optional<VectorField> find_field(std::string_view key)
{
    static const std::regex s_re(R"(S([1-6]))");
    static const std::regex affine_re(R"(equiaffine([1-5]))");
    const std::string k(key);
    std::smatch m;
    if (std::regex_match(k, m, s_re)) return lemma_field(std::stoi(m[1].str()));
    if (std::regex_match(k, m, affine_re)) {
        PlaneField g = equiaffine_generator(std::stoi(m[1].str()));
        return VectorField(Chart::Plane, {g.xi, g.eta});
    }
    return std::nullopt;
}

VectorField field_by_key(std::string_view key)
{
    if (auto v = find_field(key)) return *v;
    throw Error("unknown field key '" + std::string(key) + "'");
}

std::vector<std::string> equation_keys()
{
    return {"eq2", "flat", "eq1(I)", "dz13(r1,r2)", "strazzullo"};
}

std::vector<std::string> field_keys()
{
    return {"S1", "S2", "S3", "S4", "S5", "S6",
            "equiaffine1", "equiaffine2", "equiaffine3", "equiaffine4", "equiaffine5"};
}

} // namespace mongesym::catalog
