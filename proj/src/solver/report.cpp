#include "mongesym/solver.hpp"

#include "mongesym/error.hpp"
#include "mongesym/presentation.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace mongesym {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void progress(const SolveOptions& o, const DegreeRow& row, std::string_view unit)
{
    if (!o.progress) return;
    std::ostringstream s;
    s << unit << ' ' << row.degree << ": " << row.unknowns << " unknowns, " << row.rows << " rows, dimension "
      << row.dimension;
    o.progress(s.str());
}

void solve_polynomial(const MongeEquation& m, const SolveOptions& o, SolveReport& r)
{
    Distribution2 d = distribution_from_monge(m);
    Ansatz top;
    NullspaceResult top_ns;
    for (int degree = 0; degree <= o.max_degree; ++degree) {
        auto start = std::chrono::steady_clock::now();
        Ansatz a = build_ansatz({degree, o.offsets});
        auto sys = determining_equations(d, a, o.threads);
        auto ns = nullspace(sys);
        DegreeRow row{degree, a.unknowns.size(), sys.rows.size(), ns.dimension, seconds_since(start)};
        r.table.push_back(row);
        progress(o, row, "degree");
        top = std::move(a);
        top_ns = std::move(ns);
    }
    for (const auto& v : top_ns.basis) r.basis.push_back(top.field(v));
    if (o.verify) {
        bool ok = true;
        for (const auto& f : r.basis) ok = ok && is_symmetry(f, d).holds;
        r.verified = ok;
    }
    try {
        r.constants = presentation_of(r.basis).constants;
    } catch (const Error&) {
        r.constants.reset();
    }
}

void solve_jet(const MongeEquation& m, const SolveOptions& o, SolveReport& r)
{
    JetSolution top;
    for (int order = o.jet_order + 2; order <= o.max_degree; ++order) {
        auto start = std::chrono::steady_clock::now();
        JetSolution s = solve_jets(m, o.base_point, order, o.jet_order, o.threads);
        DegreeRow row{order, s.unknowns, s.rows, s.dimension, seconds_since(start)};
        r.table.push_back(row);
        progress(o, row, "order");
        top = std::move(s);
    }
    if (r.table.empty()) throw Error("jet method needs --degree >= jet order + 2");
    r.basis = top.jets;
    if (o.verify) r.verified = jets_verified(m, o.base_point, top);
    if (top.next_dimension == top.dimension) {
        try {
            r.constants = jet_structure_constants(top);
        } catch (const Error&) {
            r.constants.reset();
        }
    }
}

} // namespace

std::string method_name(SolveMethod m)
{
    return m == SolveMethod::Jet ? "jet" : "poly";
}

std::optional<SolveMethod> method_from_name(std::string_view name)
{
    if (name == "jet") return SolveMethod::Jet;
    if (name == "poly") return SolveMethod::Polynomial;
    return std::nullopt;
}

SolveReport symmetry_dimension(const MongeEquation& m, const SolveOptions& o)
{
    if (o.max_degree < 0) throw Error("maximum degree must be non-negative");
    SolveReport r;
    r.equation = m.label;
    r.method = o.method;
    if (o.method == SolveMethod::Polynomial) {
        r.offsets = o.offsets;
        std::sort(r.offsets.begin(), r.offsets.end());
        r.offsets.erase(std::unique(r.offsets.begin(), r.offsets.end()), r.offsets.end());
        build_ansatz({0, r.offsets});
        solve_polynomial(m, o, r);
    } else {
        r.base_point = o.base_point;
        r.jet_order = o.jet_order;
        solve_jet(m, o, r);
    }
    r.dimension = r.table.back().dimension;
    const std::size_t n = r.table.size();
    r.stabilized = n >= 2 && r.table[n - 1].dimension == r.table[n - 2].dimension;
    return r;
}

nlohmann::ordered_json to_json(const SolveReport& r, bool timings)
{
    nlohmann::ordered_json j;
    j["equation"] = r.equation;
    j["method"] = method_name(r.method);
    if (r.method == SolveMethod::Polynomial) {
        nlohmann::ordered_json offs = nlohmann::ordered_json::array();
        for (const auto& q : r.offsets) offs.push_back(to_string(q));
        j["offsets"] = offs;
    } else {
        nlohmann::ordered_json p;
        for (Coord c : kAllCoords) p[std::string(name(c))] = to_string(r.base_point.at(c));
        j["base_point"] = p;
        j["jet_order"] = r.jet_order;
    }
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (const auto& row : r.table)
        table.push_back({{"degree", row.degree}, {"unknowns", row.unknowns}, {"rows", row.rows}, {"dimension", row.dimension}});
    j["table"] = table;
    j["stabilized"] = r.stabilized;
    j["stabilization"] = "heuristic: the last two dimensions agree";
    j["dimension"] = r.dimension;
    j["basis_kind"] = r.method == SolveMethod::Polynomial ? "exact" : "jet";
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& f : r.basis) basis.push_back(to_json(f));
    j["basis"] = basis;
    if (r.verified)
        j["verified"] = *r.verified;
    else
        j["verified"] = nullptr;
    if (r.constants)
        j["structure"] = to_json(analyze(*r.constants));
    else
        j["structure"] = nullptr;
    if (timings) {
        nlohmann::ordered_json t = nlohmann::ordered_json::array();
        double total = 0;
        for (const auto& row : r.table) {
            t.push_back({{"degree", row.degree}, {"seconds", row.seconds}});
            total += row.seconds;
        }
        j["timings"] = {{"per_degree", t}, {"total_seconds", total}};
    }
    return j;
}

MaximalityVerdict maximality_argument(const StructureConstants& six, const std::vector<SolveReport>& candidates)
{
    MaximalityVerdict v;
    v.six_dimensional_solvable = is_solvable(six);
    bool all_solvable = true;
    for (const auto& c : candidates) {
        if (c.dimension != 7 || !c.constants || c.constants->dimension() != 7)
            throw Error("maximality candidate '" + c.equation + "' is not a 7-dimensional algebra with constants");
        MaximalityVerdict::Candidate entry{c.equation, 7, is_solvable(*c.constants),
                                           dimensions(derived_series(*c.constants))};
        all_solvable = all_solvable && entry.solvable;
        v.candidates.push_back(std::move(entry));
    }
    v.holds = all_solvable && !v.six_dimensional_solvable && !candidates.empty();
    v.verdict = v.holds ? "the 6-dimensional algebra is not solvable, so it embeds in none of the solvable "
                          "7-dimensional candidates; it is maximal among them"
                        : "maximality not established";
    return v;
}

nlohmann::ordered_json to_json(const MaximalityVerdict& v)
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json cands = nlohmann::ordered_json::array();
    for (const auto& c : v.candidates)
        cands.push_back({{"equation", c.equation},
                         {"dimension", c.dimension},
                         {"solvable", c.solvable},
                         {"derived_dims", c.derived_dims}});
    j["candidates"] = cands;
    j["six_dimensional_solvable"] = v.six_dimensional_solvable;
    j["holds"] = v.holds;
    j["verdict"] = v.verdict;
    return j;
}

} // namespace mongesym
