#include "commands.hpp"

#include "mongesym/catalog.hpp"
#include "mongesym/cli.hpp"
#include "mongesym/error.hpp"
#include "mongesym/linalg.hpp"
#include "mongesym/presentation.hpp"
#include "mongesym/solver.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mongesym::cli {

namespace {

std::string equation_line(const MongeEquation& m)
{
    return m.label + ": z' = " + to_string(m.rhs);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

Rational rational_arg(const std::string& text, std::string_view what)
{
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw Error("bad " + std::string(what) + " '" + text + "': expected an integer or p/q");
    }
}

void emit(const Output& o, Streams s, const std::string& text)
{
    if (o.path.empty()) {
        s.out << text;
        return;
    }
    std::ofstream f(o.path);
    if (!f) throw Error("cannot write '" + o.path + "'");
    f << text;
}

std::string dump(const nlohmann::ordered_json& j)
{
    return j.dump(2) + "\n";
}

std::string subspace_text(const Matrix& m, const std::vector<std::string>& names)
{
    if (m.empty()) return "0";
    std::vector<std::string> parts;
    for (const auto& row : m) parts.push_back(format_combination(row, names));
    return "<" + join(parts, ", ") + ">";
}

std::string dims_text(const std::vector<std::size_t>& dims)
{
    std::vector<std::string> parts;
    for (auto d : dims) parts.push_back(std::to_string(d));
    return join(parts, ", ");
}

const char* yes_no(bool b)
{
    return b ? "yes" : "no";
}

void structure_text(std::ostream& t, const StructureReport& r, const std::vector<std::string>& names)
{
    t << "dimension " << r.dimension << '\n';
    t << "center " << subspace_text(r.center, names) << '\n';
    t << "derived series " << dims_text(r.derived_dims) << '\n';
    t << "lower central series " << dims_text(r.lcs_dims) << '\n';
    t << "solvable " << yes_no(r.solvable) << ", nilpotent " << yes_no(r.nilpotent) << ", abelian "
      << yes_no(r.abelian) << '\n';
    t << "Killing form rank " << r.killing_rank << ", signature (" << r.killing_signature.positive << ", "
      << r.killing_signature.negative << "), nullity " << r.killing_signature.zero << '\n';
    t << "radical " << subspace_text(r.recognition.radical, names) << '\n';
    if (r.recognition.complement) t << "Levi complement " << subspace_text(*r.recognition.complement, names) << '\n';
    t << "verdict " << r.recognition.verdict << '\n';
}

std::string locus_verdict(const GenericityReport& g)
{
    if (!g.generic) return "not generic (the hessian vanishes identically)";
    if (g.excluded_locus.empty()) return "generic everywhere";
    std::vector<std::string> parts;
    for (auto p : g.excluded_locus) {
        auto at = p.find(" = ");
        if (at != std::string::npos) p.replace(at, 3, " != ");
        parts.push_back(p);
    }
    return "generic on " + join(parts, " and ");
}

nlohmann::ordered_json residuals_json(const std::array<Expr, 6>& r)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& e : r) j.push_back(to_string(e));
    return j;
}

std::string residual_triple(const std::array<Expr, 6>& r, std::size_t from)
{
    return to_string(r[from]) + ", " + to_string(r[from + 1]) + ", " + to_string(r[from + 2]);
}

std::vector<NamedField> resolve_fields(const std::vector<std::string>& sources)
{
    if (sources.empty()) throw Error("at least one field is required");
    std::vector<NamedField> out;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        out.push_back(resolve_field(sources[i], i + 1));
        if (out.back().field.chart() != Chart::J20)
            throw Error("field '" + out.back().name + "' lives on chart " + std::string(name(out.back().field.chart())) +
                        "; symmetries of a Monge distribution live on J20");
    }
    return out;
}

Assignment base_point_arg(const std::string& text)
{
    auto parts = split(text, ',');
    if (parts.size() != kCoordCount) throw Error("base point needs five values x,y,y1,y2,z");
    Assignment p;
    for (std::size_t i = 0; i < kCoordCount; ++i) p[kAllCoords[i]] = rational_arg(parts[i], "base point coordinate");
    return p;
}

} // namespace

MongeEquation resolve_equation(std::string_view source)
{
    if (auto m = catalog::find_equation(source)) return *m;
    try {
        return MongeEquation{parse(source, Chart::J20), std::string(source)};
    } catch (const ParseError& e) {
        throw Error("cannot read equation '" + std::string(source) + "': not a catalog key, and not an expression (" +
                    e.what() + ")");
    }
}

NamedField resolve_field(std::string_view source, std::size_t position)
{
    const std::string text(source);
    if (auto v = catalog::find_field(text)) return {text, *v};
    if (text.rfind("d/d", 0) == 0) {
        if (auto c = coord_from_name(text.substr(3))) return {text, VectorField::coordinate(Chart::J20, *c)};
    }
    if (!text.empty() && text.front() == '{') {
        try {
            return {"V" + std::to_string(position), vector_field_from_json(nlohmann::json::parse(text))};
        } catch (const nlohmann::json::exception& e) {
            throw Error("field " + std::to_string(position) + " is not valid JSON: " + e.what());
        }
    }
    throw Error("unknown field '" + text + "': expected a catalog key, d/d<coordinate> or vector-field JSON");
}

ProjectionAnalysis project_algebra(const std::vector<VectorField>& basis)
{
    ProjectionAnalysis a;
    for (const auto& b : basis) a.images.push_back(project_to_J2(b));

    std::map<std::pair<int, std::string>, std::size_t> columns;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> entries(basis.size());
    for (std::size_t i = 0; i < a.images.size(); ++i) {
        const VectorField& v = a.images[i];
        for (Coord c : coordinates(v.chart()))
            for (const auto& t : v[c].terms()) {
                std::string key = to_string(Expr::from_terms(v.chart(), {Term{Rational(1), t.monomial, t.atoms}}));
                auto it = columns.emplace(std::make_pair(index(c), key), columns.size()).first;
                entries[i].emplace_back(it->second, t.coefficient);
            }
    }
    const std::size_t n = basis.size();
    if (columns.empty()) {
        a.kernel = whole_algebra(n);
    } else {
        Matrix rows(n, zero_vector(columns.size()));
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [col, value] : entries[i]) rows[i][col] += value;
        a.kernel = row_basis(nullspace(transpose(rows, columns.size()), n));
    }

    for (const auto& image : a.images) {
        std::optional<std::string> match;
        if (!image.is_zero())
            for (int g = 1; g <= 5 && !match; ++g) {
                auto gen = catalog::equiaffine_generator(g);
                if (prolong_plane_field(gen.xi, gen.eta) == image) match = "equiaffine" + std::to_string(g);
            }
        a.matches.push_back(match);
    }
    return a;
}

int cmd_genericity(const std::string& equation, const Output& o, Streams s)
{
    MongeEquation m = resolve_equation(equation);
    GenericityReport g = genericity_report(m);
    if (o.json) {
        nlohmann::ordered_json j;
        j["report"] = "genericity";
        j["equation"] = m.label;
        j["rhs"] = to_string(m.rhs);
        j["hessian"] = to_string(g.hessian);
        j["determinant"] = to_string(g.determinant);
        j["determinant_sign"] = g.determinant_sign;
        j["generic"] = g.generic;
        j["excluded_locus"] = g.excluded_locus;
        j["verdict"] = locus_verdict(g);
        emit(o, s, dump(j));
        return kOk;
    }
    std::ostringstream t;
    t << equation_line(m) << '\n';
    t << "hessian d2F/dy2^2 = " << to_string(g.hessian) << '\n';
    t << "frame determinant = " << to_string(g.determinant) << '\n';
    if (g.determinant_sign == 1)
        t << "determinant = hessian\n";
    else if (g.determinant_sign == -1)
        t << "determinant = -hessian\n";
    else
        t << "determinant and hessian do not agree up to sign\n";
    t << "verdict: " << locus_verdict(g) << '\n';
    emit(o, s, t.str());
    return kOk;
}

int cmd_verify(const std::string& equation, const std::vector<std::string>& fields, const Output& o, Streams s)
{
    MongeEquation m = resolve_equation(equation);
    auto named = resolve_fields(fields);
    Distribution2 d = distribution_from_monge(m);

    std::size_t passed = 0;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    std::ostringstream t;
    t << equation_line(m) << '\n';
    for (const auto& f : named) {
        SymmetryCheck chk = is_symmetry(f.field, d);
        passed += chk.holds ? 1 : 0;
        list.push_back({{"name", f.name},
                        {"field", to_json(f.field)},
                        {"symmetry", chk.holds},
                        {"residuals", residuals_json(chk.residuals)}});
        t << f.name << ": " << (chk.holds ? "symmetry" : "NOT a symmetry") << '\n';
        t << "  [S,X1] residuals: " << residual_triple(chk.residuals, 0) << '\n';
        t << "  [S,X2] residuals: " << residual_triple(chk.residuals, 3) << '\n';
    }
    const bool all = passed == named.size();
    if (o.json) {
        nlohmann::ordered_json j;
        j["report"] = "verify";
        j["equation"] = m.label;
        j["rhs"] = to_string(m.rhs);
        j["fields"] = list;
        j["passed"] = passed;
        j["all_symmetries"] = all;
        emit(o, s, dump(j));
    } else {
        t << passed << " of " << named.size() << " fields are symmetries\n";
        emit(o, s, t.str());
    }
    return all ? kOk : kMismatch;
}

int cmd_structure(const std::string& equation, const std::vector<std::string>& fields, std::size_t cap,
                  const Output& o, Streams s)
{
    MongeEquation m = resolve_equation(equation);
    auto named = resolve_fields(fields);
    Distribution2 d = distribution_from_monge(m);
    std::vector<VectorField> vfs;
    for (const auto& f : named) {
        if (!is_symmetry(f.field, d).holds) {
            s.err << "error: " << f.name << " is not a symmetry of " << m.label << '\n';
            return kMismatch;
        }
        vfs.push_back(f.field);
    }

    LieAlgebraPresentation p;
    try {
        p = close_under_bracket(vfs, cap);
    } catch (const CapExceeded& e) {
        s.err << "error: " << e.what() << '\n';
        return kMismatch;
    }
    // Inputs keep their names; generated brackets take a catalog name when
    // they equal a catalog field, else B<k>.
    std::vector<std::string> names;
    std::vector<bool> generated;
    for (std::size_t k = 0; k < p.basis.size(); ++k) {
        std::optional<std::string> label;
        for (const auto& f : named)
            if (f.field == p.basis[k]) {
                label = f.name;
                break;
            }
        generated.push_back(!label);
        if (!label)
            for (const auto& key : catalog::field_keys())
                if (catalog::field_by_key(key) == p.basis[k] &&
                    std::find(names.begin(), names.end(), key) == names.end()) {
                    label = key;
                    break;
                }
        names.push_back(label.value_or("B" + std::to_string(k + 1)));
    }
    StructureReport r = analyze(p.constants);
    auto table = bracket_table(p.constants, names);

    std::optional<ProjectionAnalysis> proj;
    std::string proj_error;
    try {
        proj = project_algebra(p.basis);
    } catch (const ProjectionError& e) {
        proj_error = e.what();
    }
    bool all_matched = proj.has_value();
    if (proj)
        for (std::size_t k = 0; k < p.basis.size(); ++k)
            all_matched = all_matched && (proj->images[k].is_zero() || proj->matches[k].has_value());

    if (o.json) {
        nlohmann::ordered_json j;
        j["report"] = "structure";
        j["equation"] = m.label;
        j["rhs"] = to_string(m.rhs);
        nlohmann::ordered_json basis = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < p.basis.size(); ++k)
            basis.push_back({{"name", names[k]}, {"generated", generated[k]}, {"field", to_json(p.basis[k])}});
        j["basis"] = basis;
        j["brackets"] = table;
        j["structure"] = to_json(r);
        if (proj) {
            nlohmann::ordered_json images = nlohmann::ordered_json::array();
            for (std::size_t k = 0; k < p.basis.size(); ++k) {
                nlohmann::ordered_json match = nullptr;
                if (proj->matches[k]) match = *proj->matches[k];
                images.push_back({{"name", names[k]}, {"image", to_json(proj->images[k])}, {"prolongation_of", match}});
            }
            nlohmann::ordered_json kernel = nlohmann::ordered_json::array();
            for (const auto& row : proj->kernel) kernel.push_back(format_combination(row, names));
            j["projection"] = {{"kernel", kernel},
                               {"kernel_subspace", subspace_json(proj->kernel)},
                               {"images", images},
                               {"all_images_matched", all_matched}};
        } else {
            j["projection"] = nullptr;
            j["projection_error"] = proj_error;
        }
        emit(o, s, dump(j));
        return kOk;
    }

    std::ostringstream t;
    t << equation_line(m) << '\n';
    t << "basis (" << p.basis.size() << "): " << join(names, ", ") << '\n';
    for (std::size_t k = 0; k < p.basis.size(); ++k)
        if (generated[k]) t << "  " << names[k] << " = " << to_string(p.basis[k]) << '\n';
    t << "brackets:\n";
    for (const auto& line : table) t << "  " << line << '\n';
    structure_text(t, r, names);
    if (proj) {
        t << "projection to J2:\n";
        t << "  kernel " << subspace_text(proj->kernel, names) << '\n';
        for (std::size_t k = 0; k < p.basis.size(); ++k) {
            if (proj->images[k].is_zero()) continue;
            t << "  " << names[k] << " -> " << to_string(proj->images[k]);
            if (proj->matches[k])
                t << "  (prolongation of " << *proj->matches[k] << ")";
            else
                t << "  (no equiaffine match)";
            t << '\n';
        }
    } else {
        t << "projection to J2: not defined (" << proj_error << ")\n";
    }
    emit(o, s, t.str());
    return kOk;
}

int cmd_solve(const SolveArgs& a, const Output& o, Streams s)
{
    MongeEquation m = resolve_equation(a.equation);
    if (m.label == "strazzullo" && !a.force)
        throw Error("no solver run on 'strazzullo' by default: its residuals exercise the exp and nested-power "
                    "grammar edge; use genericity/verify, or pass --force");
    auto method = method_from_name(a.method);
    if (!method) throw Error("unknown method '" + a.method + "' (expected jet or poly)");

    SolveOptions opt;
    opt.method = *method;
    opt.max_degree = a.degree.value_or(*method == SolveMethod::Jet ? 9 : 7);
    opt.jet_order = a.jet_order;
    opt.verify = a.verify;
    if (!a.offsets.empty()) {
        opt.offsets.clear();
        for (const auto& q : split(a.offsets, ',')) opt.offsets.push_back(rational_arg(q, "offset"));
        if (std::find(opt.offsets.begin(), opt.offsets.end(), Rational(0)) == opt.offsets.end())
            opt.offsets.push_back(0);
    }
    if (!a.base_point.empty()) opt.base_point = base_point_arg(a.base_point);
    if (*method == SolveMethod::Jet && opt.max_degree < opt.jet_order + 2)
        throw Error("jet method needs --degree >= jet order + 2");
    opt.progress = [&](const std::string& line) { s.err << line << std::endl; };

    SolveReport r;
    try {
        r = symmetry_dimension(m, opt);
    } catch (const EvaluationError& e) {
        throw Error(std::string("equation cannot be expanded at the base point: ") + e.what());
    }
    const int code = r.verified == false ? kMismatch : kOk;
    if (o.json) {
        nlohmann::ordered_json j;
        j["report"] = "solve";
        j.update(to_json(r, a.timings));
        emit(o, s, dump(j));
        return code;
    }

    std::ostringstream t;
    t << equation_line(m) << '\n';
    const bool jet = r.method == SolveMethod::Jet;
    if (jet) {
        std::vector<std::string> coords;
        for (Coord c : kAllCoords) coords.push_back(std::string(name(c)) + "=" + to_string(r.base_point.at(c)));
        t << "method jet (base point " << join(coords, ", ") << "; jet order " << r.jet_order << ")\n";
    } else {
        std::vector<std::string> offs;
        for (const auto& q : r.offsets) offs.push_back(to_string(q));
        t << "method poly (offsets " << join(offs, ", ") << ")\n";
    }
    t << std::setw(6) << (jet ? "order" : "degree") << std::setw(10) << "unknowns" << std::setw(8) << "rows"
      << std::setw(11) << "dimension";
    if (a.timings) t << std::setw(10) << "seconds";
    t << '\n';
    for (const auto& row : r.table) {
        t << std::setw(6) << row.degree << std::setw(10) << row.unknowns << std::setw(8) << row.rows << std::setw(11)
          << row.dimension;
        if (a.timings) t << std::setw(10) << std::fixed << std::setprecision(3) << row.seconds;
        t << '\n';
    }
    t << "dimension " << r.dimension << ", " << (r.stabilized ? "stabilized" : "not stabilized")
      << " (heuristic: the last two dimensions agree)\n";
    if (jet)
        t << "basis (" << r.basis.size() << " jets of order " << r.jet_order + 1
          << " at the base point, in shifted coordinates):\n";
    else
        t << "basis (" << r.basis.size() << " exact fields):\n";
    for (std::size_t k = 0; k < r.basis.size(); ++k)
        t << "  " << (jet ? "J" : "V") << k + 1 << " = " << to_string(r.basis[k]) << '\n';
    if (r.constants) {
        StructureReport sr = analyze(*r.constants);
        t << "structure: " << (sr.solvable ? "solvable" : "not solvable") << ", derived series "
          << dims_text(sr.derived_dims) << ", verdict " << sr.recognition.verdict << '\n';
    }
    t << "verification: " << (!r.verified ? "not requested" : *r.verified ? "passed" : "FAILED") << '\n';
    emit(o, s, t.str());
    return code;
}

int cmd_reproduce(const std::string& inject_fault, bool timings, const Output& o, Streams s)
{
    if (!inject_fault.empty()) {
        auto names = checklist_names();
        if (std::find(names.begin(), names.end(), inject_fault) == names.end())
            throw Error("unknown checklist item '" + inject_fault + "'");
    }
    auto line = [timings](const CheckItem& item) {
        std::ostringstream t;
        t << (item.passed ? "[PASS] " : "[FAIL] ") << item.id << ' ' << item.name << ": " << item.claim << " (";
        if (timings) t << std::fixed << std::setprecision(2) << item.seconds << std::defaultfloat << " s, ";
        t << "limit " << item.limit_seconds << " s)\n";
        for (const auto& d : item.diagnostics) t << "       " << d << '\n';
        for (const auto& n : item.notes) t << "       - " << n << '\n';
        return t.str();
    };
    ChecklistOptions co;
    co.inject_fault = inject_fault;
    const bool stream = !o.json && o.path.empty();
    if (stream) co.on_item = [&](const CheckItem& item) { s.out << line(item) << std::flush; };
    auto items = run_checklist(co);

    std::size_t passed = 0;
    for (const auto& item : items) passed += item.passed ? 1 : 0;
    std::string summary = std::to_string(passed) + " of " + std::to_string(items.size()) + " items passed\n";
    if (o.json) {
        emit(o, s, dump(to_json(items, timings)));
    } else if (stream) {
        s.out << summary;
    } else {
        std::string text;
        for (const auto& item : items) text += line(item);
        emit(o, s, text + summary);
    }
    return passed == items.size() ? kOk : kMismatch;
}

int cmd_catalog(const Output& o, Streams s)
{
    struct Entry {
        std::string key, rhs, note;
    };
    std::vector<Entry> eqs;
    for (const auto& key : catalog::equation_keys()) {
        if (auto m = catalog::find_equation(key)) {
            eqs.push_back({key, to_string(m->rhs), ""});
        } else if (key == "eq1(I)") {
            eqs.push_back({key, "-1/2*(y2^2 + 10/3*y1^2 + (1 + I^2)*y^2)", "I rational"});
        } else {
            eqs.push_back({key, "y2^2 + r1*y1^2 + r2*y^2", "r1, r2 rational"});
        }
    }
    auto field_keys = catalog::field_keys();
    if (o.json) {
        nlohmann::ordered_json j;
        j["report"] = "catalog";
        nlohmann::ordered_json e = nlohmann::ordered_json::array();
        for (const auto& x : eqs) {
            nlohmann::ordered_json item{{"key", x.key}, {"rhs", x.rhs}};
            item["parameters"] = x.note.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(x.note);
            e.push_back(item);
        }
        j["equations"] = e;
        nlohmann::ordered_json f = nlohmann::ordered_json::array();
        for (const auto& key : field_keys) f.push_back({{"key", key}, {"field", to_json(catalog::field_by_key(key))}});
        j["fields"] = f;
        emit(o, s, dump(j));
        return kOk;
    }
    std::ostringstream t;
    t << "equations:\n";
    for (const auto& x : eqs) {
        t << "  " << std::left << std::setw(13) << x.key << "z' = " << x.rhs;
        if (!x.note.empty()) t << "  (" << x.note << ")";
        t << '\n';
    }
    t << "fields:\n";
    for (const auto& key : field_keys) {
        VectorField v = catalog::field_by_key(key);
        t << "  " << std::left << std::setw(13) << key << to_string(v);
        if (v.chart() != Chart::J20) t << "  (" << name(v.chart()) << ")";
        t << '\n';
    }
    emit(o, s, t.str());
    return kOk;
}

} // namespace mongesym::cli
