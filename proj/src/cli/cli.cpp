#include "commands.hpp"

#include "mongesym/cli.hpp"
#include "mongesym/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace mongesym::cli {

namespace {

void add_output_flags(CLI::App* sub, Output& o)
{
    sub->add_flag("--json", o.json, "Emit the report as JSON");
    sub->add_option("--out", o.path, "Write the report to PATH instead of stdout");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Symmetries of rank-2 distributions defined by Monge equations z' = F(x, y, y', y'', z)", "mongesym"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "mongesym 1.0.0");

    Output o;
    std::string equation;
    std::vector<std::string> fields;

    auto* genericity = app.add_subcommand("genericity", "Hessian d2F/dy2^2, frame determinant and genericity verdict");
    genericity->add_option("equation", equation, "Catalog key or expression for F")->required();
    add_output_flags(genericity, o);

    auto* verify = app.add_subcommand("verify", "Check that vector fields are symmetries; exit 1 if any fails");
    verify->add_option("equation", equation, "Catalog key or expression for F")->required();
    verify->add_option("fields", fields, "Catalog keys, d/d<coordinate> or vector-field JSON")->required();
    add_output_flags(verify, o);

    std::size_t cap = 20;
    auto* structure = app.add_subcommand("structure", "Bracket closure, structure constants, Levi data and projection");
    structure->add_option("equation", equation, "Catalog key or expression for F")->required();
    structure->add_option("fields", fields, "Catalog keys, d/d<coordinate> or vector-field JSON")->required();
    structure->add_option("--cap", cap, "Largest dimension allowed while closing under brackets")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_output_flags(structure, o);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Dimension of the symmetry algebra from the determining equations");
    solve->add_option("equation", sa.equation, "Catalog key or expression for F")->required();
    solve->add_option("--method", sa.method, "jet (Taylor jets at a base point) or poly (exact polynomial ansatz)")
        ->capture_default_str()
        ->check(CLI::IsMember({"jet", "poly"}));
    solve->add_option("--degree", sa.degree, "Largest ansatz degree (poly, default 7) or jet order K (jet, default 9)")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--offsets", sa.offsets, "poly: y2-power offsets q1,q2,... (0 is always included)");
    solve->add_option("--jet-order", sa.jet_order, "jet: order J of the jets that are counted")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--base-point", sa.base_point, "jet: base point x,y,y1,y2,z (default 0,0,0,1,0)");
    solve->add_flag("--verify", sa.verify, "Re-check every basis element; exit 1 on failure");
    solve->add_flag("--timings", sa.timings, "Include per-degree timings (not deterministic)");
    solve->add_flag("--force", sa.force, "Run even on equations excluded from solving by default");
    add_output_flags(solve, o);

    std::string fault;
    auto* reproduce = app.add_subcommand("reproduce", "Run the reproduction checklist; exit 0 iff every item passes");
    bool reproduce_timings = false;
    reproduce->add_flag("--timings", reproduce_timings, "Show wall-clock seconds per item (not deterministic)");
    reproduce->add_option("--inject-fault", fault, "")->group("");
    add_output_flags(reproduce, o);

    auto* catalog = app.add_subcommand("catalog", "List catalog equations and fields");
    add_output_flags(catalog, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            err << "run 'mongesym " << sub->get_name() << " --help' for usage\n";
        else
            err << "run 'mongesym --help' for usage\n";
        return kUsage;
    }

    const Streams s{out, err};
    try {
        if (*genericity) return cmd_genericity(equation, o, s);
        if (*verify) return cmd_verify(equation, fields, o, s);
        if (*structure) return cmd_structure(equation, fields, cap, o, s);
        if (*solve) return cmd_solve(sa, o, s);
        if (*reproduce) return cmd_reproduce(fault, reproduce_timings, o, s);
        if (*catalog) return cmd_catalog(o, s);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace mongesym::cli
