#pragma once

// Command-line front end: equation and field resolution, the subcommand
// reports and the reproduction checklist. Exit codes are a stable contract:
// 0 success, 1 verification or solve mismatch, 2 usage or parse error.

#include "mongesym/distribution.hpp"
#include "mongesym/lie_algebra.hpp"

#include <json.hpp>

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mongesym::cli {

inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;

/// argv-style entry point; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A catalog key, else an inline expression for F on J20. Throws ParseError
/// or mongesym::Error.
MongeEquation resolve_equation(std::string_view source);

struct NamedField {
    std::string name;
    VectorField field;
};

/// A catalog key, a coordinate field "d/dy", or inline vector-field JSON
/// (named "V<position>"). Throws mongesym::Error.
NamedField resolve_field(std::string_view source, std::size_t position);

/// Push-forward of a J20 symmetry algebra to J2.
struct ProjectionAnalysis {
    /// Relations sum c_i pi_*(b_i) = 0, reduced echelon rows.
    Matrix kernel;
    std::vector<VectorField> images;
    /// Catalog key of the equiaffine generator whose prolongation equals the
    /// image, when there is one.
    std::vector<std::optional<std::string>> matches;
};

/// Throws ProjectionError when a field does not project.
ProjectionAnalysis project_algebra(const std::vector<VectorField>& basis);

struct CheckItem {
    int id = 0;
    std::string name;
    std::string claim;
    bool passed = false;
    double seconds = 0;
    double limit_seconds = 0;
    std::vector<std::string> diagnostics; ///< one line per failed check
    std::vector<std::string> notes;       ///< informational, e.g. dimension tables
};

struct ChecklistOptions {
    /// Test hook: the name of an item whose inputs are perturbed.
    std::string inject_fault;
    unsigned threads = 0;
    std::function<void(const CheckItem&)> on_item;
};

std::vector<std::string> checklist_names();

/// Runs every item; an item passes when all its checks hold within its
/// runtime limit.
std::vector<CheckItem> run_checklist(const ChecklistOptions& options);

/// Omits wall-clock seconds unless `timings`, so reports are reproducible.
nlohmann::ordered_json to_json(const std::vector<CheckItem>& items, bool timings = false);

} // namespace mongesym::cli
