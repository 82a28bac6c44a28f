#pragma once

// Subcommand bodies. Each returns an exit code and throws mongesym::Error for
// bad input; the dispatcher maps those to exit code 2.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mongesym::cli {

struct Output {
    bool json = false;
    std::string path; ///< write the report here instead of stdout
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

struct SolveArgs {
    std::string equation;
    std::string method = "jet";
    std::optional<int> degree;
    std::string offsets;
    std::string base_point;
    int jet_order = 2;
    bool verify = false;
    bool timings = false;
    bool force = false;
};

int cmd_genericity(const std::string& equation, const Output& o, Streams s);
int cmd_verify(const std::string& equation, const std::vector<std::string>& fields, const Output& o, Streams s);
int cmd_structure(const std::string& equation, const std::vector<std::string>& fields, std::size_t cap,
                  const Output& o, Streams s);
int cmd_solve(const SolveArgs& args, const Output& o, Streams s);
int cmd_reproduce(const std::string& inject_fault, bool timings, const Output& o, Streams s);
int cmd_catalog(const Output& o, Streams s);

} // namespace mongesym::cli
