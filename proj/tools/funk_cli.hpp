#ifndef FUNK_CLI_HPP
#define FUNK_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace funk::cli {

enum ExitCode : int {
    ok = 0,
    check_failed = 1,
    parse_error = 2,
    invariant_error = 3,
    containment_error = 4,
    numerical_guard = 5,
};

struct RunConfig {
    std::string command;          // area | volume | convergence | validate
    std::string model = "funk";   // funk | hilbert | minkowski
    std::string method = "direct"; // direct | cauchy | vertex | crofton | double-integral
    std::string body_k;
    std::string body_g;
    std::optional<std::int64_t> budget;
    std::uint64_t seed = 42;
    int threads = 1;
    std::string output;           // empty: standard output
    std::vector<double> radii;
    bool dimension_check = false;
};

/// Runs one command, writing CSV to `out` (or config.output) and diagnostics to
/// `err`. No CSV is written when the run fails.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace funk::cli

#endif // FUNK_CLI_HPP
