#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clusterlab {

// Configuration of one CLI run; all caps must be positive, and non-Dynkin
// quivers require an explicit depth (validated before any computation).
struct RunConfig {
    std::string command;     // enumerate | verify-denominator | verify-converse |
                             // compat | character | grassmannian
    std::string quiver_path;
    std::string quiver_text; // loaded content
    std::optional<int> depth;
    std::string tilt = "proj";
    std::vector<long long> primes = {2, 3, 5, 7, 11, 13};
    int cap_dim = 12;
    long long budget = 50'000'000;
    long long max_seeds = 200000;
    std::string cache_dir; // empty: use CACHE_DIR env, else no cache
    std::string out_path;  // empty: stdout
    std::uint64_t seed = 12345;
    int workers = 1;
    bool ledger = false;
    bool with_u = true;
    std::string object;

    void validate() const;
};

struct CommandResult {
    std::string payload; // JSON document (exact output bytes)
    int exit_code = 0;
    bool cache_hit = false;
};

CommandResult cmd_enumerate(const RunConfig& cfg);
CommandResult cmd_verify_denominator(const RunConfig& cfg);
CommandResult cmd_verify_converse(const RunConfig& cfg);
CommandResult cmd_compat(const RunConfig& cfg);
CommandResult cmd_character(const RunConfig& cfg);
CommandResult cmd_grassmannian(const RunConfig& cfg);
CommandResult run_command(const RunConfig& cfg); // dispatch + cache

// Argument parsing and dispatch for the CLI binary.
int run_cli(int argc, char** argv);

} // namespace clusterlab
