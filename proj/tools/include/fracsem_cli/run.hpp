#pragma once

#include "fracsem_cli/config.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fracsem::cli {

struct RunOutcome {
    /// 0 on success, 1 when selftest has failing invariants.
    int exit_code = 0;
    std::vector<std::filesystem::path> artifacts;
};

/// Executes one command, writing artifacts into out_dir (created if missing).
/// Library errors propagate unchanged.
RunOutcome run(const RunConfig& config, const std::filesystem::path& out_dir);

struct Invariant {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// The selftest suite. Randomized probes draw from seed; scratch_dir receives
/// the persistence round-trip files.
std::vector<Invariant> selftest_invariants(std::uint64_t seed, const std::filesystem::path& scratch_dir);

/// Process exit status for an exception escaping run(): 2 for config errors,
/// 3 for other library errors, 4 otherwise.
int exit_status_for(const std::exception& e);

}  // namespace fracsem::cli
