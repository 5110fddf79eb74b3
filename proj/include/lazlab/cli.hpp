#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lazlab/fitting.hpp"

namespace lazlab::cli {

enum ExitCode : int { kPass = 0, kVerdictFail = 1, kUsage = 2, kNumerical = 3 };

enum class Format { csv, json };

struct RunConfig {
    /// domain-check, orbit, coeffs, invariant, reconstruct, compare, conjugacy, selftest.
    std::string command;
    std::vector<std::filesystem::path> inputs;
    /// Grid size; unset means 64 for profiles and 512 for conjugacy jets.
    std::optional<int> grid;
    FitConfig fit;
    CoeffSource source = CoeffSource::fitted;
    std::optional<std::filesystem::path> out_dir;
    std::optional<double> tolerance;
    Format format = Format::csv;

    // orbit
    double seed_s = 0.0;
    double seed_phi = 0.1;
    int steps = 100;

    /// Throws PreconditionError: inputs exist, grid >= 8, fit config valid.
    void validate() const;

    int grid_or(int fallback) const { return grid.value_or(fallback); }
};

/// Executes one command. The primary CSV goes to `out` unless --out is set,
/// in which case files are written there and the summary JSON goes to `out`.
/// Human-readable summaries and error JSON go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses the command line with CLI11 and calls run().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lazlab::cli
