#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "tbell/engine.hpp"
#include "tbell/search.hpp"

namespace tbell::cli {

// Exit codes, one per error class.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitInsufficientData = 4;
inline constexpr int kExitIo = 5;

inline constexpr std::uint64_t kDefaultSeed = 1964;

struct SimulateConfig {
    std::string model = "quantum";                       // quantum | realist | invasive
    double s = 1.0;                                      // quantum amplitude on |e+>
    double phi = 0.0;                                    // relative phase, radians
    std::array<double, 3> e{0.0, 0.0, 1.0};              // quantum reference direction
    std::array<double, 8> weights{1, 1, 1, 1, 1, 1, 1, 1};  // realist/invasive reality weights
    std::optional<std::array<std::array<double, 3>, 3>> triple;  // default: canonical optimum
    std::uint64_t n_throws = 100000;
    std::uint64_t seed = kDefaultSeed;
    bool entropy_seed = false;    // draw the seed from std::random_device instead
    unsigned workers = 1;
    std::string out;              // record file path; "-" or empty = stdout
};

struct AnalyzeConfig {
    std::string in;               // record file path; "-" = stdin
    std::string out;              // report path; empty = stdout
};

struct OptimizeConfig {
    double grid_step_deg = 10.0;
    double refine_tol = 1e-9;
    std::string family = "orthogonal";  // orthogonal | unconstrained | anti-collinear
    std::string out;
};

struct SweepConfig {
    std::vector<double> etas{0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
    std::uint64_t n_throws = 1000000;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    bool csv = false;
};

/// Build an ExperimentPlan (and its meta header) from a simulate config.
/// Throws InvalidConfigError on bad parameters.
engine::ExperimentPlan plan_from_config(const SimulateConfig& config);

int cmd_simulate(const SimulateConfig& config);
int cmd_analyze(const AnalyzeConfig& config);
int cmd_optimize(const OptimizeConfig& config);
int cmd_sweep(const SweepConfig& config);

/// Exit code for a thrown error (config 2, parse 3, insufficient data 4,
/// I/O 5, anything else 1).
int exit_code_for(const std::exception& e);

/// Runs fn, printing any error to stderr and returning its exit code.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
}

}  // namespace tbell::cli
