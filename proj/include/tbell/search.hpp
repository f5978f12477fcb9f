#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tbell/analysis.hpp"
#include "tbell/core.hpp"

namespace tbell::search {

/// Search families for the geometric objective (a + b).c - a.b.
///
/// kOrthogonal (the default) maximizes over triples with a perpendicular to
/// b, the configuration family whose ceiling is sqrt(2); every triple it
/// evaluates satisfies that bound. kUnconstrained searches all triples up to
/// a rigid rotation and reaches the true global maximum 3/2 at the planar
/// 120-degree configuration. kAntiCollinear is a diagnostic family with c
/// pinned opposite a + b; configurations with ||a + b|| < 1e-6 are excluded
/// as degenerate.
enum class Family { kOrthogonal, kUnconstrained, kAntiCollinear };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct SearchResult {
    SettingTriple triple;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    double max_evaluated = 0.0;  // largest objective seen at any evaluation
    Family family = Family::kOrthogonal;
};

/// The canonical optimal triple of the orthogonal family:
/// a=(1,0,0), b=(0,1,0), c=(a+b)/sqrt(2), objective sqrt(2).
SearchResult analytic_optimum();

/// Coarse angular grid followed by Nelder-Mead refinement on the free
/// angles. grid_step_deg in (0, 30]; refinement stops when the simplex
/// objective spread falls below refine_tol or after 10^4 iterations
/// (converged = false).
SearchResult maximize_violation(double grid_step_deg, double refine_tol,
                                Family family = Family::kOrthogonal);

/// Flips each record's second outcome independently with probability eta,
/// using a per-record counter stream keyed away from the generation seed.
std::vector<ThrowRecord> apply_flip_noise(std::vector<ThrowRecord> records, double eta,
                                          std::uint64_t seed);

struct SweepRow {
    double eta = 0.0;
    double delta_measured = 0.0;  // mean of the three same-setting deltas
    double delta_stderr = 0.0;
    double lhs = 0.0;             // symmetrized inequality lhs
    double stderr_lhs = 0.0;
    bool violated = false;
};

/// Quantum run at the analytic optimum for each eta in [0, 1/2], with the
/// flip channel applied to the second outcomes. Expected lhs is
/// (1 - 2 eta) sqrt(2) and the measured delta is -2 eta.
std::vector<SweepRow> noise_sweep(std::span<const double> etas, std::uint64_t n_throws,
                                  std::uint64_t seed);

}  // namespace tbell::search
