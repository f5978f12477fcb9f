#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tbell/core.hpp"
#include "tbell/quantum.hpp"
#include "tbell/realist.hpp"

namespace tbell::analysis {

/// Exact multiset counts per (first setting, second setting, first outcome,
/// second outcome). Cellwise addition makes tallying a parallel-reducible
/// fold.
struct Tally {
    std::array<std::uint64_t, 36> cells{};
    std::uint64_t total = 0;

    static std::size_t cell_index(Setting s1, Outcome a, Setting s2, Outcome b) {
        return ((index(s1) * 3 + index(s2)) * 2 + index(a)) * 2 + index(b);
    }

    std::uint64_t cell(Setting s1, Outcome a, Setting s2, Outcome b) const {
        return cells[cell_index(s1, a, s2, b)];
    }

    std::uint64_t pair_count(Setting s1, Setting s2) const;

    Tally& operator+=(const Tally& other);
};

Tally tally(std::span<const ThrowRecord> records);

/// Conditional probability table per ordered setting pair, the single input
/// every inequality evaluator consumes. Built either from a Tally (sampled,
/// with per-pair counts for uncertainties) or from a model's exact
/// probabilities (n_pair = 0, stderr 0).
struct PairStats {
    std::array<double, 36> p{};
    std::array<std::uint64_t, 9> n{};
    std::array<bool, 9> has_data{};
    bool exact = false;

    double prob(Setting s1, Outcome a, Setting s2, Outcome b) const {
        return p[Tally::cell_index(s1, a, s2, b)];
    }
    std::uint64_t n_pair(Setting s1, Setting s2) const { return n[index(s1) * 3 + index(s2)]; }
    bool pair_available(Setting s1, Setting s2) const { return has_data[index(s1) * 3 + index(s2)]; }

    /// Throws InsufficientDataError naming the pair when it has no data.
    void require_pair(Setting s1, Setting s2) const;
};

PairStats from_tally(const Tally& t);
PairStats exact_quantum_stats(const quantum::QubitState& state, const SettingTriple& triple);
PairStats exact_realist_stats(const realist::RealityDist& dist);

/// Conditional cell probability; errors when the ordered pair has no throws.
double pair_probability(const Tally& t, Setting s1, Outcome alpha, Setting s2, Outcome beta);
double pair_probability(const PairStats& stats, Setting s1, Outcome alpha, Setting s2,
                        Outcome beta);

struct CorrelatorEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
    std::uint64_t n_pair = 0;
};

/// E(s1, s2) = P(++) + P(--) - P(+-) - P(-+) with the binomial plug-in
/// stderr sqrt((1 - E^2) / n).
CorrelatorEstimate correlator_estimate(const PairStats& stats, Setting s1, Setting s2);
CorrelatorEstimate correlator_estimate(const Tally& t, Setting s1, Setting s2);

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;       // lhs - bound
    double stderr_lhs = 0.0;
    double z_score = 0.0;      // margin / stderr_lhs when stderr_lhs > 0, else 0
    bool violated = false;     // margin > 0 (point estimate)
};

InequalityReport make_report(std::string name, double lhs, double bound, double stderr_lhs);

/// One probability-form inequality P(x^s, y^-s) <= P(x^s, z^-s) + P(y^-s, z^s)
/// identified by the setting ordering (x, y; z the remaining setting) and the
/// sign s of the first outcome.
struct WignerForm {
    Setting x;
    Setting y;
    Setting z;
    Outcome sign;

    std::string label() const;
};

/// The 12 mirrored forms: 6 setting orderings times both sign patterns.
std::array<WignerForm, 12> wigner_form_family();

InequalityReport wigner_report(const PairStats& stats, const WignerForm& form);
std::vector<InequalityReport> wigner_forms(const PairStats& stats);

/// Canonical form P(a+, b-) - P(a+, c-) - P(b-, c+) against bound 0.
InequalityReport wigner_inequality(const Tally& t);
InequalityReport wigner_inequality(const PairStats& stats);

/// E(a,c) + E(b,c) - E(a,b) against bound 1; stderr by quadrature.
InequalityReport correlator_inequality(const CorrelatorEstimate& Eac,
                                       const CorrelatorEstimate& Ebc,
                                       const CorrelatorEstimate& Eab);

/// |E(a,b) - E(a,c) - E(b,c)| against bound 1, for comparison tables only.
InequalityReport reference_bell_1964(const CorrelatorEstimate& Eab,
                                     const CorrelatorEstimate& Eac,
                                     const CorrelatorEstimate& Ebc);

/// (a + b).c - a.b, the geometric form of the correlator inequality.
double geometric_lhs(const SettingTriple& triple);

/// Deviations from exact perfect correlation and order symmetry. Unordered
/// pair slots are AB, AC, BC in that order.
struct NoiseDiagnostics {
    std::array<double, 3> delta{};           // E(x_n, x_n) - 1 per setting
    std::array<double, 3> delta_stderr{};
    std::array<double, 3> antisym{};         // E(x_n, x_m) - E(x_m, x_n)
    std::array<double, 3> antisym_stderr{};
    std::array<double, 3> sym{};             // (E(x_n, x_m) + E(x_m, x_n)) / 2
    std::array<double, 3> sym_stderr{};
    double delta_max = 0.0;                  // max |delta|, |antisym|
};

inline constexpr std::array<std::pair<Setting, Setting>, 3> kUnorderedPairs{
    std::pair{Setting::A, Setting::B}, std::pair{Setting::A, Setting::C},
    std::pair{Setting::B, Setting::C}};

NoiseDiagnostics noise_diagnostics(const PairStats& stats);
NoiseDiagnostics noise_diagnostics(const Tally& t);

/// sym_ac + sym_bc - sym_ab against bound 1; antisymmetric contamination of
/// the correlators cancels by construction.
InequalityReport symmetrized_inequality(const PairStats& stats);
InequalityReport symmetrized_inequality(const Tally& t);

/// Whether a maximal violation survives the 2*delta degradation of the
/// symmetrized bound: 2*delta < sqrt(2) - 1.
bool delta_feasibility(double delta);

}  // namespace tbell::analysis
