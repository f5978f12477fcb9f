#include "tbell/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "tbell/engine.hpp"

namespace tbell::search {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateNorm = 1e-6;  // ||a+b|| below this has no anti-collinear c
constexpr int kIterationCap = 10000;
constexpr std::uint64_t kFlipSeedTag = 0x464c495000000001ull;

const Direction kXAxis = unit_vector(1.0, 0.0, 0.0);
const Direction kYAxis = unit_vector(0.0, 1.0, 0.0);

Direction spherical(double theta, double phi) {
    const double st = std::sin(theta);
    return unit_vector(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
}

/// Family parameterizations, gauge-fixed by pinning a = (1,0,0) and b to the
/// xy-plane (the objective is invariant under rigid rotations of the
/// triple):
///   orthogonal      (theta_c, phi_c)          with b = (0,1,0)
///   unconstrained   (t_b, theta_c, phi_c)     with b = (cos t, sin t, 0)
///   anti-collinear  (t_b)                     with c = -(a+b)/||a+b||
class GeometricObjective {
  public:
    explicit GeometricObjective(Family family) : family_(family) {}

    std::size_t dimension() const {
        switch (family_) {
            case Family::kOrthogonal: return 2;
            case Family::kUnconstrained: return 3;
            default: return 1;
        }
    }

    bool feasible(std::span<const double> params) const {
        if (family_ != Family::kAntiCollinear) return true;
        const Vec3 sum = kXAxis.vec() + Vec3{std::cos(params[0]), std::sin(params[0]), 0.0};
        return norm(sum) >= kDegenerateNorm;
    }

    SettingTriple triple_at(std::span<const double> params) const {
        switch (family_) {
            case Family::kOrthogonal:
                return SettingTriple{kXAxis, kYAxis, spherical(params[0], params[1])};
            case Family::kUnconstrained: {
                const Direction b = unit_vector(std::cos(params[0]), std::sin(params[0]), 0.0);
                return SettingTriple{kXAxis, b, spherical(params[1], params[2])};
            }
            default: {
                const Direction b = unit_vector(std::cos(params[0]), std::sin(params[0]), 0.0);
                const Vec3 sum = kXAxis.vec() + b.vec();
                return SettingTriple{kXAxis, b, unit_vector(-sum.x, -sum.y, -sum.z)};
            }
        }
    }

    double evaluate(std::span<const double> params) {
        if (!feasible(params)) return -std::numeric_limits<double>::infinity();
        const double value = analysis::geometric_lhs(triple_at(params));
        max_evaluated_ = std::max(max_evaluated_, value);
        return value;
    }

    double max_evaluated() const { return max_evaluated_; }
    Family family() const { return family_; }

  private:
    Family family_;
    double max_evaluated_ = -std::numeric_limits<double>::infinity();
};

std::vector<std::vector<double>> grid_points(const GeometricObjective& objective,
                                             double step_rad) {
    std::vector<double> full;    // [0, 2*pi)
    for (double v = 0.0; v < 2.0 * kPi - 1e-12; v += step_rad) full.push_back(v);
    std::vector<double> polar;   // [0, pi]
    for (double v = 0.0; v <= kPi + 1e-12; v += step_rad) polar.push_back(std::min(v, kPi));

    std::vector<std::vector<double>> points;
    switch (objective.dimension()) {
        case 1:
            for (double t : full) points.push_back({t});
            break;
        case 2:
            for (double th : polar) {
                for (double ph : full) points.push_back({th, ph});
            }
            break;
        default:
            for (double t : full) {
                for (double th : polar) {
                    for (double ph : full) points.push_back({t, th, ph});
                }
            }
    }
    return points;
}

/// Nelder-Mead maximization on the free angles; returns iterations used and
/// whether the simplex objective spread dropped below refine_tol.
std::pair<int, bool> refine(GeometricObjective& objective, std::vector<double>& best,
                            double initial_step, double refine_tol) {
    const std::size_t d = best.size();
    std::vector<std::vector<double>> vertex(d + 1, best);
    for (std::size_t i = 0; i < d; ++i) vertex[i + 1][i] += initial_step;
    std::vector<double> value(d + 1);
    for (std::size_t i = 0; i <= d; ++i) value[i] = objective.evaluate(vertex[i]);

    const auto order = [&] {
        for (std::size_t i = 0; i <= d; ++i) {
            for (std::size_t j = i + 1; j <= d; ++j) {
                if (value[j] > value[i]) {
                    std::swap(value[i], value[j]);
                    std::swap(vertex[i], vertex[j]);
                }
            }
        }
    };

    int iterations = 0;
    bool converged = false;
    for (; iterations < kIterationCap; ++iterations) {
        order();
        if (value[0] - value[d] < refine_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) centroid[j] += vertex[i][j] / d;
        }
        const auto blend = [&](double coeff) {
            std::vector<double> p(d);
            for (std::size_t j = 0; j < d; ++j) {
                p[j] = centroid[j] + coeff * (centroid[j] - vertex[d][j]);
            }
            return p;
        };

        const auto reflected = blend(1.0);
        const double f_reflected = objective.evaluate(reflected);
        if (f_reflected > value[0]) {
            const auto expanded = blend(2.0);
            const double f_expanded = objective.evaluate(expanded);
            if (f_expanded > f_reflected) {
                vertex[d] = expanded;
                value[d] = f_expanded;
            } else {
                vertex[d] = reflected;
                value[d] = f_reflected;
            }
            continue;
        }
        if (f_reflected > value[d - 1]) {
            vertex[d] = reflected;
            value[d] = f_reflected;
            continue;
        }
        const auto contracted = blend(-0.5);
        const double f_contracted = objective.evaluate(contracted);
        if (f_contracted > value[d]) {
            vertex[d] = contracted;
            value[d] = f_contracted;
            continue;
        }
        for (std::size_t i = 1; i <= d; ++i) {  // shrink toward the best vertex
            for (std::size_t j = 0; j < d; ++j) {
                vertex[i][j] = vertex[0][j] + 0.5 * (vertex[i][j] - vertex[0][j]);
            }
            value[i] = objective.evaluate(vertex[i]);
        }
    }
    order();
    best = vertex[0];
    return {iterations, converged};
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::kOrthogonal: return "orthogonal";
        case Family::kUnconstrained: return "unconstrained";
        default: return "anti-collinear";
    }
}

Family family_from_name(const std::string& name) {
    if (name == "orthogonal") return Family::kOrthogonal;
    if (name == "unconstrained") return Family::kUnconstrained;
    if (name == "anti-collinear") return Family::kAntiCollinear;
    throw InvalidConfigError("unknown search family '" + name + "'");
}

SearchResult analytic_optimum() {
    const SettingTriple triple{kXAxis, kYAxis,
                               unit_vector(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0)};
    SearchResult result;
    result.triple = triple;
    result.objective = analysis::geometric_lhs(triple);
    result.iterations = 0;
    result.converged = true;
    result.max_evaluated = result.objective;
    result.family = Family::kOrthogonal;
    return result;
}

SearchResult maximize_violation(double grid_step_deg, double refine_tol, Family family) {
    if (!(grid_step_deg > 0.0 && grid_step_deg <= 30.0)) {
        throw InvalidConfigError("grid step must lie in (0, 30] degrees");
    }
    if (!(refine_tol > 0.0)) throw InvalidConfigError("refine tolerance must be positive");

    GeometricObjective objective(family);
    const double step_rad = grid_step_deg * kPi / 180.0;

    std::vector<double> best;
    double best_value = -std::numeric_limits<double>::infinity();
    for (const auto& point : grid_points(objective, step_rad)) {
        const double v = objective.evaluate(point);
        if (v > best_value) {
            best_value = v;
            best = point;
        }
    }

    const auto [iterations, converged] = refine(objective, best, 0.5 * step_rad, refine_tol);

    SearchResult result;
    result.triple = objective.triple_at(best);
    result.objective = analysis::geometric_lhs(result.triple);
    result.iterations = iterations;
    result.converged = converged;
    result.max_evaluated = objective.max_evaluated();
    result.family = family;
    return result;
}

std::vector<ThrowRecord> apply_flip_noise(std::vector<ThrowRecord> records, double eta,
                                          std::uint64_t seed) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidConfigError("flip probability must lie in [0, 1]");
    for (ThrowRecord& r : records) {
        CounterRng rng(seed ^ kFlipSeedTag, r.throw_id);
        if (rng.next_double() < eta) r.second_outcome = flip(r.second_outcome);
    }
    return records;
}

std::vector<SweepRow> noise_sweep(std::span<const double> etas, std::uint64_t n_throws,
                                  std::uint64_t seed) {
    for (double eta : etas) {
        if (!(eta >= 0.0 && eta <= 0.5)) {
            throw InvalidConfigError("sweep eta values must lie in [0, 1/2]");
        }
    }
    const SearchResult optimum = analytic_optimum();
    engine::ExperimentPlan plan{engine::QuantumModel{quantum::QubitState::maximally_mixed()},
                                optimum.triple, n_throws, seed};
    const std::vector<ThrowRecord> clean = engine::run_experiment(plan);

    std::vector<SweepRow> rows;
    rows.reserve(etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const auto noisy = apply_flip_noise(clean, etas[i], seed + 1 + i);
        const analysis::Tally t = analysis::tally(noisy);
        const analysis::NoiseDiagnostics diag = analysis::noise_diagnostics(t);
        const analysis::InequalityReport sym = analysis::symmetrized_inequality(t);

        SweepRow row;
        row.eta = etas[i];
        row.delta_measured = (diag.delta[0] + diag.delta[1] + diag.delta[2]) / 3.0;
        row.delta_stderr = std::sqrt(diag.delta_stderr[0] * diag.delta_stderr[0] +
                                     diag.delta_stderr[1] * diag.delta_stderr[1] +
                                     diag.delta_stderr[2] * diag.delta_stderr[2]) /
                           3.0;
        row.lhs = sym.lhs;
        row.stderr_lhs = sym.stderr_lhs;
        row.violated = sym.violated;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace tbell::search
