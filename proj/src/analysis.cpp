#include "tbell/analysis.hpp"

#include <cmath>

namespace tbell::analysis {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

std::string pair_label(Setting s1, Setting s2) {
    return std::string("(") + to_char(s1) + ", " + to_char(s2) + ")";
}

double proportion_variance(double p, std::uint64_t n) {
    return n == 0 ? 0.0 : p * (1.0 - p) / static_cast<double>(n);
}

Setting remaining_setting(Setting x, Setting y) {
    return static_cast<Setting>(3 - index(x) - index(y));
}

}  // namespace

std::uint64_t Tally::pair_count(Setting s1, Setting s2) const {
    std::uint64_t n = 0;
    for (Outcome a : kBothOutcomes) {
        for (Outcome b : kBothOutcomes) n += cell(s1, a, s2, b);
    }
    return n;
}

Tally& Tally::operator+=(const Tally& other) {
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += other.cells[i];
    total += other.total;
    return *this;
}

Tally tally(std::span<const ThrowRecord> records) {
    Tally t;
    for (const ThrowRecord& r : records) {
        ++t.cells[Tally::cell_index(r.first_setting, r.first_outcome, r.second_setting,
                                    r.second_outcome)];
    }
    t.total = records.size();
    return t;
}

void PairStats::require_pair(Setting s1, Setting s2) const {
    if (!pair_available(s1, s2)) {
        throw InsufficientDataError("no throws for ordered setting pair " + pair_label(s1, s2));
    }
}

PairStats from_tally(const Tally& t) {
    PairStats stats;
    for (Setting s1 : kAllSettings) {
        for (Setting s2 : kAllSettings) {
            const std::uint64_t n = t.pair_count(s1, s2);
            stats.n[index(s1) * 3 + index(s2)] = n;
            stats.has_data[index(s1) * 3 + index(s2)] = n > 0;
            if (n == 0) continue;
            for (Outcome a : kBothOutcomes) {
                for (Outcome b : kBothOutcomes) {
                    stats.p[Tally::cell_index(s1, a, s2, b)] =
                        static_cast<double>(t.cell(s1, a, s2, b)) / static_cast<double>(n);
                }
            }
        }
    }
    return stats;
}

PairStats exact_quantum_stats(const quantum::QubitState& state, const SettingTriple& triple) {
    PairStats stats;
    stats.exact = true;
    stats.has_data.fill(true);
    for (Setting s1 : kAllSettings) {
        for (Setting s2 : kAllSettings) {
            for (Outcome a : kBothOutcomes) {
                for (Outcome b : kBothOutcomes) {
                    stats.p[Tally::cell_index(s1, a, s2, b)] = quantum::joint_probability(
                        state, triple.direction(s1), a, triple.direction(s2), b);
                }
            }
        }
    }
    return stats;
}

PairStats exact_realist_stats(const realist::RealityDist& dist) {
    PairStats stats;
    stats.exact = true;
    stats.has_data.fill(true);
    for (Setting s1 : kAllSettings) {
        for (Setting s2 : kAllSettings) {
            for (Outcome a : kBothOutcomes) {
                for (Outcome b : kBothOutcomes) {
                    // Conditional on the ordered pair: the 1/9 pair factor
                    // divides out.
                    stats.p[Tally::cell_index(s1, a, s2, b)] =
                        9.0 * realist::exact_throw_probability(dist, s1, a, s2, b);
                }
            }
        }
    }
    return stats;
}

double pair_probability(const PairStats& stats, Setting s1, Outcome alpha, Setting s2,
                        Outcome beta) {
    stats.require_pair(s1, s2);
    return stats.prob(s1, alpha, s2, beta);
}

double pair_probability(const Tally& t, Setting s1, Outcome alpha, Setting s2, Outcome beta) {
    return pair_probability(from_tally(t), s1, alpha, s2, beta);
}

CorrelatorEstimate correlator_estimate(const PairStats& stats, Setting s1, Setting s2) {
    stats.require_pair(s1, s2);
    const double value = stats.prob(s1, Outcome::Plus, s2, Outcome::Plus) +
                         stats.prob(s1, Outcome::Minus, s2, Outcome::Minus) -
                         stats.prob(s1, Outcome::Plus, s2, Outcome::Minus) -
                         stats.prob(s1, Outcome::Minus, s2, Outcome::Plus);
    const std::uint64_t n = stats.n_pair(s1, s2);
    const double se = n == 0 ? 0.0 : std::sqrt(std::max(0.0, 1.0 - value * value) /
                                               static_cast<double>(n));
    return CorrelatorEstimate{value, se, n};
}

CorrelatorEstimate correlator_estimate(const Tally& t, Setting s1, Setting s2) {
    return correlator_estimate(from_tally(t), s1, s2);
}

InequalityReport make_report(std::string name, double lhs, double bound, double stderr_lhs) {
    InequalityReport report;
    report.name = std::move(name);
    report.lhs = lhs;
    report.bound = bound;
    report.margin = lhs - bound;
    report.stderr_lhs = stderr_lhs;
    report.z_score = stderr_lhs > 0.0 ? report.margin / stderr_lhs : 0.0;
    report.violated = report.margin > 0.0;
    return report;
}

std::string WignerForm::label() const {
    const char s = sign == Outcome::Plus ? '+' : '-';
    const char m = sign == Outcome::Plus ? '-' : '+';
    std::string out = "P(";
    out += to_char(x);
    out += s;
    out += ',';
    out += to_char(y);
    out += m;
    out += ") <= P(";
    out += to_char(x);
    out += s;
    out += ',';
    out += to_char(z);
    out += m;
    out += ") + P(";
    out += to_char(y);
    out += m;
    out += ',';
    out += to_char(z);
    out += s;
    out += ')';
    return out;
}

std::array<WignerForm, 12> wigner_form_family() {
    std::array<WignerForm, 12> forms;
    std::size_t k = 0;
    for (Setting x : kAllSettings) {
        for (Setting y : kAllSettings) {
            if (x == y) continue;
            for (Outcome sign : kBothOutcomes) {
                forms[k++] = WignerForm{x, y, remaining_setting(x, y), sign};
            }
        }
    }
    return forms;
}

InequalityReport wigner_report(const PairStats& stats, const WignerForm& form) {
    const Outcome s = form.sign;
    const Outcome m = flip(s);
    stats.require_pair(form.x, form.y);
    stats.require_pair(form.x, form.z);
    stats.require_pair(form.y, form.z);
    const double p_xy = stats.prob(form.x, s, form.y, m);
    const double p_xz = stats.prob(form.x, s, form.z, m);
    const double p_yz = stats.prob(form.y, m, form.z, s);
    const double lhs = p_xy - p_xz - p_yz;
    const double var = proportion_variance(p_xy, stats.n_pair(form.x, form.y)) +
                       proportion_variance(p_xz, stats.n_pair(form.x, form.z)) +
                       proportion_variance(p_yz, stats.n_pair(form.y, form.z));
    return make_report(form.label(), lhs, 0.0, std::sqrt(var));
}

std::vector<InequalityReport> wigner_forms(const PairStats& stats) {
    std::vector<InequalityReport> reports;
    reports.reserve(12);
    for (const WignerForm& form : wigner_form_family()) {
        reports.push_back(wigner_report(stats, form));
    }
    return reports;
}

InequalityReport wigner_inequality(const PairStats& stats) {
    return wigner_report(stats,
                         WignerForm{Setting::A, Setting::B, Setting::C, Outcome::Plus});
}

InequalityReport wigner_inequality(const Tally& t) { return wigner_inequality(from_tally(t)); }

InequalityReport correlator_inequality(const CorrelatorEstimate& Eac,
                                       const CorrelatorEstimate& Ebc,
                                       const CorrelatorEstimate& Eab) {
    const double lhs = Eac.value + Ebc.value - Eab.value;
    const double se = std::sqrt(Eac.stderr_value * Eac.stderr_value +
                                Ebc.stderr_value * Ebc.stderr_value +
                                Eab.stderr_value * Eab.stderr_value);
    return make_report("E(a,c) + E(b,c) - E(a,b) <= 1", lhs, 1.0, se);
}

InequalityReport reference_bell_1964(const CorrelatorEstimate& Eab,
                                     const CorrelatorEstimate& Eac,
                                     const CorrelatorEstimate& Ebc) {
    const double lhs = std::abs(Eab.value - Eac.value - Ebc.value);
    const double se = std::sqrt(Eab.stderr_value * Eab.stderr_value +
                                Eac.stderr_value * Eac.stderr_value +
                                Ebc.stderr_value * Ebc.stderr_value);
    return make_report("|E(a,b) - E(a,c) - E(b,c)| <= 1", lhs, 1.0, se);
}

double geometric_lhs(const SettingTriple& triple) {
    return dot(triple.a, triple.c) + dot(triple.b, triple.c) - dot(triple.a, triple.b);
}

NoiseDiagnostics noise_diagnostics(const PairStats& stats) {
    for (Setting s1 : kAllSettings) {
        for (Setting s2 : kAllSettings) stats.require_pair(s1, s2);
    }
    NoiseDiagnostics d;
    for (Setting s : kAllSettings) {
        const CorrelatorEstimate e = correlator_estimate(stats, s, s);
        d.delta[index(s)] = e.value - 1.0;
        d.delta_stderr[index(s)] = e.stderr_value;
    }
    for (std::size_t k = 0; k < kUnorderedPairs.size(); ++k) {
        const auto [n, m] = kUnorderedPairs[k];
        const CorrelatorEstimate e_nm = correlator_estimate(stats, n, m);
        const CorrelatorEstimate e_mn = correlator_estimate(stats, m, n);
        const double quad = std::sqrt(e_nm.stderr_value * e_nm.stderr_value +
                                      e_mn.stderr_value * e_mn.stderr_value);
        d.antisym[k] = e_nm.value - e_mn.value;
        d.antisym_stderr[k] = quad;
        d.sym[k] = 0.5 * (e_nm.value + e_mn.value);
        d.sym_stderr[k] = 0.5 * quad;
    }
    double worst = 0.0;
    for (double v : d.delta) worst = std::max(worst, std::abs(v));
    for (double v : d.antisym) worst = std::max(worst, std::abs(v));
    d.delta_max = worst;
    return d;
}

NoiseDiagnostics noise_diagnostics(const Tally& t) { return noise_diagnostics(from_tally(t)); }

InequalityReport symmetrized_inequality(const PairStats& stats) {
    const NoiseDiagnostics d = noise_diagnostics(stats);
    const double lhs = d.sym[1] + d.sym[2] - d.sym[0];  // AC + BC - AB
    const double se = std::sqrt(d.sym_stderr[1] * d.sym_stderr[1] +
                                d.sym_stderr[2] * d.sym_stderr[2] +
                                d.sym_stderr[0] * d.sym_stderr[0]);
    return make_report("sym(a,c) + sym(b,c) - sym(a,b) <= 1", lhs, 1.0, se);
}

InequalityReport symmetrized_inequality(const Tally& t) {
    return symmetrized_inequality(from_tally(t));
}

bool delta_feasibility(double delta) {
    if (!(delta >= 0.0)) throw InvalidConfigError("delta must be nonnegative");
    return 2.0 * delta < kSqrt2 - 1.0;
}

}  // namespace tbell::analysis
