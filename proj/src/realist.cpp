#include "tbell/realist.hpp"

#include <cmath>
#include <string>

namespace tbell::realist {

namespace {

std::string reality_label(const RealityType& r) {
    std::string s = "a";
    s += value(r.at_a) > 0 ? '+' : '-';
    s += 'b';
    s += value(r.at_b) > 0 ? '+' : '-';
    s += 'c';
    s += value(r.at_c) > 0 ? '+' : '-';
    return s;
}

Setting remaining_setting(Setting x, Setting y) {
    return static_cast<Setting>(3 - index(x) - index(y));
}

RealityType draw_reality(const RealityDist& dist, CounterRng& rng) {
    const double u = rng.next_double();
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < kRealityCount; ++i) {
        const double w = dist.weight(i);
        if (w <= 0.0) continue;  // zero-weight realities must never be drawn
        last_positive = i;
        cum += w;
        if (u < cum) return RealityType::from_index(i);
    }
    return RealityType::from_index(last_positive);  // u landed in rounding slack
}

}  // namespace

RealityDist RealityDist::from_weights(const std::array<double, kRealityCount>& w) {
    double sum = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InvalidModelError("reality weights must be finite and nonnegative");
        }
        sum += v;
    }
    if (sum <= 0.0) throw InvalidModelError("reality weights must not all be zero");
    std::array<double, kRealityCount> norm = w;
    for (double& v : norm) v /= sum;
    return RealityDist(norm);
}

RealityDist RealityDist::uniform() {
    std::array<double, kRealityCount> w;
    w.fill(1.0);
    return from_weights(w);
}

RealityDist RealityDist::point_mass(const RealityType& r) {
    std::array<double, kRealityCount> w{};
    w[r.index()] = 1.0;
    return from_weights(w);
}

double single_marginal(const RealityDist& dist, Setting s, Outcome alpha) {
    double sum = 0.0;
    for (std::size_t i = 0; i < kRealityCount; ++i) {
        if (RealityType::from_index(i).at(s) == alpha) sum += dist.weight(i);
    }
    return sum;
}

double pair_marginal(const RealityDist& dist, Setting s1, Outcome alpha, Setting s2,
                     Outcome beta) {
    if (s1 == s2) {
        throw InvalidMarginalError(std::string("pair marginal requires distinct settings, got (") +
                                   to_char(s1) + ", " + to_char(s2) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < kRealityCount; ++i) {
        const RealityType r = RealityType::from_index(i);
        if (r.at(s1) == alpha && r.at(s2) == beta) sum += dist.weight(i);
    }
    return sum;
}

double counting_lemma_margin(const RealityDist& dist) {
    return counting_lemma_margin(dist, Setting::A, Outcome::Plus, Setting::B, Outcome::Minus,
                                 Outcome::Minus);
}

double counting_lemma_margin(const RealityDist& dist, Setting x, Outcome alpha, Setting y,
                             Outcome beta, Outcome rho) {
    if (x == y) {
        throw InvalidMarginalError("counting lemma needs two distinct settings");
    }
    const Setting z = remaining_setting(x, y);
    return pair_marginal(dist, x, alpha, z, rho) + pair_marginal(dist, y, beta, z, flip(rho)) -
           pair_marginal(dist, x, alpha, y, beta);
}

double exact_throw_probability(const RealityDist& dist, Setting s1, Outcome alpha, Setting s2,
                               Outcome beta) {
    constexpr double kPairChance = 1.0 / 9.0;
    if (s1 == s2) {
        return alpha == beta ? kPairChance * single_marginal(dist, s1, alpha) : 0.0;
    }
    return kPairChance * pair_marginal(dist, s1, alpha, s2, beta);
}

double exact_correlator(const RealityDist& dist, Setting s1, Setting s2) {
    if (s1 == s2) return 1.0;  // both readouts come from the same predetermined value
    // Summed per reality so E(x, y) and E(y, x) accumulate in the same
    // order and agree bitwise.
    double e = 0.0;
    for (std::size_t i = 0; i < kRealityCount; ++i) {
        const RealityType r = RealityType::from_index(i);
        e += value(r.at(s1)) * value(r.at(s2)) * dist.weight(i);
    }
    return e;
}

ThrowRecord sample_throw(const RealityDist& dist, std::pair<Setting, Setting> pair,
                         CounterRng& rng, std::uint64_t throw_id) {
    const RealityType r = draw_reality(dist, rng);
    return ThrowRecord{throw_id, pair.first, r.at(pair.first), pair.second, r.at(pair.second)};
}

Disturbance Disturbance::from_conditionals(Table table) {
    for (Setting s : kAllSettings) {
        for (Outcome alpha : kBothOutcomes) {
            const RealityDist& cond = table[index(s)][index(alpha)];
            for (std::size_t i = 0; i < kRealityCount; ++i) {
                const RealityType r = RealityType::from_index(i);
                if (r.at(s) != alpha && cond.weight(i) != 0.0) {
                    throw InvalidModelError("disturbance conditional for (" +
                                            std::string(1, to_char(s)) +
                                            (alpha == Outcome::Plus ? "+" : "-") +
                                            ") puts weight on inconsistent reality " +
                                            reality_label(r));
                }
            }
        }
    }
    return Disturbance(std::move(table));
}

Disturbance Disturbance::conditioned_on_first(const RealityDist& base) {
    Table table{{{RealityDist::uniform(), RealityDist::uniform()},
                 {RealityDist::uniform(), RealityDist::uniform()},
                 {RealityDist::uniform(), RealityDist::uniform()}}};
    for (Setting s : kAllSettings) {
        for (Outcome alpha : kBothOutcomes) {
            std::array<double, kRealityCount> w{};
            for (std::size_t i = 0; i < kRealityCount; ++i) {
                if (RealityType::from_index(i).at(s) == alpha) w[i] = base.weight(i);
            }
            // A first outcome with zero marginal can never occur; keep a
            // valid (consistent) placeholder conditional for it.
            double sum = 0.0;
            for (double v : w) sum += v;
            if (sum <= 0.0) {
                for (std::size_t i = 0; i < kRealityCount; ++i) {
                    w[i] = RealityType::from_index(i).at(s) == alpha ? 1.0 : 0.0;
                }
            }
            table[index(s)][index(alpha)] = RealityDist::from_weights(w);
        }
    }
    return from_conditionals(std::move(table));
}

Disturbance Disturbance::quantum_mimicking(const SettingTriple& triple) {
    Table table{{{RealityDist::uniform(), RealityDist::uniform()},
                 {RealityDist::uniform(), RealityDist::uniform()},
                 {RealityDist::uniform(), RealityDist::uniform()}}};
    for (Setting s : kAllSettings) {
        const Direction& x = triple.direction(s);
        for (Outcome alpha : kBothOutcomes) {
            std::array<double, kRealityCount> w{};
            for (std::size_t i = 0; i < kRealityCount; ++i) {
                const RealityType r = RealityType::from_index(i);
                double weight = 1.0;
                for (Setting t : kAllSettings) {
                    // dot(x, x) == 1 exactly, so the factor for setting s is
                    // 1 for the consistent value and 0 otherwise.
                    const double d = dot(x, triple.direction(t));
                    weight *= 0.5 * (1.0 + value(alpha) * value(r.at(t)) * d);
                }
                w[i] = weight;
            }
            table[index(s)][index(alpha)] = RealityDist::from_weights(w);
        }
    }
    return from_conditionals(std::move(table));
}

ThrowRecord invasive_sample_throw(const RealityDist& dist, const Disturbance& disturb,
                                  std::pair<Setting, Setting> pair, CounterRng& rng,
                                  std::uint64_t throw_id) {
    const double p_plus = single_marginal(dist, pair.first, Outcome::Plus);
    const Outcome alpha = rng.next_double() < p_plus ? Outcome::Plus : Outcome::Minus;
    const RealityType redrawn = draw_reality(disturb.conditional(pair.first, alpha), rng);
    return ThrowRecord{throw_id, pair.first, alpha, pair.second, redrawn.at(pair.second)};
}

}  // namespace tbell::realist
