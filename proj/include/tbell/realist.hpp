#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "tbell/core.hpp"
#include "tbell/rng.hpp"

namespace tbell::realist {

inline constexpr std::size_t kRealityCount = 8;

/// One EPR-style reality: a predetermined outcome for each of the three
/// settings. Indexed 0..7 with bit 2 for setting A, bit 1 for B, bit 0 for
/// C; a set bit means the minus outcome.
struct RealityType {
    Outcome at_a = Outcome::Plus;
    Outcome at_b = Outcome::Plus;
    Outcome at_c = Outcome::Plus;

    Outcome at(Setting s) const {
        switch (s) {
            case Setting::A: return at_a;
            case Setting::B: return at_b;
            default: return at_c;
        }
    }

    std::size_t index() const {
        return (at_a == Outcome::Minus ? 4u : 0u) | (at_b == Outcome::Minus ? 2u : 0u) |
               (at_c == Outcome::Minus ? 1u : 0u);
    }

    static RealityType from_index(std::size_t i) {
        return RealityType{(i & 4u) ? Outcome::Minus : Outcome::Plus,
                           (i & 2u) ? Outcome::Minus : Outcome::Plus,
                           (i & 1u) ? Outcome::Minus : Outcome::Plus};
    }

    friend bool operator==(const RealityType&, const RealityType&) = default;
};

/// Probability weights over the eight reality types. Inputs are nonnegative
/// (counts are fine) and normalized on construction.
class RealityDist {
  public:
    static RealityDist from_weights(const std::array<double, kRealityCount>& w);
    static RealityDist uniform();
    static RealityDist point_mass(const RealityType& r);

    double weight(const RealityType& r) const { return w_[r.index()]; }
    double weight(std::size_t i) const { return w_[i]; }
    const std::array<double, kRealityCount>& weights() const { return w_; }

  private:
    explicit RealityDist(std::array<double, kRealityCount> w) : w_(w) {}
    std::array<double, kRealityCount> w_;
};

/// Weight of realities whose predetermined outcome at s equals alpha.
double single_marginal(const RealityDist& dist, Setting s, Outcome alpha);

/// Weight of realities matching both coordinates, e.g. the normalized
/// N(a+ b-) = N(a+ b- c+) + N(a+ b- c-). Requires s1 != s2.
double pair_marginal(const RealityDist& dist, Setting s1, Outcome alpha, Setting s2, Outcome beta);

/// Canonical counting-lemma margin
///   N(a+ c-) + N(b- c+) - N(a+ b-)  (normalized),
/// nonnegative for every distribution.
double counting_lemma_margin(const RealityDist& dist);

/// General form of the lemma: for distinct settings x, y (z the remaining
/// one) and signs alpha, beta, rho,
///   N(x^a z^r) + N(y^b z^-r) - N(x^a y^b) >= 0.
double counting_lemma_margin(const RealityDist& dist, Setting x, Outcome alpha, Setting y,
                             Outcome beta, Outcome rho);

/// Probability of the throw [s1^alpha, s2^beta] under uniform ordered-pair
/// selection: the 1/9 pair factor times the matching reality weight. For
/// s1 == s2 the result is diagonal (perfect correlation).
double exact_throw_probability(const RealityDist& dist, Setting s1, Outcome alpha, Setting s2,
                               Outcome beta);

/// Correlator implied by the exact throw probabilities, conditional on the
/// ordered pair. E(x, x) = 1 and E(x, y) = E(y, x) hold exactly.
double exact_correlator(const RealityDist& dist, Setting s1, Setting s2);

/// One throw for a fixed ordered setting pair: sample a reality, read both
/// predetermined outcomes off it.
ThrowRecord sample_throw(const RealityDist& dist, std::pair<Setting, Setting> pair,
                         CounterRng& rng, std::uint64_t throw_id = 0);

/// Conditional re-draw of the reality between the two measurements, keyed by
/// (first setting, first outcome). Each conditional must give zero weight to
/// realities inconsistent with the first outcome, which preserves
/// same-setting perfect correlation while abandoning a fixed pre-existing
/// reality for the second measurement.
class Disturbance {
  public:
    using Table = std::array<std::array<RealityDist, 2>, 3>;  // [setting][outcome index]

    static Disturbance from_conditionals(Table table);

    /// Re-draw from `base` conditioned on the first outcome; statistically
    /// identical to undisturbed sampling.
    static Disturbance conditioned_on_first(const RealityDist& base);

    /// Conditionals whose marginals are (1 + alpha beta x.y) / 2, the
    /// collapsed-state quantum statistics for the given directions.
    static Disturbance quantum_mimicking(const SettingTriple& triple);

    const RealityDist& conditional(Setting s, Outcome alpha) const {
        return table_[index(s)][index(alpha)];
    }

  private:
    explicit Disturbance(Table table) : table_(std::move(table)) {}
    Table table_;
};

/// Invasive throw: first outcome from dist's single marginal, then the
/// reality is re-drawn from the disturbance conditional before the second
/// readout.
ThrowRecord invasive_sample_throw(const RealityDist& dist, const Disturbance& disturb,
                                  std::pair<Setting, Setting> pair, CounterRng& rng,
                                  std::uint64_t throw_id = 0);

}  // namespace tbell::realist
