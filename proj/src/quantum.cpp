#include "tbell/quantum.hpp"

#include <cmath>

namespace tbell::quantum {

std::pair<Vec3, Vec3> transverse_frame(const Direction& e) {
    const double theta = std::acos(std::clamp(e.z(), -1.0, 1.0));
    const double phi = std::atan2(e.y(), e.x());
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const Vec3 u{ct * cp, ct * sp, -st};  // theta-hat
    const Vec3 w{-sp, cp, 0.0};           // phi-hat
    return {u, w};
}

QubitState state_from_amplitudes(double s, double phi, const Direction& e) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw InvalidAmplitudeError("amplitude s must lie in [0, 1], got " + std::to_string(s));
    }
    const auto [u, w] = transverse_frame(e);
    const double transverse = 2.0 * s * std::sqrt(1.0 - s * s);
    const Vec3 r = transverse * std::cos(phi) * u + transverse * std::sin(phi) * w +
                   (2.0 * s * s - 1.0) * e.vec();
    return QubitState::from_bloch(r.x, r.y, r.z);
}

double outcome_probability(const QubitState& state, const Direction& x, Outcome alpha) {
    const double p = 0.5 * (1.0 + value(alpha) * dot(x.vec(), state.bloch()));
    return std::clamp(p, 0.0, 1.0);
}

QubitState collapse(const Direction& x, Outcome alpha) {
    return alpha == Outcome::Plus ? QubitState::pure(x) : QubitState::pure(-x);
}

double joint_probability(const QubitState& state, const Direction& x, Outcome alpha,
                         const Direction& y, Outcome beta) {
    const double transition = 0.5 * (1.0 + value(alpha) * value(beta) * dot(x, y));
    return outcome_probability(state, x, alpha) * transition;
}

double correlator(const Direction& x, const Direction& y) { return dot(x, y); }

ThrowRecord sample_throw(const QubitState& state, std::pair<Setting, Direction> first,
                         std::pair<Setting, Direction> second, CounterRng& rng,
                         std::uint64_t throw_id) {
    const double p_plus = outcome_probability(state, first.second, Outcome::Plus);
    const Outcome a = rng.next_double() < p_plus ? Outcome::Plus : Outcome::Minus;
    // P(second == first) = (1 + x.y)/2 regardless of the first outcome; for
    // identical directions dot() is exactly 1, so agreement is certain.
    const double p_same = 0.5 * (1.0 + dot(first.second, second.second));
    const Outcome b = rng.next_double() < p_same ? a : flip(a);
    return ThrowRecord{throw_id, first.first, a, second.first, b};
}

}  // namespace tbell::quantum
