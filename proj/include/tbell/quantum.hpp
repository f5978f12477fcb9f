#pragma once

#include <utility>

#include "tbell/core.hpp"
#include "tbell/rng.hpp"

namespace tbell::quantum {

/// Qubit state as a Bloch vector; ||bloch|| = 1 for pure states, < 1 for
/// mixed ones. All measurement formulas below depend only on inner products
/// with this vector.
class QubitState {
  public:
    static QubitState from_bloch(double rx, double ry, double rz) {
        const Vec3 r{rx, ry, rz};
        const double n = norm(r);
        if (!(n <= 1.0 + 1e-12)) {
            throw InvalidStateError("Bloch vector norm " + std::to_string(n) + " exceeds 1");
        }
        return QubitState(r);
    }

    static QubitState pure(const Direction& d) { return QubitState(d.vec()); }
    static QubitState maximally_mixed() { return QubitState(Vec3{0.0, 0.0, 0.0}); }

    Vec3 bloch() const { return r_; }

  private:
    explicit QubitState(Vec3 r) : r_(r) {}
    Vec3 r_;
};

/// Orthonormal right-handed frame (u, w, e) completing e: the spherical
/// theta-hat and phi-hat unit vectors of e. Deterministic, including at the
/// poles.
std::pair<Vec3, Vec3> transverse_frame(const Direction& e);

/// Bloch vector of s|e+> + sqrt(1-s^2) e^{i phi} |e->:
///   2 s sqrt(1-s^2) (cos(phi) u + sin(phi) w) + (2 s^2 - 1) e.
QubitState state_from_amplitudes(double s, double phi, const Direction& e);

/// Born rule in Bloch form: (1 + alpha x.r) / 2, clamped into [0, 1].
double outcome_probability(const QubitState& state, const Direction& x, Outcome alpha);

/// Post-measurement eigenstate: bloch = alpha * x.
QubitState collapse(const Direction& x, Outcome alpha);

/// Two-step Born product: P(first = alpha along x) times the transition
/// probability |<y beta|x alpha>|^2 = (1 + alpha beta x.y) / 2.
double joint_probability(const QubitState& state, const Direction& x, Outcome alpha,
                         const Direction& y, Outcome beta);

/// E(x, y) for two consecutive measurements; equals x.y for every initial
/// state, so no state argument.
double correlator(const Direction& x, const Direction& y);

/// One throw: draw the first outcome from the Born rule, collapse, draw the
/// second from the collapsed state. Same-direction pairs agree exactly.
ThrowRecord sample_throw(const QubitState& state, std::pair<Setting, Direction> first,
                         std::pair<Setting, Direction> second, CounterRng& rng,
                         std::uint64_t throw_id = 0);

}  // namespace tbell::quantum
