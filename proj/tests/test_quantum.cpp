#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "oracle_qubit.hpp"
#include "tbell/quantum.hpp"
#include "test_helpers.hpp"

using namespace tbell;
using namespace tbell::quantum;

namespace {
constexpr double kInvSqrt2 = 0.7071067811865476;
const Direction kZ = unit_vector(0, 0, 1);
const Direction kX = unit_vector(1, 0, 0);
}  // namespace

TEST_CASE("state_from_amplitudes endpoints") {
    const QubitState up = state_from_amplitudes(1.0, 0.7, kZ);
    CHECK(up.bloch().x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(up.bloch().z == doctest::Approx(1.0).epsilon(1e-15));

    const QubitState down = state_from_amplitudes(0.0, 2.1, kZ);
    CHECK(down.bloch().z == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("equal-weight superposition is transverse to e") {
    const QubitState st = state_from_amplitudes(kInvSqrt2, 0.0, kZ);
    CHECK(std::abs(st.bloch().z) <= 1e-15);  // e-component vanishes
    CHECK(norm(st.bloch()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("state_from_amplitudes rejects s outside [0, 1]") {
    CHECK_THROWS_AS(state_from_amplitudes(1.0000001, 0.0, kZ), InvalidAmplitudeError);
    CHECK_THROWS_AS(state_from_amplitudes(-0.1, 0.0, kZ), InvalidAmplitudeError);
    CHECK_THROWS_AS(state_from_amplitudes(std::nan(""), 0.0, kZ), InvalidAmplitudeError);
}

TEST_CASE("Bloch vector matches the spinor oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const Direction e = testutil::random_direction(rng);
        const double s = uni(rng);
        const double phi = 2.0 * std::numbers::pi * uni(rng);
        const auto expected = oracle::bloch_vector(oracle::superposition(s, phi, e));
        const Vec3 got = state_from_amplitudes(s, phi, e).bloch();
        CHECK(got.x == doctest::Approx(expected[0]).epsilon(1e-11));
        CHECK(got.y == doctest::Approx(expected[1]).epsilon(1e-11));
        CHECK(got.z == doctest::Approx(expected[2]).epsilon(1e-11));
    }
}

TEST_CASE("outcome_probability basics") {
    const QubitState st = QubitState::pure(kZ);
    CHECK(outcome_probability(st, kZ, Outcome::Plus) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(outcome_probability(st, kX, Outcome::Plus) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(outcome_probability(st, kX, Outcome::Minus) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("probability of e+ is s^2") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Direction e = testutil::random_direction(rng);
        const double s = uni(rng);
        const QubitState st = state_from_amplitudes(s, 5.0 * uni(rng), e);
        CHECK(outcome_probability(st, e, Outcome::Plus) ==
              doctest::Approx(s * s).epsilon(1e-12));
    }
}

TEST_CASE("outcome probabilities match the spinor oracle") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const Direction e = testutil::random_direction(rng);
        const Direction x = testutil::random_direction(rng);
        const double s = uni(rng);
        const double phi = 2.0 * std::numbers::pi * uni(rng);
        const oracle::Spinor psi = oracle::superposition(s, phi, e);
        const QubitState st = state_from_amplitudes(s, phi, e);
        for (Outcome a : kBothOutcomes) {
            CHECK(outcome_probability(st, x, a) ==
                  doctest::Approx(oracle::born_probability(psi, x, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("collapse returns the eigenstate") {
    CHECK(collapse(kZ, Outcome::Plus).bloch() == Vec3{0, 0, 1});
    CHECK(collapse(kZ, Outcome::Minus).bloch() == Vec3{0, 0, -1});
    CHECK(collapse(kX, Outcome::Plus).bloch() == Vec3{1, 0, 0});
}

TEST_CASE("joint probability: certainty on the first factor") {
    const Direction y = unit_vector(0.3, -0.2, 0.9);
    const double t = dot(kZ, y);
    CHECK(joint_probability(QubitState::pure(kZ), kZ, Outcome::Plus, y, Outcome::Plus) ==
          doctest::Approx(0.5 * (1.0 + t)).epsilon(1e-13));
}

TEST_CASE("joint probability recovers P(a+, b+) = s^2 (1 + a.b)/2 when a = e") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Direction e = testutil::random_direction(rng);
        const Direction b = testutil::random_direction(rng);
        const double s = uni(rng);
        const QubitState st = state_from_amplitudes(s, 6.0 * uni(rng), e);
        CHECK(joint_probability(st, e, Outcome::Plus, b, Outcome::Plus) ==
              doctest::Approx(s * s * 0.5 * (1.0 + dot(e, b))).epsilon(1e-11));
        CHECK(joint_probability(st, e, Outcome::Minus, b, Outcome::Minus) ==
              doctest::Approx((1.0 - s * s) * 0.5 * (1.0 + dot(e, b))).epsilon(1e-11));
    }
}

TEST_CASE("joint probabilities match the two-projector oracle") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const Direction e = testutil::random_direction(rng);
        const Direction x = testutil::random_direction(rng);
        const Direction y = testutil::random_direction(rng);
        const double s = uni(rng);
        const double phi = 2.0 * std::numbers::pi * uni(rng);
        const oracle::Spinor psi = oracle::superposition(s, phi, e);
        const QubitState st = state_from_amplitudes(s, phi, e);
        for (Outcome a : kBothOutcomes) {
            for (Outcome b : kBothOutcomes) {
                CHECK(joint_probability(st, x, a, y, b) ==
                      doctest::Approx(oracle::joint_probability(psi, x, a, y, b)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("joint probability invariants over random mixed states") {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Direction d = testutil::random_direction(rng);
        const double shrink = uni(rng);  // mixed states included
        const QubitState st =
            QubitState::from_bloch(shrink * d.x(), shrink * d.y(), shrink * d.z());
        const Direction x = testutil::random_direction(rng);
        const Direction y = testutil::random_direction(rng);

        double sum = 0.0;
        for (Outcome a : kBothOutcomes) {
            double marginal = 0.0;
            for (Outcome b : kBothOutcomes) {
                const double p = joint_probability(st, x, a, y, b);
                CHECK(p >= 0.0);
                sum += p;
                marginal += p;
            }
            CHECK(marginal == doctest::Approx(outcome_probability(st, x, a)).epsilon(1e-12));
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

        // Perfect correlation is exact, not approximate.
        CHECK(joint_probability(st, x, Outcome::Plus, x, Outcome::Minus) == 0.0);
        CHECK(joint_probability(st, x, Outcome::Minus, x, Outcome::Plus) == 0.0);
    }
}

TEST_CASE("derived correlator is state independent and symmetric") {
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto derived = [](const QubitState& st, const Direction& u, const Direction& v) {
        double e = 0.0;
        for (Outcome a : kBothOutcomes) {
            for (Outcome b : kBothOutcomes) {
                e += value(a) * value(b) * joint_probability(st, u, a, v, b);
            }
        }
        return e;
    };
    for (int i = 0; i < 200; ++i) {
        const QubitState s1 =
            state_from_amplitudes(uni(rng), 6.0 * uni(rng), testutil::random_direction(rng));
        const QubitState s2 =
            state_from_amplitudes(uni(rng), 6.0 * uni(rng), testutil::random_direction(rng));
        const Direction x = testutil::random_direction(rng);
        const Direction y = testutil::random_direction(rng);

        const double e1 = derived(s1, x, y);
        CHECK(e1 == doctest::Approx(derived(s2, x, y)).epsilon(1e-12));
        CHECK(e1 == doctest::Approx(dot(x, y)).epsilon(1e-12));
        CHECK(e1 == doctest::Approx(derived(s1, y, x)).epsilon(1e-12));  // order symmetry
        CHECK(correlator(x, y) == dot(x, y));
    }
}

TEST_CASE("correlator endpoints") {
    const Direction y = unit_vector(0, 1, 0);
    CHECK(correlator(kX, kX) == 1.0);
    CHECK(correlator(kX, y) == 0.0);
    CHECK(correlator(kX, -kX) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("sampling an eigenstate always yields +1 first") {
    const QubitState st = QubitState::pure(kZ);
    CounterRng rng(5, 0);
    for (int i = 0; i < 10000; ++i) {
        const auto r = sample_throw(st, {Setting::A, kZ}, {Setting::B, kX}, rng);
        CHECK(r.first_outcome == Outcome::Plus);
    }
}

TEST_CASE("same setting repeats the first outcome exactly") {
    std::mt19937_64 seeder(28);
    const QubitState st = state_from_amplitudes(0.6, 1.0, unit_vector(0.3, 0.5, 1.0));
    for (int i = 0; i < 10000; ++i) {
        const Direction d = testutil::random_direction(seeder);
        CounterRng rng(77, static_cast<std::uint64_t>(i));
        const auto r = sample_throw(st, {Setting::B, d}, {Setting::B, d}, rng);
        CHECK(r.first_outcome == r.second_outcome);
    }
}

TEST_CASE("sampled joint frequencies match the exact probabilities") {
    const Direction x = unit_vector(1.0, 0.2, -0.3);
    const Direction y = unit_vector(-0.4, 1.0, 0.1);
    const QubitState st = state_from_amplitudes(0.8, 0.9, unit_vector(0.2, -1.0, 0.5));
    const int n = 1000000;
    std::array<std::array<int, 2>, 2> counts{};
    for (int i = 0; i < n; ++i) {
        CounterRng rng(3141, static_cast<std::uint64_t>(i));
        const auto r = sample_throw(st, {Setting::A, x}, {Setting::B, y}, rng);
        ++counts[index(r.first_outcome)][index(r.second_outcome)];
    }
    const double tol = 4.0 / std::sqrt(static_cast<double>(n));
    for (Outcome a : kBothOutcomes) {
        for (Outcome b : kBothOutcomes) {
            const double freq = counts[index(a)][index(b)] / static_cast<double>(n);
            CHECK(std::abs(freq - joint_probability(st, x, a, y, b)) <= tol);
        }
    }
}

TEST_CASE("sample_throw is bit-reproducible") {
    const QubitState st = state_from_amplitudes(0.7, 0.4, kZ);
    for (std::uint64_t id = 0; id < 50; ++id) {
        CounterRng r1(42, id), r2(42, id);
        CHECK(sample_throw(st, {Setting::A, kX}, {Setting::C, kZ}, r1, id) ==
              sample_throw(st, {Setting::A, kX}, {Setting::C, kZ}, r2, id));
    }
}

TEST_CASE("from_bloch rejects vectors outside the ball") {
    CHECK_THROWS_AS(QubitState::from_bloch(1.1, 0.0, 0.0), InvalidStateError);
    CHECK_NOTHROW(QubitState::from_bloch(0.3, 0.2, -0.4));
    CHECK_NOTHROW(QubitState::maximally_mixed());
}
