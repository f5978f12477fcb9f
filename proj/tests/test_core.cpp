#include <doctest.h>

#include <cmath>
#include <random>

#include "tbell/core.hpp"
#include "test_helpers.hpp"

using namespace tbell;

TEST_CASE("unit_vector normalizes its input") {
    const Direction d = unit_vector(0.0, 0.0, 2.0);
    CHECK(d.x() == 0.0);
    CHECK(d.y() == 0.0);
    CHECK(d.z() == 1.0);

    const Direction e = unit_vector(1.0, 1.0, 0.0);
    CHECK(e.x() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(e.y() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(e.z() == 0.0);
}

TEST_CASE("unit_vector rejects degenerate input") {
    CHECK_THROWS_AS(unit_vector(0.0, 0.0, 0.0), InvalidDirectionError);
    CHECK_THROWS_AS(unit_vector(std::nan(""), 1.0, 0.0), InvalidDirectionError);
    CHECK_THROWS_AS(unit_vector(std::numeric_limits<double>::infinity(), 0.0, 0.0),
                    InvalidDirectionError);
}

TEST_CASE("every constructed direction is unit to 1e-12") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> comp(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        double x = comp(rng), y = comp(rng), z = comp(rng);
        if (x == 0 && y == 0 && z == 0) continue;
        const Direction d = unit_vector(x, y, z);
        CHECK(std::abs(norm(d.vec()) - 1.0) <= 1e-12);
    }
}

TEST_CASE("dot basics") {
    const Direction x = unit_vector(1, 0, 0);
    const Direction y = unit_vector(0, 1, 0);
    CHECK(dot(x, x) == 1.0);  // identical arguments are exact
    CHECK(dot(x, y) == 0.0);
    CHECK(dot(x, -x) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("dot is symmetric and clamped") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const Direction u = testutil::random_direction(rng);
        const Direction v = testutil::random_direction(rng);
        CHECK(dot(u, v) == dot(v, u));  // bitwise, same summation order
        CHECK(dot(u, v) <= 1.0);
        CHECK(dot(u, v) >= -1.0);
        // Same ray reached through a different normalization path still
        // stays in range.
        const Direction u2 = unit_vector(3.0 * u.x(), 3.0 * u.y(), 3.0 * u.z());
        CHECK(std::abs(dot(u, u2)) <= 1.0);
        CHECK(dot(u, u2) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("settings and outcomes") {
    CHECK(kAllSettings.size() == 3);
    CHECK(to_char(Setting::A) == 'A');
    CHECK(setting_from_char('C') == Setting::C);
    CHECK_THROWS_AS(setting_from_char('D'), InvalidConfigError);

    CHECK(value(Outcome::Plus) == 1);
    CHECK(value(Outcome::Minus) == -1);
    CHECK(flip(Outcome::Plus) == Outcome::Minus);
    CHECK(outcome_from_int(-1) == Outcome::Minus);
    CHECK_THROWS_AS(outcome_from_int(0), InvalidConfigError);
    CHECK_THROWS_AS(outcome_from_int(2), InvalidConfigError);
}

TEST_CASE("setting triple accessors and degeneracy flag") {
    const SettingTriple t{unit_vector(1, 0, 0), unit_vector(0, 1, 0), unit_vector(1, 1, 0)};
    CHECK(t.direction(Setting::A) == t.a);
    CHECK(t.direction(Setting::B) == t.b);
    CHECK(t.direction(Setting::C) == t.c);
    CHECK_FALSE(t.degenerate());

    const SettingTriple same{t.a, t.a, t.c};
    CHECK(same.degenerate());
    const SettingTriple anti{t.a, -t.a, t.c};
    CHECK(anti.degenerate());
}

TEST_CASE("throw records compare by value") {
    const ThrowRecord r{3, Setting::A, Outcome::Plus, Setting::B, Outcome::Minus};
    ThrowRecord s = r;
    CHECK(r == s);
    s.second_outcome = Outcome::Plus;
    CHECK_FALSE(r == s);
}
