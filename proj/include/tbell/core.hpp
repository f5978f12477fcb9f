#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "tbell/errors.hpp"

namespace tbell {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend constexpr bool operator==(Vec3 a, Vec3 b) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

/// Unit 3-vector on the Bloch sphere; components are normalized once at
/// construction, so every instance satisfies |x^2+y^2+z^2 - 1| <= 1e-12.
class Direction {
  public:
    Direction() = default;  // +x axis

    static Direction from_components(double x, double y, double z) {
        const double n2 = x * x + y * y + z * z;
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw InvalidDirectionError("direction components must be finite and not all zero");
        }
        const double inv = 1.0 / std::sqrt(n2);
        return Direction(Vec3{x * inv, y * inv, z * inv});
    }

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    Vec3 vec() const { return v_; }

    Direction operator-() const { return Direction(Vec3{-v_.x, -v_.y, -v_.z}); }
    friend bool operator==(const Direction& a, const Direction& b) { return a.v_ == b.v_; }

  private:
    explicit Direction(Vec3 v) : v_(v) {}
    Vec3 v_{1.0, 0.0, 0.0};
};

inline Direction unit_vector(double x, double y, double z) {
    return Direction::from_components(x, y, z);
}

/// Scalar product of two unit vectors, clamped to [-1, 1] so downstream
/// inverse-trig and probability formulas never see |cos| > 1. Identical
/// arguments short-circuit to exactly 1 (the unit invariant makes that the
/// exact value), which keeps same-setting correlations exact rather than
/// within an ulp.
inline double dot(const Direction& u, const Direction& v) {
    if (u == v) return 1.0;
    return std::clamp(dot(u.vec(), v.vec()), -1.0, 1.0);
}

enum class Setting : std::uint8_t { A = 0, B = 1, C = 2 };

constexpr std::array<Setting, 3> kAllSettings{Setting::A, Setting::B, Setting::C};

constexpr std::size_t index(Setting s) { return static_cast<std::size_t>(s); }

constexpr char to_char(Setting s) {
    constexpr char names[] = {'A', 'B', 'C'};
    return names[index(s)];
}

inline Setting setting_from_char(char c) {
    switch (c) {
        case 'A': return Setting::A;
        case 'B': return Setting::B;
        case 'C': return Setting::C;
        default: throw InvalidConfigError(std::string("unknown setting '") + c + "'");
    }
}

/// Dichotomic measurement result; only +1 and -1 exist.
enum class Outcome : std::int8_t { Plus = 1, Minus = -1 };

constexpr std::array<Outcome, 2> kBothOutcomes{Outcome::Plus, Outcome::Minus};

constexpr int value(Outcome o) { return static_cast<int>(o); }
constexpr Outcome flip(Outcome o) { return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus; }
constexpr std::size_t index(Outcome o) { return o == Outcome::Plus ? 0 : 1; }

inline Outcome outcome_from_int(int v) {
    if (v == 1) return Outcome::Plus;
    if (v == -1) return Outcome::Minus;
    throw InvalidConfigError("outcome must be +1 or -1, got " + std::to_string(v));
}

/// The three measurement directions a run uses. Repeated or collinear
/// directions are legal; degenerate() lets callers flag them.
struct SettingTriple {
    Direction a;
    Direction b;
    Direction c;

    const Direction& direction(Setting s) const {
        switch (s) {
            case Setting::A: return a;
            case Setting::B: return b;
            default: return c;
        }
    }

    bool degenerate() const {
        const double ab = std::abs(dot(a, b));
        const double ac = std::abs(dot(a, c));
        const double bc = std::abs(dot(b, c));
        return std::max({ab, ac, bc}) >= 1.0 - 1e-12;
    }
};

/// One experimental unit: two consecutive measurements with independently
/// chosen settings. Same-setting pairs are legal and carry the
/// perfect-correlation check.
struct ThrowRecord {
    std::uint64_t throw_id = 0;
    Setting first_setting = Setting::A;
    Outcome first_outcome = Outcome::Plus;
    Setting second_setting = Setting::A;
    Outcome second_outcome = Outcome::Plus;

    friend bool operator==(const ThrowRecord&, const ThrowRecord&) = default;
};

}  // namespace tbell
