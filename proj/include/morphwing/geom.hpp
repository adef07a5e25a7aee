#pragma once

#include <cmath>

namespace morphwing {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }

    double norm() const { return std::hypot(x, y); }
    double angle() const { return std::atan2(y, x); }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// CCW perpendicular
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Wrap to [0, 2*pi)
inline double wrap_two_pi(double a) {
    double r = std::fmod(a, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

// Wrap to (-pi, pi]
inline double wrap_pi(double a) {
    double r = wrap_two_pi(a);
    if (r > kPi) r -= 2.0 * kPi;
    return r;
}

// Signed angular difference a - b wrapped to (-pi, pi]
inline double angle_diff(double a, double b) { return wrap_pi(a - b); }

}  // namespace morphwing
