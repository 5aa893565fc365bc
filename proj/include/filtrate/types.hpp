#pragma once

#include <cmath>

namespace filtrate {

/// Spatial vector.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Space-time evaluation point.
struct Point4 {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 spatial() const { return {x, y, z}; }
    double distance() const { return std::sqrt(x * x + y * y + z * z); }
};

}  // namespace filtrate
