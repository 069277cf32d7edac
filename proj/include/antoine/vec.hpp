#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>

namespace antoine {

/// 3-component vector over double. All library geometry lives in R^3.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    constexpr double norm2() const { return dot(*this); }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

/// 3x3 matrix, row-major. Used for the rotation part of similarities.
struct Mat3 {
    // rows r0..r2
    double a[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    static constexpr Mat3 identity() { return {}; }

    constexpr Vec3 operator*(const Vec3& v) const {
        return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
                a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
                a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
    }

    constexpr Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.a[i][j] = a[i][0] * o.a[0][j] + a[i][1] * o.a[1][j] + a[i][2] * o.a[2][j];
        return r;
    }

    constexpr Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.a[i][j] = a[j][i];
        return r;
    }

    constexpr double det() const {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
             - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
             + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }

    /// max-abs entry of M^T M - I; zero for exact rotations
    double orthogonality_defect() const {
        const Mat3 g = transpose() * (*this);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(g.a[i][j] - (i == j ? 1.0 : 0.0)));
        return worst;
    }

    /// Rodrigues rotation about a unit axis.
    static Mat3 axis_angle(const Vec3& axis, double angle) {
        const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        const double ux = axis.x, uy = axis.y, uz = axis.z;
        Mat3 r;
        r.a[0][0] = c + ux * ux * t;
        r.a[0][1] = ux * uy * t - uz * s;
        r.a[0][2] = ux * uz * t + uy * s;
        r.a[1][0] = uy * ux * t + uz * s;
        r.a[1][1] = c + uy * uy * t;
        r.a[1][2] = uy * uz * t - ux * s;
        r.a[2][0] = uz * ux * t - uy * s;
        r.a[2][1] = uz * uy * t + ux * s;
        r.a[2][2] = c + uz * uz * t;
        return r;
    }

    /// Columns as a matrix: maps e_i to col_i.
    static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.a[0][0] = c0.x; r.a[0][1] = c1.x; r.a[0][2] = c2.x;
        r.a[1][0] = c0.y; r.a[1][1] = c1.y; r.a[1][2] = c2.y;
        r.a[2][0] = c0.z; r.a[2][1] = c1.z; r.a[2][2] = c2.z;
        return r;
    }
};

/// Deterministic right-handed frame (e1, e2, n) for a unit normal n.
/// Seed axis is the coordinate axis least aligned with n (ties broken x, y, z),
/// so circles in coordinate planes get the natural parametrization.
inline void orthonormal_frame(const Vec3& n, Vec3& e1, Vec3& e2) {
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    Vec3 seed{1, 0, 0};
    if (ay < ax || az < ax) seed = (ay <= az) ? Vec3{0, 1, 0} : Vec3{0, 0, 1};
    if (ax <= ay && ax <= az) seed = Vec3{1, 0, 0};
    e1 = (seed - n * seed.dot(n)).normalized();
    e2 = n.cross(e1);
}

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

}  // namespace antoine
