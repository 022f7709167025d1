#ifndef QTC3D_GEOMETRY_HPP
#define QTC3D_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "qtc3d/errors.hpp"

namespace qtc3d {

constexpr double kDefaultEps = 1e-9;

inline double deg2rad(double deg) { return deg * M_PI / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / M_PI; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    bool operator==(const Vec3& o) const = default;
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_sq(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm_sq(a)); }

inline bool is_finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Throws DegenerateError when |a| < eps; the caller decides how to resolve
// an undefined direction.
Vec3 normalize(const Vec3& a, double eps = kDefaultEps);

// Angle between two vectors in [0, pi], via arccos of the clamped
// normalized dot product.
double angle_between(const Vec3& a, const Vec3& b, double eps = kDefaultEps);

// Row-major 3x3 rotation matrix. Construction does not enforce
// orthonormality; orthonormality_error() and determinant() expose the
// invariants so callers and tests can check them.
struct RotationMatrix {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static RotationMatrix identity() { return {}; }
    static RotationMatrix from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

    double operator()(std::size_t row, std::size_t col) const { return m[3 * row + col]; }
    double& operator()(std::size_t row, std::size_t col) { return m[3 * row + col]; }

    RotationMatrix transposed() const;
    RotationMatrix operator*(const RotationMatrix& o) const;
    Vec3 operator*(const Vec3& v) const;

    double determinant() const;
    double trace() const { return m[0] + m[4] + m[8]; }
    // max-norm of M*M^T - I
    double orthonormality_error() const;
};

RotationMatrix rotation_about_x(double angle);
RotationMatrix rotation_about_y(double angle);
RotationMatrix rotation_about_z(double angle);

// Rodrigues rotation of v about a unit axis.
Vec3 rotate_about_axis(const Vec3& v, const Vec3& unit_axis, double angle);

// Intrinsic z-y-x (yaw-pitch-roll) decomposition: psi in [-pi, pi],
// theta in [-pi/2, pi/2], phi in [-pi, pi].
struct TaitBryanAngles {
    double psi = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

// psi = atan2(r21, r11), theta = atan2(-r31, sqrt(r32^2 + r33^2)),
// phi = atan2(r32, r33). At gimbal lock (|r31| >= 1 - 1e-9) yaw and roll
// are not separable: phi is set to 0 and the whole in-plane rotation is
// folded into psi, keeping the output deterministic.
TaitBryanAngles extract_tait_bryan(const RotationMatrix& t);

// Rz(psi) * Ry(theta) * Rx(phi). Inverse of extract_tait_bryan away from
// gimbal lock.
RotationMatrix compose_tait_bryan(const TaitBryanAngles& a);

} // namespace qtc3d

#endif // QTC3D_GEOMETRY_HPP
