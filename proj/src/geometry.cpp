#include "qtc3d/geometry.hpp"

#include <algorithm>

namespace qtc3d {

Vec3 normalize(const Vec3& a, double eps) {
    const double n = norm(a);
    if (n < eps) {
        throw DegenerateError("cannot normalize vector with norm " + std::to_string(n) +
                              " below eps " + std::to_string(eps));
    }
    return a / n;
}

double angle_between(const Vec3& a, const Vec3& b, double eps) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na < eps || nb < eps) {
        throw DegenerateError("angle between near-zero vectors is undefined");
    }
    const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
    return std::acos(c);
}

RotationMatrix RotationMatrix::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    RotationMatrix r;
    r.m = {c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z};
    return r;
}

RotationMatrix RotationMatrix::transposed() const {
    RotationMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& o) const {
    RotationMatrix r;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    }
    return r;
}

Vec3 RotationMatrix::operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

double RotationMatrix::determinant() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double RotationMatrix::orthonormality_error() const {
    const RotationMatrix p = (*this) * transposed();
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            err = std::max(err, std::abs(p(i, j) - target));
        }
    }
    return err;
}

RotationMatrix rotation_about_x(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    RotationMatrix r;
    r.m = {1, 0, 0, 0, c, -s, 0, s, c};
    return r;
}

RotationMatrix rotation_about_y(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    RotationMatrix r;
    r.m = {c, 0, s, 0, 1, 0, -s, 0, c};
    return r;
}

RotationMatrix rotation_about_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    RotationMatrix r;
    r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
    return r;
}

Vec3 rotate_about_axis(const Vec3& v, const Vec3& k, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return v * c + cross(k, v) * s + k * (dot(k, v) * (1.0 - c));
}

namespace {
constexpr double kGimbalLockTol = 1e-9;
}

TaitBryanAngles extract_tait_bryan(const RotationMatrix& t) {
    const double r11 = t(0, 0), r12 = t(0, 1);
    const double r21 = t(1, 0), r22 = t(1, 1);
    const double r31 = t(2, 0), r32 = t(2, 1), r33 = t(2, 2);

    TaitBryanAngles a;
    const double r31c = std::clamp(r31, -1.0, 1.0);
    if (std::abs(r31c) >= 1.0 - kGimbalLockTol) {
        // theta = -+pi/2: only psi -+ phi is observable. Fold everything
        // into psi; at theta=+pi/2 that recovers psi-phi, at -pi/2 psi+phi.
        a.theta = (r31c < 0.0) ? M_PI / 2.0 : -M_PI / 2.0;
        a.psi = std::atan2(-r12, r22);
        a.phi = 0.0;
        return a;
    }
    a.psi = std::atan2(r21, r11);
    a.theta = std::atan2(-r31, std::sqrt(r32 * r32 + r33 * r33));
    a.phi = std::atan2(r32, r33);
    return a;
}

RotationMatrix compose_tait_bryan(const TaitBryanAngles& a) {
    const double cz = std::cos(a.psi), sz = std::sin(a.psi);
    const double cy = std::cos(a.theta), sy = std::sin(a.theta);
    const double cx = std::cos(a.phi), sx = std::sin(a.phi);
    RotationMatrix r;
    r.m = {cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx,
           sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx,
           -sy,     cy * sx,                cy * cx};
    return r;
}

} // namespace qtc3d
