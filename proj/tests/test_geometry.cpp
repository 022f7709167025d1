#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qtc3d/geometry.hpp"

using namespace qtc3d;

namespace {

// Independent oracle: generic matrix product of the three axis rotations,
// written out without reusing the library's composed form.
RotationMatrix oracle_zyx(double psi, double theta, double phi) {
    auto mul = [](const RotationMatrix& a, const RotationMatrix& b) {
        RotationMatrix r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    };
    return mul(mul(rotation_about_z(psi), rotation_about_y(theta)), rotation_about_x(phi));
}

double max_abs_diff(const RotationMatrix& a, const RotationMatrix& b) {
    double err = 0;
    for (int i = 0; i < 9; ++i) err = std::max(err, std::abs(a.m[i] - b.m[i]));
    return err;
}

} // namespace

TEST_CASE("cross product basics") {
    CHECK(cross({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, 1});
    const Vec3 a{2.5, -1.25, 7.0};
    CHECK(cross(a, a) == Vec3{0, 0, 0});
    // hand expansion of the determinant formula
    CHECK(cross({0, 0, 1}, {0, 1, 0}) == Vec3{-1, 0, 0});
}

TEST_CASE("cross anticommutes exactly") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const Vec3 a{u(rng), u(rng), u(rng)};
        const Vec3 b{u(rng), u(rng), u(rng)};
        CHECK(cross(a, b) == -cross(b, a));
    }
}

TEST_CASE("normalize") {
    const Vec3 n = normalize({3, 0, 4});
    CHECK(n.x == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(n.y == 0.0);
    CHECK(n.z == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(norm(n) - 1.0) < 1e-12);

    CHECK_THROWS_AS(normalize({0, 0, 0}), DegenerateError);
    CHECK_THROWS_AS(normalize({1e-12, 0, 0}), DegenerateError);
    CHECK_NOTHROW(normalize({1e-12, 0, 0}, 1e-13));
}

TEST_CASE("extract_tait_bryan identity and single-axis rotations") {
    const TaitBryanAngles id = extract_tait_bryan(RotationMatrix::identity());
    CHECK(id.psi == 0.0);
    CHECK(id.theta == 0.0);
    CHECK(id.phi == 0.0);

    const auto z30 = extract_tait_bryan(rotation_about_z(deg2rad(30)));
    CHECK(z30.psi == doctest::Approx(M_PI / 6).epsilon(1e-12));
    CHECK(z30.theta == doctest::Approx(0.0).scale(1));
    CHECK(z30.phi == doctest::Approx(0.0).scale(1));

    const auto x20 = extract_tait_bryan(rotation_about_x(deg2rad(20)));
    CHECK(x20.psi == doctest::Approx(0.0).scale(1));
    CHECK(x20.theta == doctest::Approx(0.0).scale(1));
    CHECK(x20.phi == doctest::Approx(deg2rad(20)).epsilon(1e-12));

    const auto ym20 = extract_tait_bryan(rotation_about_y(deg2rad(-20)));
    CHECK(ym20.theta == doctest::Approx(deg2rad(-20)).epsilon(1e-12));
    CHECK(ym20.psi == doctest::Approx(0.0).scale(1));
    CHECK(ym20.phi == doctest::Approx(0.0).scale(1));
}

TEST_CASE("compose_tait_bryan matches the independent matrix-product oracle") {
    CHECK(max_abs_diff(compose_tait_bryan({0, 0, 0}), RotationMatrix::identity()) == 0.0);
    CHECK(max_abs_diff(compose_tait_bryan({M_PI / 6, 0, 0}), rotation_about_z(M_PI / 6)) < 1e-15);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> upi(-M_PI, M_PI);
    std::uniform_real_distribution<double> uth(-M_PI / 2 + 0.1, M_PI / 2 - 0.1);
    for (int i = 0; i < 500; ++i) {
        const TaitBryanAngles a{upi(rng), uth(rng), upi(rng)};
        CHECK(max_abs_diff(compose_tait_bryan(a), oracle_zyx(a.psi, a.theta, a.phi)) < 1e-14);
    }
}

TEST_CASE("compose/extract round trip away from gimbal lock") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> upi(-M_PI, M_PI);
    std::uniform_real_distribution<double> uth(-M_PI / 2 + 0.1, M_PI / 2 - 0.1);
    for (int i = 0; i < 1000; ++i) {
        const TaitBryanAngles a{upi(rng), uth(rng), upi(rng)};
        const RotationMatrix t = compose_tait_bryan(a);
        CHECK(t.orthonormality_error() < 1e-9);
        CHECK(t.determinant() == doctest::Approx(1.0).epsilon(1e-9));
        const TaitBryanAngles back = extract_tait_bryan(t);
        CHECK(back.psi == doctest::Approx(a.psi).epsilon(1e-9).scale(1));
        CHECK(back.theta == doctest::Approx(a.theta).epsilon(1e-9).scale(1));
        CHECK(back.phi == doctest::Approx(a.phi).epsilon(1e-9).scale(1));
    }
}

TEST_CASE("gimbal lock is resolved deterministically") {
    // at theta=+pi/2 only psi-phi is observable
    const RotationMatrix t = compose_tait_bryan({0.3, M_PI / 2, 0.2});
    const TaitBryanAngles a = extract_tait_bryan(t);
    CHECK(a.phi == 0.0);
    CHECK(a.theta == doctest::Approx(M_PI / 2).epsilon(1e-9));
    CHECK(a.psi == doctest::Approx(0.1).epsilon(1e-9).scale(1));

    // at theta=-pi/2 only psi+phi is observable
    const TaitBryanAngles b = extract_tait_bryan(compose_tait_bryan({0.3, -M_PI / 2, 0.2}));
    CHECK(b.phi == 0.0);
    CHECK(b.theta == doctest::Approx(-M_PI / 2).epsilon(1e-9));
    CHECK(b.psi == doctest::Approx(0.5).epsilon(1e-9).scale(1));
}

TEST_CASE("rotate_about_axis") {
    const Vec3 r = rotate_about_axis({1, 0, 0}, {0, 0, 1}, M_PI / 2);
    CHECK(r.x == doctest::Approx(0.0).scale(1));
    CHECK(r.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.z == 0.0);
    // zero angle is the identity, bit for bit
    const Vec3 v{0.3, -0.7, 0.64};
    CHECK(rotate_about_axis(v, {0, 1, 0}, 0.0) == v);
}

TEST_CASE("angle_between") {
    CHECK(angle_between({1, 0, 0}, {0, 1, 0}) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(angle_between({1, 0, 0}, {1, 0, 0}) == 0.0);
    CHECK(angle_between({1, 0, 0}, {-2, 0, 0}) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK_THROWS_AS(angle_between({0, 0, 0}, {1, 0, 0}), DegenerateError);
}
