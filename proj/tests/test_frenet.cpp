#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qtc3d/frenet.hpp"
#include "qtc3d/trajectory.hpp"

using namespace qtc3d;

namespace {

Trajectory from_points(const std::vector<Vec3>& pts, double dt = 1.0) {
    std::vector<TrajectorySample> s(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) s[i] = {static_cast<double>(i) * dt, pts[i]};
    return {"k", std::move(s), dt};
}

double max_component_error(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

double max_matrix_diff(const RotationMatrix& a, const RotationMatrix& b) {
    double err = 0.0;
    for (std::size_t i = 0; i < 9; ++i) err = std::max(err, std::abs(a.m[i] - b.m[i]));
    return err;
}

// snap to the 2^-20 lattice so translation arithmetic below 2^33 is exact
double snap(double x) { return std::ldexp(std::round(std::ldexp(x, 20)), -20); }

Trajectory snapped(const Trajectory& t) {
    std::vector<TrajectorySample> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        s[i] = {t.time(i), {snap(t.position(i).x), snap(t.position(i).y), snap(t.position(i).z)}};
    }
    return {t.object_id(), std::move(s), t.dt()};
}

bool bitwise_equal(const FrenetFrame& a, const FrenetFrame& b) {
    return a.t == b.t && a.n == b.n && a.b == b.b && a.degenerate == b.degenerate;
}

} // namespace

TEST_CASE("right-angle path produces the hand-derived frame") {
    const auto frames = discrete_frames(from_points({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}));
    REQUIRE(frames.size() == 1);
    const FrenetFrame& f = frames[0];
    CHECK(f.index == 1);
    CHECK(f.degenerate == DegeneracyKind::none);
    CHECK(f.t == Vec3{0, 1, 0});
    CHECK(f.b == Vec3{0, 0, 1});
    CHECK(f.n == Vec3{-1, 0, 0});
}

TEST_CASE("collinear points fall back to a deterministic completed basis") {
    const auto frames = discrete_frames(from_points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}));
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].degenerate == DegeneracyKind::parallel_tangents);
    CHECK(frames[0].t == Vec3{1, 0, 0});
    CHECK(frames[0].b == Vec3{0, 0, 1});
    CHECK(frames[0].n == Vec3{0, 1, 0});
}

TEST_CASE("zero displacement carries the previous tangent") {
    const auto frames = discrete_frames(
        from_points({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 2, 0}}));
    REQUIRE(frames.size() == 3);

    CHECK(frames[0].degenerate == DegeneracyKind::zero_displacement);
    CHECK(frames[0].t == Vec3{1, 0, 0});

    CHECK(frames[1].degenerate == DegeneracyKind::none);
    CHECK(frames[1].t == Vec3{0, 1, 0});
    CHECK(frames[1].b == Vec3{0, 0, 1});

    CHECK(frames[2].degenerate == DegeneracyKind::parallel_tangents);
    CHECK(frames[2].t == Vec3{0, 1, 0});
    CHECK(frames[2].b == Vec3{0, 0, 1}); // carried from the previous frame
}

TEST_CASE("degenerate leading displacement is back-filled from the first valid tangent") {
    const auto frames =
        discrete_frames(from_points({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 1, 0}}));
    REQUIRE(frames.size() == 2);
    // the back-filled tangent equals its neighbor, so the cross product vanishes
    CHECK(frames[0].degenerate == DegeneracyKind::parallel_tangents);
    CHECK(frames[0].t == Vec3{1, 0, 0});
    CHECK(frames[0].b == Vec3{0, 0, 1});
    CHECK(frames[1].t == Vec3{0, 1, 0});
    CHECK(frames[1].b == Vec3{0, 0, 1});
}

TEST_CASE("a stationary object has no frames at all") {
    CHECK_THROWS_AS(
        static_cast<void>(discrete_frames(from_points({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}))),
        AllDegenerateError);
}

TEST_CASE("mark_undefined keeps the same resolved vectors, only flags differ in meaning") {
    const Trajectory path = from_points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {2, 1, 0}});
    FrenetOptions opt;
    opt.policy = DegeneracyPolicy::mark_undefined;
    const auto marked = discrete_frames(path, opt);
    const auto carried = discrete_frames(path);
    REQUIRE(marked.size() == carried.size());
    for (std::size_t i = 0; i < marked.size(); ++i) CHECK(bitwise_equal(marked[i], carried[i]));
    CHECK(marked[0].degenerate == DegeneracyKind::parallel_tangents);
    CHECK(marked[1].degenerate == DegeneracyKind::none);
}

TEST_CASE("discrete frames converge to the analytic helix frame") {
    const double h = 0.01;
    const std::size_t n = 700;
    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) * h;
        pts[i] = {std::cos(s), std::sin(s), s};
    }
    const auto frames = discrete_frames(from_points(pts, h));
    REQUIRE(frames.size() == n - 2);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    double worst = 0.0;
    for (const FrenetFrame& f : frames) {
        REQUIRE(f.degenerate == DegeneracyKind::none);
        const double s = static_cast<double>(f.index) * h;
        const Vec3 t_ref = Vec3{-std::sin(s), std::cos(s), 1.0} * inv_sqrt2;
        const Vec3 n_ref{-std::cos(s), -std::sin(s), 0.0};
        const Vec3 b_ref = Vec3{std::sin(s), -std::cos(s), 1.0} * inv_sqrt2;
        worst = std::max({worst, max_component_error(f.t, t_ref),
                          max_component_error(f.n, n_ref), max_component_error(f.b, b_ref)});
    }
    CHECK(worst < 5.0 * h);
}

TEST_CASE("frames are orthonormal and right-handed on generated data") {
    SynthConfig cfg;
    cfg.n_samples = 500;
    cfg.rng_seed = 11;
    const auto frames = discrete_frames(synth_leader(cfg));
    REQUIRE(frames.size() == 498);
    for (const FrenetFrame& f : frames) {
        CHECK(std::abs(norm(f.t) - 1.0) < 1e-9);
        CHECK(std::abs(norm(f.n) - 1.0) < 1e-9);
        CHECK(std::abs(norm(f.b) - 1.0) < 1e-9);
        CHECK(std::abs(dot(f.t, f.n)) < 1e-9);
        CHECK(std::abs(dot(f.t, f.b)) < 1e-9);
        CHECK(std::abs(dot(f.n, f.b)) < 1e-9);
        CHECK(max_component_error(cross(f.t, f.n), f.b) < 1e-9);
        CHECK(std::abs(f.basis().determinant() - 1.0) < 1e-9);
    }
}

TEST_CASE("translation leaves frames bit-identical when the arithmetic is exact") {
    SynthConfig cfg;
    cfg.n_samples = 300;
    cfg.rng_seed = 5;
    const Trajectory base = snapped(synth_leader(cfg));
    const Trajectory moved = base.translated({7.25, -3.5, 11.0}); // lattice offset, exact sums

    const auto f0 = discrete_frames(base);
    const auto f1 = discrete_frames(moved);
    REQUIRE(f0.size() == f1.size());
    for (std::size_t i = 0; i < f0.size(); ++i) CHECK(bitwise_equal(f0[i], f1[i]));
}

TEST_CASE("global rotation maps every frame basis through the same rotation") {
    SynthConfig cfg;
    cfg.n_samples = 300;
    cfg.rng_seed = 9;
    const Trajectory base = synth_leader(cfg);
    const RotationMatrix r =
        rotation_about_z(0.7) * rotation_about_y(-0.4) * rotation_about_x(1.9);
    const auto f0 = discrete_frames(base);
    const auto f1 = discrete_frames(base.rotated(r));
    REQUIRE(f0.size() == f1.size());
    for (std::size_t i = 0; i < f0.size(); ++i) {
        CHECK(max_matrix_diff(f1[i].basis(), r * f0[i].basis()) < 1e-9);
    }
}

TEST_CASE("continuous frames reproduce textbook curves") {
    SUBCASE("unit circle at the start point") {
        const auto frames = continuous_frames({{0, 1, 0}}, {{-1, 0, 0}});
        REQUIRE(frames.size() == 1);
        CHECK(max_component_error(frames[0].t, {0, 1, 0}) < 1e-15);
        CHECK(max_component_error(frames[0].n, {-1, 0, 0}) < 1e-15);
        CHECK(max_component_error(frames[0].b, {0, 0, 1}) < 1e-15);
    }
    SUBCASE("helix at the start point") {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const auto frames = continuous_frames({{0, 1, 1}}, {{-1, 0, 0}});
        REQUIRE(frames.size() == 1);
        CHECK(max_component_error(frames[0].t, {0, inv_sqrt2, inv_sqrt2}) < 1e-15);
        CHECK(max_component_error(frames[0].n, {-1, 0, 0}) < 1e-15);
        CHECK(max_component_error(frames[0].b, {0, -inv_sqrt2, inv_sqrt2}) < 1e-15);
    }
    SUBCASE("straight line has no normal direction") {
        CHECK_THROWS_AS(static_cast<void>(continuous_frames({{1, 0, 0}}, {{0, 0, 0}})),
                        DegenerateError);
    }
    SUBCASE("zero velocity names the offending sample") {
        CHECK_THROWS_WITH_AS(
            static_cast<void>(continuous_frames({{0, 1, 0}, {0, 0, 0}}, {{-1, 0, 0}, {-1, 0, 0}})),
            "zero velocity at sample 1", DegenerateError);
    }
    SUBCASE("mismatched input lengths are rejected") {
        CHECK_THROWS_AS(static_cast<void>(continuous_frames({{0, 1, 0}}, {})), OutOfRangeError);
    }
}

TEST_CASE("frame transforms in both modes") {
    SynthConfig cfg;
    cfg.n_samples = 100;
    cfg.rng_seed = 21;
    const Trajectory traj = synth_leader(cfg);
    const auto frames = discrete_frames(traj);
    const FrenetFrame& f = frames[10];

    SUBCASE("equal frames give the identity") {
        CHECK(max_matrix_diff(frame_transform(f, f).t, RotationMatrix::identity()) < 1e-12);
        CHECK(max_matrix_diff(frame_transform(f, f, TransformMode::body_frame).t,
                              RotationMatrix::identity()) < 1e-12);
    }

    SUBCASE("a pre-rotated second frame is recovered in world mode") {
        const RotationMatrix rz = rotation_about_z(0.6);
        FrenetFrame g;
        g.t = rz * f.t;
        g.n = rz * f.n;
        g.b = rz * f.b;
        g.index = f.index;
        const FramePairTransform world = frame_transform(f, g);
        CHECK(world.mode == TransformMode::world_frame);
        CHECK(world.index == f.index);
        CHECK(max_matrix_diff(world.t, rz) < 1e-12);
    }

    SUBCASE("body mode is invariant under a global rotation, world mode is conjugated") {
        const FrenetFrame& g = frames[11];
        const RotationMatrix r =
            rotation_about_z(-1.2) * rotation_about_y(0.8) * rotation_about_x(0.3);
        FrenetFrame fr, gr;
        fr.t = r * f.t;
        fr.n = r * f.n;
        fr.b = r * f.b;
        gr.t = r * g.t;
        gr.n = r * g.n;
        gr.b = r * g.b;

        const RotationMatrix body0 = frame_transform(f, g, TransformMode::body_frame).t;
        const RotationMatrix body1 = frame_transform(fr, gr, TransformMode::body_frame).t;
        CHECK(max_matrix_diff(body0, body1) < 1e-9);

        const RotationMatrix world0 = frame_transform(f, g).t;
        const RotationMatrix world1 = frame_transform(fr, gr).t;
        CHECK(max_matrix_diff(world1, r * world0 * r.transposed()) < 1e-9);

        // rotation angle of the world transform is still invariant
        const double a0 = std::acos(std::clamp((world0.trace() - 1.0) / 2.0, -1.0, 1.0));
        const double a1 = std::acos(std::clamp((world1.trace() - 1.0) / 2.0, -1.0, 1.0));
        CHECK(std::abs(a0 - a1) < 1e-9);
    }
}
