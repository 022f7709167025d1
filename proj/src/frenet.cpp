#include "qtc3d/frenet.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qtc3d/errors.hpp"

namespace qtc3d {

const char* to_string(DegeneracyKind k) {
    switch (k) {
    case DegeneracyKind::none: return "none";
    case DegeneracyKind::zero_displacement: return "zero_displacement";
    case DegeneracyKind::parallel_tangents: return "parallel_tangents";
    }
    return "none";
}

const char* to_string(TransformMode m) {
    return m == TransformMode::world_frame ? "world_frame" : "body_frame";
}

namespace {

// Canonical axis least aligned with t, lowest index on ties. Used to
// complete an orthonormal basis when the data does not determine one.
Vec3 least_aligned_axis(const Vec3& t) {
    const double ax = std::abs(t.x);
    const double ay = std::abs(t.y);
    const double az = std::abs(t.z);
    if (ax <= ay && ax <= az) return {1.0, 0.0, 0.0};
    if (ay <= az) return {0.0, 1.0, 0.0};
    return {0.0, 0.0, 1.0};
}

Vec3 completed_binormal(const Vec3& t) {
    return normalize(cross(t, least_aligned_axis(t)));
}

// Previous binormal projected off the new tangent; falls back to canonical
// completion when the two are (anti)parallel.
Vec3 carried_binormal(const Vec3& b_prev, const Vec3& t) {
    const Vec3 proj = b_prev - dot(b_prev, t) * t;
    const double len = norm(proj);
    if (len <= kDefaultEps) return completed_binormal(t);
    return proj / len;
}

} // namespace

std::vector<FrenetFrame> discrete_frames(const Trajectory& traj, const FrenetOptions& opt) {
    const std::size_t n = traj.size();
    const std::size_t n_tangents = n - 1;

    // Tangents at tau = 0 .. n-2 from forward displacements. Degenerate
    // entries are forward-filled from the last valid tangent; a degenerate
    // prefix is back-filled from the first valid one.
    std::vector<Vec3> tangents(n_tangents);
    std::vector<bool> tangent_ok(n_tangents, false);
    std::size_t first_valid = n_tangents;
    for (std::size_t i = 0; i < n_tangents; ++i) {
        const Vec3 d = traj.displacement(i);
        const double len = norm(d);
        if (len > opt.eps_disp) {
            tangents[i] = d / len;
            tangent_ok[i] = true;
            if (first_valid == n_tangents) first_valid = i;
        }
    }
    if (first_valid == n_tangents) {
        throw AllDegenerateError("no displacement exceeds eps_disp for object '" + traj.object_id() + "'");
    }
    for (std::size_t i = 0; i < first_valid; ++i) tangents[i] = tangents[first_valid];
    for (std::size_t i = first_valid + 1; i < n_tangents; ++i) {
        if (!tangent_ok[i]) tangents[i] = tangents[i - 1];
    }

    std::vector<FrenetFrame> frames;
    frames.reserve(n - 2);
    bool have_prev_b = false;
    Vec3 prev_b{};
    for (std::size_t tau = 1; tau + 1 < n; ++tau) {
        FrenetFrame f;
        f.index = tau;
        f.t = tangents[tau];
        if (!tangent_ok[tau]) f.degenerate = DegeneracyKind::zero_displacement;

        const Vec3 c = cross(tangents[tau - 1], tangents[tau]);
        const double clen = norm(c);
        if (clen > opt.eps_parallel) {
            f.b = c / clen;
        } else {
            if (f.degenerate == DegeneracyKind::none) f.degenerate = DegeneracyKind::parallel_tangents;
            f.b = have_prev_b ? carried_binormal(prev_b, f.t) : completed_binormal(f.t);
        }
        f.n = cross(f.b, f.t);
        prev_b = f.b;
        have_prev_b = true;
        frames.push_back(f);
    }
    (void)opt.policy; // resolution is identical; the flag drives downstream handling
    return frames;
}

std::vector<FrenetFrame> continuous_frames(const std::vector<Vec3>& velocities,
                                           const std::vector<Vec3>& accelerations,
                                           double eps) {
    if (velocities.size() != accelerations.size()) {
        throw OutOfRangeError("velocity and acceleration sequences differ in length");
    }
    std::vector<FrenetFrame> frames;
    frames.reserve(velocities.size());
    for (std::size_t i = 0; i < velocities.size(); ++i) {
        const double v_len = norm(velocities[i]);
        if (v_len <= eps) {
            throw DegenerateError("zero velocity at sample " + std::to_string(i));
        }
        FrenetFrame f;
        f.index = i;
        f.t = velocities[i] / v_len;
        const Vec3 a_perp = accelerations[i] - dot(accelerations[i], f.t) * f.t;
        const double a_len = norm(a_perp);
        if (a_len <= eps) {
            throw DegenerateError("acceleration parallel to velocity at sample " + std::to_string(i));
        }
        f.n = a_perp / a_len;
        f.b = cross(f.t, f.n);
        frames.push_back(f);
    }
    return frames;
}

FramePairTransform frame_transform(const FrenetFrame& f1, const FrenetFrame& f2, TransformMode mode) {
    const RotationMatrix m1 = f1.basis();
    const RotationMatrix m2 = f2.basis();
    FramePairTransform out;
    out.mode = mode;
    out.index = f1.index;
    if (mode == TransformMode::world_frame) {
        out.t = m2 * m1.transposed();
    } else {
        out.t = m1.transposed() * m2;
    }
    return out;
}

} // namespace qtc3d
