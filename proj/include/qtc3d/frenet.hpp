#ifndef QTC3D_FRENET_HPP
#define QTC3D_FRENET_HPP

#include <cstddef>
#include <vector>

#include "qtc3d/geometry.hpp"
#include "qtc3d/trajectory.hpp"

namespace qtc3d {

enum class DegeneracyKind { none, zero_displacement, parallel_tangents };

// How to resolve samples where the frame is undefined:
//   carry_forward  - reuse the previous tangent/binormal (orthonormal
//                    completion when there is no previous frame); symbols
//                    downstream stay defined.
//   mark_undefined - keep the completed frame for diagnostics but flag it,
//                    so downstream emits zero symbols with a warning.
enum class DegeneracyPolicy { carry_forward, mark_undefined };

const char* to_string(DegeneracyKind k);

// Orthonormal right-handed basis attached to sample `index`. Vectors are
// always populated; `degenerate` records whether they had to be resolved
// by the policy rather than computed from the data.
struct FrenetFrame {
    Vec3 t;
    Vec3 n;
    Vec3 b;
    std::size_t index = 0;
    DegeneracyKind degenerate = DegeneracyKind::none;

    RotationMatrix basis() const { return RotationMatrix::from_columns(t, n, b); }
};

struct FrenetOptions {
    DegeneracyPolicy policy = DegeneracyPolicy::carry_forward;
    double eps_disp = kDefaultEps;   // displacement below this has no tangent
    double eps_parallel = 1e-6;      // |t(i-1) x t(i)| below this has no binormal
};

// Discrete frames at tau = 1 .. n-2: tangent from the forward displacement,
// binormal from consecutive-tangent cross products, normal closing the
// right-handed triple. Throws AllDegenerateError when the object never
// moves.
std::vector<FrenetFrame> discrete_frames(const Trajectory& traj, const FrenetOptions& opt = {});

// Frames from analytic derivatives: t = v/|v|, n from the acceleration
// component orthogonal to t, b = t x n. Throws DegenerateError naming the
// first sample where |v| or |a_perp| falls below eps.
std::vector<FrenetFrame> continuous_frames(const std::vector<Vec3>& velocities,
                                           const std::vector<Vec3>& accelerations,
                                           double eps = kDefaultEps);

enum class TransformMode { world_frame, body_frame };

const char* to_string(TransformMode m);

struct FramePairTransform {
    RotationMatrix t;
    TransformMode mode = TransformMode::world_frame;
    std::size_t index = 0;
};

// Rotation aligning frame 1 with frame 2 at the same sample, with basis
// vectors as matrix columns. world_frame: T = F2 * F1^T (expressed in world
// coordinates). body_frame: T = F1^T * F2 (invariant under a global
// rotation of the scene).
FramePairTransform frame_transform(const FrenetFrame& f1, const FrenetFrame& f2,
                                   TransformMode mode = TransformMode::world_frame);

} // namespace qtc3d

#endif // QTC3D_FRENET_HPP
