#ifndef QTC3D_TRAJECTORY_HPP
#define QTC3D_TRAJECTORY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qtc3d/errors.hpp"
#include "qtc3d/geometry.hpp"

namespace qtc3d {

struct TrajectorySample {
    double t = 0.0;
    Vec3 p;
};

// Uniformly sampled 3D path of one moving object. Validated on
// construction: at least 3 samples, strictly increasing timestamps with
// |t[i+1] - t[i] - dt| < 1e-6 * dt, finite positions. Immutable afterwards.
class Trajectory {
public:
    Trajectory(std::string object_id, std::vector<TrajectorySample> samples, double dt);

    const std::string& object_id() const { return id_; }
    const std::vector<TrajectorySample>& samples() const { return samples_; }
    double dt() const { return dt_; }
    std::size_t size() const { return samples_.size(); }

    const Vec3& position(std::size_t i) const { return samples_[i].p; }
    double time(std::size_t i) const { return samples_[i].t; }

    // displacement x(i+1) - x(i); valid for i < size()-1
    Vec3 displacement(std::size_t i) const { return samples_[i + 1].p - samples_[i].p; }

    bool is_planar(double eps = kDefaultEps) const;

    Trajectory translated(const Vec3& offset) const;
    Trajectory rotated(const RotationMatrix& r) const;

private:
    std::string id_;
    std::vector<TrajectorySample> samples_;
    double dt_;
};

// Two trajectories with equal sample counts and equal dt.
struct TrajectoryPair {
    TrajectoryPair(Trajectory k_traj, Trajectory l_traj);

    Trajectory k;
    Trajectory l;

    std::size_t size() const { return k.size(); }
    TrajectoryPair swapped() const { return {l, k}; }
};

// Maps the loader's logical columns onto a file's header names, so files
// with arbitrary column labels can be ingested without code changes.
struct ColumnMap {
    std::string id = "id";
    std::string t = "t";
    std::string x = "x";
    std::string y = "y";
    std::string z = "z"; // optional in the file; missing z loads as 0
};

// Loads one Trajectory per object id, samples sorted by time, in first-
// encounter order of the ids. dt <= 0 means "infer from the first gap of
// each object". Throws ParseError, NonUniformSamplingError, TooShortError.
std::vector<Trajectory> load_csv(const std::string& path, const ColumnMap& columns = {},
                                 double dt = 0.0);

// Writes `id,t,x,y,z` rows with round-trip-exact float formatting.
void save_csv(const std::string& path, const std::vector<Trajectory>& trajectories);
std::string trajectories_to_csv(const std::vector<Trajectory>& trajectories);

// Cuts both members to the window [start, start+count). Throws
// OutOfRangeError when the window is not covered.
TrajectoryPair truncate_sync(const TrajectoryPair& pair, std::size_t start, std::size_t count);

// Default geometry keeps the per-sample displacement (speed*dt) large
// against follower_noise: tangent noise ~ noise*sqrt(2)/displacement gets
// amplified by 1/turn-angle when it reaches the binormal, so small steps
// drown the follower's frame alignment in noise.
struct SynthConfig {
    std::size_t n_samples = 2000;
    double dt = 1.0;                 // seconds
    double leader_turn_rate = 0.15;  // radians/sample std-dev of heading increments
    std::size_t follower_delay = 0;  // samples
    double follower_noise = 0.1;     // meters std-dev per axis
    std::uint64_t rng_seed = 1;
    double speed = 20.0;             // meters/second, constant
    Vec3 follower_offset{0.0, 5.0, 0.0};
};

// Constant-speed curve whose heading performs a random walk on the unit
// sphere: each step rotates the heading by Normal(0, leader_turn_rate)
// radians about a uniformly random perpendicular axis. Deterministic for a
// given seed.
Trajectory synth_leader(const SynthConfig& cfg);

// Delayed copy of the leader, displaced by follower_offset, with i.i.d.
// per-axis Gaussian position noise. The first follower_delay samples hold
// the leader's start position.
Trajectory synth_follower(const Trajectory& leader, const SynthConfig& cfg);

// Leader-style curve drawn from an independent seed stream.
Trajectory synth_nonfollower(const SynthConfig& cfg);

} // namespace qtc3d

#endif // QTC3D_TRAJECTORY_HPP
