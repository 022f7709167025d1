#ifndef QTC3D_QTC_HPP
#define QTC3D_QTC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qtc3d/frenet.hpp"
#include "qtc3d/geometry.hpp"
#include "qtc3d/trajectory.hpp"

namespace qtc3d {

enum class QtcSymbol { minus = 0, zero = 1, plus = 2 };

char to_char(QtcSymbol s);
QtcSymbol symbol_from_char(char c); // throws InputError on anything but -, 0, +
QtcSymbol negated(QtcSymbol s);

// zero on the closed interval [-th, th], minus below, plus above
QtcSymbol quantize(double x, double th);

enum class QtcVariant { b1, b2, c1, c2, three_d };

const char* to_string(QtcVariant v);
QtcVariant variant_from_string(const std::string& name); // throws InputError
// constraint letters in tuple order, e.g. "ABCDEF" for c2
const char* variant_letters(QtcVariant v);
bool variant_is_2d(QtcVariant v);

// Thresholds around zero for each constraint family. Distances are in
// position units, speeds in position units per sample, angles in radians.
// The side constraint reuses angle_f_th against the sine of the deviation
// angle.
struct Thresholds {
    double dist_th = 0.0;
    double speed_th = 0.0;
    double angle_f_th = 0.0;
    double tait_bryan_th = deg2rad(10.0);
};

struct QtcTuple {
    std::size_t tau = 0;
    std::vector<QtcSymbol> symbols; // one per variant letter, tuple order
    bool warn = false;              // some relation was undefined at this tau
};

struct QtcSequence {
    QtcVariant variant = QtcVariant::three_d;
    std::string k_id;
    std::string l_id;
    Thresholds thresholds;
    TransformMode mode = TransformMode::world_frame;
    std::vector<QtcTuple> tuples;

    const char* letters() const { return variant_letters(variant); }
    std::string symbol_string(std::size_t row) const; // e.g. "-+-+--"
};

// Distance change of k relative to l's current position: minus means k is
// approaching l. Coincident points leave the relation undefined; the
// symbol is zero and *warn is set.
QtcSymbol constraint_a(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now, double dist_th,
                       double eps = kDefaultEps, bool* warn = nullptr);
// Same relation with the roles of k and l swapped.
QtcSymbol constraint_b(const Vec3& k_now, const Vec3& l_now, const Vec3& l_next, double dist_th,
                       double eps = kDefaultEps, bool* warn = nullptr);
// Relative per-sample displacement magnitude: minus means k is slower.
QtcSymbol constraint_c(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now,
                       const Vec3& l_next, double speed_th);
// Side of the directed line from k towards l that k moves to: plus means
// right (negative cross product), minus means left. Planar data only; the
// threshold scales with |u||v| so it acts on the sine of the deviation.
QtcSymbol constraint_d(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now, double side_th);
// Same side relation from l's point of view.
QtcSymbol constraint_e(const Vec3& k_now, const Vec3& l_now, const Vec3& l_next, double side_th);
// Compares the angles both velocities make with the line connecting the
// objects: minus means k's velocity is better aligned with it than l's.
// Undefined (zero + warn) when a velocity or the connecting line vanishes.
QtcSymbol constraint_f(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now,
                       const Vec3& l_next, double angle_f_th, double eps = kDefaultEps,
                       bool* warn = nullptr);

struct GhiSymbols {
    QtcSymbol g = QtcSymbol::zero;
    QtcSymbol h = QtcSymbol::zero;
    QtcSymbol i = QtcSymbol::zero;
};

// Quantized yaw/pitch/roll of the rotation aligning k's frame with l's.
GhiSymbols constraints_ghi(const FrenetFrame& fk, const FrenetFrame& fl, TransformMode mode,
                           double tait_bryan_th);

struct EncodeOptions {
    QtcVariant variant = QtcVariant::three_d;
    Thresholds thresholds;
    TransformMode mode = TransformMode::world_frame;
    FrenetOptions frenet;
    double planar_eps = kDefaultEps;
};

// Encodes a synchronized pair into per-sample symbol tuples. 2D variants
// cover tau = 0 .. n-2 and require both trajectories in the z = 0 plane;
// the 3D variant covers tau = 1 .. n-2 (where frames exist). Throws
// NotPlanarError and propagates AllDegenerateError.
QtcSequence encode(const TrajectoryPair& pair, const EncodeOptions& opt = {});

// CSV with header `tau,<letters>,warn`, one row per tuple.
std::string sequence_to_csv(const QtcSequence& seq);
// Parses the CSV back; variant inferred from the header letters. Ids,
// thresholds, and mode are not stored in CSV and stay defaulted.
QtcSequence sequence_from_csv(const std::string& text);
std::string sequence_to_json(const QtcSequence& seq);

} // namespace qtc3d

#endif // QTC3D_QTC_HPP
