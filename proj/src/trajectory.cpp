#include "qtc3d/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace qtc3d {

namespace {

constexpr double kUniformTol = 1e-6; // relative to dt

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Trajectory::Trajectory(std::string object_id, std::vector<TrajectorySample> samples, double dt)
    : id_(std::move(object_id)), samples_(std::move(samples)), dt_(dt) {
    if (samples_.size() < 3) {
        throw TooShortError("trajectory '" + id_ + "' has " + std::to_string(samples_.size()) +
                            " samples, need at least 3");
    }
    if (!(dt_ > 0.0)) {
        throw Error("trajectory '" + id_ + "' has non-positive dt");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!is_finite(samples_[i].p) || !std::isfinite(samples_[i].t)) {
            throw Error("trajectory '" + id_ + "' has non-finite sample at index " +
                        std::to_string(i));
        }
        if (i > 0) {
            const double gap = samples_[i].t - samples_[i - 1].t;
            if (gap <= 0.0 || std::abs(gap - dt_) >= kUniformTol * dt_) {
                throw NonUniformSamplingError(
                    "trajectory '" + id_ + "' violates uniform sampling: gap " +
                        std::to_string(gap) + " vs dt " + std::to_string(dt_),
                    samples_[i].t);
            }
        }
    }
}

bool Trajectory::is_planar(double eps) const {
    return std::all_of(samples_.begin(), samples_.end(),
                       [eps](const TrajectorySample& s) { return std::abs(s.p.z) <= eps; });
}

Trajectory Trajectory::translated(const Vec3& offset) const {
    std::vector<TrajectorySample> out = samples_;
    for (auto& s : out) s.p = s.p + offset;
    return {id_, std::move(out), dt_};
}

Trajectory Trajectory::rotated(const RotationMatrix& r) const {
    std::vector<TrajectorySample> out = samples_;
    for (auto& s : out) s.p = r * s.p;
    return {id_, std::move(out), dt_};
}

TrajectoryPair::TrajectoryPair(Trajectory k_traj, Trajectory l_traj)
    : k(std::move(k_traj)), l(std::move(l_traj)) {
    if (k.size() != l.size()) {
        throw Error("trajectory pair not synchronized: " + std::to_string(k.size()) + " vs " +
                    std::to_string(l.size()) + " samples");
    }
    if (std::abs(k.dt() - l.dt()) >= kUniformTol * k.dt()) {
        throw Error("trajectory pair has mismatched dt");
    }
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double_field(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && *begin == ' ') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("cannot parse number '" + field + "'", line_no);
    }
    if (!std::isfinite(v)) {
        throw ParseError("non-finite value '" + field + "'", line_no);
    }
    return v;
}

} // namespace

std::vector<Trajectory> load_csv(const std::string& path, const ColumnMap& columns, double dt) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("empty file", 1);
    }
    ++line_no;

    const std::vector<std::string> header = split_csv_row(line);
    auto find_col = [&](const std::string& name) -> long {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<long>(i);
        return -1;
    };
    const long col_id = find_col(columns.id);
    const long col_t = find_col(columns.t);
    const long col_x = find_col(columns.x);
    const long col_y = find_col(columns.y);
    const long col_z = find_col(columns.z); // optional
    if (col_id < 0 || col_t < 0 || col_x < 0 || col_y < 0) {
        throw ParseError("header is missing one of the mapped columns '" + columns.id + "','" +
                             columns.t + "','" + columns.x + "','" + columns.y + "'",
                         1);
    }

    std::vector<std::string> id_order;
    std::map<std::string, std::vector<TrajectorySample>> per_object;
    const std::size_t needed =
        static_cast<std::size_t>(std::max({col_id, col_t, col_x, col_y, col_z})) + 1;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_row(line);
        if (fields.size() < needed) {
            throw ParseError("expected at least " + std::to_string(needed) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        const std::string& id = fields[static_cast<std::size_t>(col_id)];
        TrajectorySample s;
        s.t = parse_double_field(fields[static_cast<std::size_t>(col_t)], line_no);
        s.p.x = parse_double_field(fields[static_cast<std::size_t>(col_x)], line_no);
        s.p.y = parse_double_field(fields[static_cast<std::size_t>(col_y)], line_no);
        s.p.z = col_z >= 0 ? parse_double_field(fields[static_cast<std::size_t>(col_z)], line_no)
                           : 0.0;
        auto [it, inserted] = per_object.try_emplace(id);
        if (inserted) id_order.push_back(id);
        it->second.push_back(s);
    }

    std::vector<Trajectory> out;
    out.reserve(id_order.size());
    for (const std::string& id : id_order) {
        std::vector<TrajectorySample>& samples = per_object[id];
        std::stable_sort(samples.begin(), samples.end(),
                         [](const TrajectorySample& a, const TrajectorySample& b) { return a.t < b.t; });
        if (samples.size() < 3) {
            throw TooShortError("object '" + id + "' has " + std::to_string(samples.size()) +
                                " samples, need at least 3");
        }
        const double object_dt = dt > 0.0 ? dt : samples[1].t - samples[0].t;
        if (!(object_dt > 0.0)) {
            throw NonUniformSamplingError("object '" + id + "' has duplicate leading timestamps",
                                          samples[1].t);
        }
        out.emplace_back(id, std::move(samples), object_dt);
    }
    return out;
}

std::string trajectories_to_csv(const std::vector<Trajectory>& trajectories) {
    std::ostringstream out;
    out << "id,t,x,y,z\n";
    for (const Trajectory& traj : trajectories) {
        for (const TrajectorySample& s : traj.samples()) {
            out << traj.object_id() << ',' << format_double(s.t) << ',' << format_double(s.p.x)
                << ',' << format_double(s.p.y) << ',' << format_double(s.p.z) << '\n';
        }
    }
    return out.str();
}

void save_csv(const std::string& path, const std::vector<Trajectory>& trajectories) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << trajectories_to_csv(trajectories);
}

TrajectoryPair truncate_sync(const TrajectoryPair& pair, std::size_t start, std::size_t count) {
    if (start + count > pair.size() || count == 0) {
        throw OutOfRangeError("window [" + std::to_string(start) + ", " +
                              std::to_string(start + count) + ") exceeds pair length " +
                              std::to_string(pair.size()));
    }
    auto cut = [&](const Trajectory& t) {
        std::vector<TrajectorySample> samples(t.samples().begin() + static_cast<long>(start),
                                              t.samples().begin() + static_cast<long>(start + count));
        return Trajectory(t.object_id(), std::move(samples), t.dt());
    };
    return {cut(pair.k), cut(pair.l)};
}

namespace {

enum : std::uint64_t { kLeaderStream = 1, kFollowerStream = 2, kNonFollowerStream = 3 };

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

// deterministic orthonormal basis of the plane perpendicular to unit h
std::pair<Vec3, Vec3> plane_basis(const Vec3& h) {
    const double ax = std::abs(h.x), ay = std::abs(h.y), az = std::abs(h.z);
    Vec3 e{1, 0, 0};
    if (ay <= ax && ay <= az) e = {0, 1, 0};
    else if (az <= ax && az <= ay) e = {0, 0, 1};
    const Vec3 e1 = normalize(cross(h, e));
    const Vec3 e2 = cross(h, e1);
    return {e1, e2};
}

void validate(const SynthConfig& cfg) {
    if (cfg.n_samples < 10) throw Error("synth config needs n_samples >= 10");
    if (!(cfg.dt > 0.0)) throw Error("synth config needs dt > 0");
    if (cfg.follower_noise < 0.0) throw Error("synth config needs follower_noise >= 0");
    if (cfg.leader_turn_rate < 0.0) throw Error("synth config needs leader_turn_rate >= 0");
    if (!(cfg.speed > 0.0)) throw Error("synth config needs speed > 0");
}

Trajectory synth_curve(const SynthConfig& cfg, std::uint64_t stream, const std::string& id) {
    validate(cfg);
    std::mt19937_64 rng = make_rng(cfg.rng_seed, stream);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uangle(0.0, 2.0 * M_PI);

    const double step = cfg.speed * cfg.dt;
    Vec3 heading{1, 0, 0};
    Vec3 p{0, 0, 0};
    std::vector<TrajectorySample> samples(cfg.n_samples);
    samples[0] = {0.0, p};
    for (std::size_t i = 1; i < cfg.n_samples; ++i) {
        const double delta = cfg.leader_turn_rate * gauss(rng);
        const double a = uangle(rng);
        const auto [e1, e2] = plane_basis(heading);
        const Vec3 axis = e1 * std::cos(a) + e2 * std::sin(a);
        heading = normalize(rotate_about_axis(heading, axis, delta));
        p = p + heading * step;
        samples[i] = {static_cast<double>(i) * cfg.dt, p};
    }
    return {id, std::move(samples), cfg.dt};
}

} // namespace

Trajectory synth_leader(const SynthConfig& cfg) {
    return synth_curve(cfg, kLeaderStream, "leader");
}

Trajectory synth_nonfollower(const SynthConfig& cfg) {
    return synth_curve(cfg, kNonFollowerStream, "nonfollower");
}

Trajectory synth_follower(const Trajectory& leader, const SynthConfig& cfg) {
    validate(cfg);
    if (cfg.follower_delay >= leader.size()) {
        throw OutOfRangeError("follower_delay " + std::to_string(cfg.follower_delay) +
                              " not below leader length " + std::to_string(leader.size()));
    }
    std::mt19937_64 rng = make_rng(cfg.rng_seed, kFollowerStream);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const std::size_t n = leader.size();
    std::vector<TrajectorySample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = i >= cfg.follower_delay ? i - cfg.follower_delay : 0;
        const Vec3 noise{cfg.follower_noise * gauss(rng), cfg.follower_noise * gauss(rng),
                         cfg.follower_noise * gauss(rng)};
        samples[i] = {leader.time(i), leader.position(src) + cfg.follower_offset + noise};
    }
    return {"follower", std::move(samples), leader.dt()};
}

} // namespace qtc3d
