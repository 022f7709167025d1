// qtc3d: encode trajectory pairs into qualitative motion symbols and run
// entropy-based leader/follower analysis on the results.
//
// Subcommands: encode, frames, analyze, sweep, synth. Every run is
// deterministic given its flags (and seed); angle flags are degrees.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtc3d/analysis.hpp"

namespace {

using namespace qtc3d;

void emit_error(const char* kind, const std::string& what) {
    const nlohmann::json j{{"error", kind}, {"what", what}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
}

// Temp file in the target directory, then rename: readers never observe a
// partial file.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw InputError("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw InputError("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// "file.csv:k_id:l_id"
struct PairSpec {
    std::string path, k, l;
};

PairSpec parse_pair_spec(const std::string& s) {
    const std::size_t c2 = s.rfind(':');
    const std::size_t c1 = c2 == std::string::npos ? c2 : s.rfind(':', c2 - 1);
    if (c1 == std::string::npos || c1 == 0 || c1 + 1 == c2 || c2 + 1 == s.size())
        throw InputError("pair spec must be file:k_id:l_id, got '" + s + "'");
    return {s.substr(0, c1), s.substr(c1 + 1, c2 - c1 - 1), s.substr(c2 + 1)};
}

struct LoadOpts {
    ColumnMap columns;
    double dt = 0.0; // 0 infers from the first gap
};

const Trajectory& find_object(const std::vector<Trajectory>& trajs, const std::string& id,
                              const std::string& path) {
    for (const Trajectory& t : trajs)
        if (t.object_id() == id) return t;
    std::string ids;
    for (const Trajectory& t : trajs) ids += (ids.empty() ? "" : ", ") + t.object_id();
    throw InputError("object '" + id + "' not found in '" + path + "' (have: " + ids + ")");
}

TrajectoryPair load_pair(const PairSpec& spec, const LoadOpts& load) {
    const std::vector<Trajectory> trajs = load_csv(spec.path, load.columns, load.dt);
    return {find_object(trajs, spec.k, spec.path), find_object(trajs, spec.l, spec.path)};
}

// Shared flag bundles. CLI11 stores pointers to these, so they live in the
// command structs below for the duration of parse+callback.
void add_load_flags(CLI::App* cmd, LoadOpts& load) {
    cmd->add_option("--dt", load.dt, "Sampling interval; inferred from the file when omitted");
    cmd->add_option("--col-id", load.columns.id, "Object id column name")->capture_default_str();
    cmd->add_option("--col-t", load.columns.t, "Timestamp column name")->capture_default_str();
    cmd->add_option("--col-x", load.columns.x, "X column name")->capture_default_str();
    cmd->add_option("--col-y", load.columns.y, "Y column name")->capture_default_str();
    cmd->add_option("--col-z", load.columns.z, "Z column name (zero when absent)")
        ->capture_default_str();
}

void add_frame_flags(CLI::App* cmd, std::string& mode, std::string& policy) {
    cmd->add_option("--mode", mode, "Frame comparison mode: world or body")
        ->check(CLI::IsMember({"world", "body"}))
        ->capture_default_str();
    cmd->add_option("--policy", policy, "Degenerate-frame policy: carry or mark")
        ->check(CLI::IsMember({"carry", "mark"}))
        ->capture_default_str();
}

TransformMode mode_from(const std::string& s) {
    return s == "body" ? TransformMode::body_frame : TransformMode::world_frame;
}

DegeneracyPolicy policy_from(const std::string& s) {
    return s == "mark" ? DegeneracyPolicy::mark_undefined : DegeneracyPolicy::carry_forward;
}

struct EncodeCmd {
    std::string pair_spec;
    LoadOpts load;
    std::string variant = "3d";
    double dist_th = 0.0, speed_th = 0.0, angle_th_deg = 0.0, th_deg = 10.0;
    std::string mode = "world", policy = "carry";
    std::string format = "csv";
    std::string output = "-";
    std::size_t trunc_start = 0, trunc_count = 0;

    void run() const {
        TrajectoryPair pair = load_pair(parse_pair_spec(pair_spec), load);
        if (trunc_count > 0) pair = truncate_sync(pair, trunc_start, trunc_count);
        EncodeOptions opt;
        opt.variant = variant_from_string(variant);
        opt.thresholds.dist_th = dist_th;
        opt.thresholds.speed_th = speed_th;
        opt.thresholds.angle_f_th = deg2rad(angle_th_deg);
        opt.thresholds.tait_bryan_th = deg2rad(th_deg);
        opt.mode = mode_from(mode);
        opt.frenet.policy = policy_from(policy);
        const QtcSequence seq = encode(pair, opt);
        write_output(output, format == "json" ? sequence_to_json(seq) : sequence_to_csv(seq));
    }
};

struct FramesCmd {
    std::string input, object;
    LoadOpts load;
    std::string policy = "carry";
    std::string output = "-";

    void run() const {
        const std::vector<Trajectory> trajs = load_csv(input, load.columns, load.dt);
        const Trajectory& traj = find_object(trajs, object, input);
        FrenetOptions opt;
        opt.policy = policy_from(policy);
        std::string out = "tau,tx,ty,tz,nx,ny,nz,bx,by,bz,degenerate\n";
        for (const FrenetFrame& f : discrete_frames(traj, opt)) {
            out += std::to_string(f.index);
            for (const Vec3* v : {&f.t, &f.n, &f.b})
                for (double c : {v->x, v->y, v->z}) out += "," + format_double(c);
            out += std::string(",") + to_string(f.degenerate) + "\n";
        }
        write_output(output, out);
    }
};

struct AnalyzeCmd {
    std::vector<std::string> lf_specs, lnf_specs, pair_specs;
    std::vector<std::string> lf_seq_files, lnf_seq_files;
    LoadOpts load;
    double th_deg = 10.0;
    std::string mode = "world", policy = "carry";
    std::string format = "csv";
    std::string output = "-";

    void add_report(AnalyzeResult& r, const std::string& label, PairClass cls,
                    double bits) const {
        r.reports.push_back({label, cls, deg2rad(th_deg), bits});
    }

    void run() const {
        if (lf_specs.empty() && lnf_specs.empty() && pair_specs.empty() && lf_seq_files.empty() &&
            lnf_seq_files.empty())
            throw InputError("analyze needs at least one --lf, --lnf, --pair, --lf-seq or --lnf-seq");
        FrenetOptions fopt;
        fopt.policy = policy_from(policy);
        const TransformMode tmode = mode_from(mode);
        const double th = deg2rad(th_deg);

        AnalyzeResult r;
        r.tait_bryan_th = th;
        std::vector<double> lf_bits, lnf_bits;
        auto run_class = [&](const std::vector<std::string>& specs, PairClass cls,
                             std::vector<double>* bucket) {
            for (const std::string& s : specs) {
                const PairSpec spec = parse_pair_spec(s);
                const double bits = pair_entropy(load_pair(spec, load), th, tmode, fopt);
                add_report(r, spec.k + ":" + spec.l, cls, bits);
                if (bucket) bucket->push_back(bits);
            }
        };
        run_class(lf_specs, PairClass::leader_follower, &lf_bits);
        run_class(lnf_specs, PairClass::leader_nonfollower, &lnf_bits);
        run_class(pair_specs, PairClass::unlabeled, nullptr);
        auto run_seq_files = [&](const std::vector<std::string>& files, PairClass cls,
                                 std::vector<double>& bucket) {
            for (const std::string& f : files) {
                std::ifstream in(f, std::ios::binary);
                if (!in) throw InputError("cannot open '" + f + "'");
                std::ostringstream text;
                text << in.rdbuf();
                const QtcSequence seq = sequence_from_csv(text.str());
                const double bits = entropy(triplet_histogram(seq));
                add_report(r, f, cls, bits);
                bucket.push_back(bits);
            }
        };
        run_seq_files(lf_seq_files, PairClass::leader_follower, lf_bits);
        run_seq_files(lnf_seq_files, PairClass::leader_nonfollower, lnf_bits);

        if (!lf_bits.empty() && !lnf_bits.empty()) {
            r.ratio = entropy_ratio(lf_bits, lnf_bits);
            r.has_ratio = true;
        }
        write_output(output, format == "json" ? analyze_to_json(r) : analyze_to_csv(r));
    }
};

struct SweepCmd {
    std::vector<std::string> lf_specs, lnf_specs;
    LoadOpts load;
    double th_min_deg = 0.0, th_max_deg = 40.0, th_step_deg = 2.0;
    std::string mode = "world", policy = "carry";
    std::string format = "csv";
    std::string output = "-";

    void run() const {
        if (th_step_deg <= 0.0) throw InputError("--th-step must be positive");
        FrenetOptions fopt;
        fopt.policy = policy_from(policy);
        std::vector<LabeledPair> pairs;
        for (const std::string& s : lf_specs) {
            const PairSpec spec = parse_pair_spec(s);
            pairs.push_back({spec.k + ":" + spec.l, PairClass::leader_follower,
                             load_pair(spec, load)});
        }
        for (const std::string& s : lnf_specs) {
            const PairSpec spec = parse_pair_spec(s);
            pairs.push_back({spec.k + ":" + spec.l, PairClass::leader_nonfollower,
                             load_pair(spec, load)});
        }
        std::vector<double> grid;
        for (double d = th_min_deg; d <= th_max_deg + 1e-9; d += th_step_deg)
            grid.push_back(deg2rad(d));
        const SweepResult res = sweep(pairs, grid, mode_from(mode), fopt);
        write_output(output, format == "json" ? sweep_to_json(res) : sweep_to_csv(res));
    }
};

struct SynthCmd {
    SynthConfig cfg;
    std::string output = "-";

    void run() const {
        const Trajectory leader = synth_leader(cfg);
        const Trajectory follower = synth_follower(leader, cfg);
        const Trajectory nonfollower = synth_nonfollower(cfg);
        write_output(output, trajectories_to_csv({leader, follower, nonfollower}));
    }
};

void add_output_flags(CLI::App* cmd, std::string& format, std::string& output) {
    cmd->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", output, "Output file ('-' for stdout)")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qualitative trajectory calculus encoding and entropy analysis for 3D"
                 " trajectory pairs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key=value config file; command-line flags win");

    EncodeCmd enc;
    CLI::App* c = app.add_subcommand("encode", "Encode a trajectory pair into symbol tuples");
    c->add_option("pair", enc.pair_spec, "Pair spec: file.csv:k_id:l_id")->required();
    add_load_flags(c, enc.load);
    c->add_option("--variant", enc.variant, "Calculus variant: b1, b2, c1, c2 or 3d")
        ->check(CLI::IsMember({"b1", "b2", "c1", "c2", "3d"}))
        ->capture_default_str();
    c->add_option("--dist-th", enc.dist_th, "Distance-change threshold")->capture_default_str();
    c->add_option("--speed-th", enc.speed_th, "Speed-difference threshold (per sample)")
        ->capture_default_str();
    c->add_option("--angle-th", enc.angle_th_deg, "Velocity/side angle threshold in degrees")
        ->capture_default_str();
    c->add_option("--th", enc.th_deg, "Yaw/pitch/roll threshold in degrees")
        ->capture_default_str();
    add_frame_flags(c, enc.mode, enc.policy);
    c->add_option("--trunc-start", enc.trunc_start, "First sample of the truncation window");
    c->add_option("--trunc-count", enc.trunc_count, "Truncation window length (0 = all)");
    add_output_flags(c, enc.format, enc.output);
    c->callback([&enc] { enc.run(); });

    FramesCmd fra;
    c = app.add_subcommand("frames", "Dump per-sample moving frames for one object");
    c->add_option("input", fra.input, "Trajectory CSV file")->required();
    c->add_option("--object", fra.object, "Object id to dump")->required();
    add_load_flags(c, fra.load);
    c->add_option("--policy", fra.policy, "Degenerate-frame policy: carry or mark")
        ->check(CLI::IsMember({"carry", "mark"}))
        ->capture_default_str();
    c->add_option("-o,--output", fra.output, "Output file ('-' for stdout)")
        ->capture_default_str();
    c->callback([&fra] { fra.run(); });

    AnalyzeCmd ana;
    c = app.add_subcommand("analyze", "Per-pair symbol entropy and the class entropy ratio");
    c->add_option("--lf", ana.lf_specs, "Leader-follower pair spec (repeatable)");
    c->add_option("--lnf", ana.lnf_specs, "Leader-nonfollower pair spec (repeatable)");
    c->add_option("--pair", ana.pair_specs, "Unlabeled pair spec (repeatable)");
    c->add_option("--lf-seq", ana.lf_seq_files, "Precomputed symbol CSV for a follower pair");
    c->add_option("--lnf-seq", ana.lnf_seq_files,
                  "Precomputed symbol CSV for a nonfollower pair");
    add_load_flags(c, ana.load);
    c->add_option("--th", ana.th_deg, "Yaw/pitch/roll threshold in degrees")
        ->capture_default_str();
    add_frame_flags(c, ana.mode, ana.policy);
    add_output_flags(c, ana.format, ana.output);
    c->callback([&ana] { ana.run(); });

    SweepCmd swp;
    c = app.add_subcommand("sweep", "Class entropy statistics across a threshold grid");
    c->add_option("--lf", swp.lf_specs, "Leader-follower pair spec (repeatable)")->required();
    c->add_option("--lnf", swp.lnf_specs, "Leader-nonfollower pair spec (repeatable)")
        ->required();
    add_load_flags(c, swp.load);
    c->add_option("--th-min", swp.th_min_deg, "Grid start in degrees")->capture_default_str();
    c->add_option("--th-max", swp.th_max_deg, "Grid end in degrees")->capture_default_str();
    c->add_option("--th-step", swp.th_step_deg, "Grid step in degrees")->capture_default_str();
    add_frame_flags(c, swp.mode, swp.policy);
    add_output_flags(c, swp.format, swp.output);
    c->callback([&swp] { swp.run(); });

    SynthCmd syn;
    c = app.add_subcommand("synth",
                           "Generate a seeded leader/follower/nonfollower trajectory file");
    c->add_option("--seed", syn.cfg.rng_seed, "RNG seed")->capture_default_str();
    c->add_option("--samples", syn.cfg.n_samples, "Samples per trajectory")
        ->capture_default_str();
    c->add_option("--dt", syn.cfg.dt, "Sampling interval in seconds")->capture_default_str();
    c->add_option("--turn-rate", syn.cfg.leader_turn_rate,
                  "Heading random-walk std-dev, radians/sample")
        ->capture_default_str();
    c->add_option("--speed", syn.cfg.speed, "Leader speed, meters/second")
        ->capture_default_str();
    c->add_option("--delay", syn.cfg.follower_delay, "Follower delay in samples")
        ->capture_default_str();
    c->add_option("--noise", syn.cfg.follower_noise, "Follower noise std-dev per axis, meters")
        ->capture_default_str();
    c->add_option("--offset-x", syn.cfg.follower_offset.x, "Follower offset x")
        ->capture_default_str();
    c->add_option("--offset-y", syn.cfg.follower_offset.y, "Follower offset y")
        ->capture_default_str();
    c->add_option("--offset-z", syn.cfg.follower_offset.z, "Follower offset z")
        ->capture_default_str();
    c->add_option("-o,--output", syn.output, "Output file ('-' for stdout)")
        ->capture_default_str();
    c->callback([&syn] { syn.run(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        emit_error("UsageError", e.what());
        return 2;
    } catch (const ParseError& e) {
        emit_error("ParseError", e.what());
        return 2;
    } catch (const InputError& e) {
        emit_error("InputError", e.what());
        return 2;
    } catch (const AnalysisError& e) {
        emit_error("AnalysisError", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("RuntimeError", e.what());
        return 1;
    }
    return 0;
}
