#ifndef QTC3D_ANALYSIS_HPP
#define QTC3D_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qtc3d/frenet.hpp"
#include "qtc3d/qtc.hpp"
#include "qtc3d/trajectory.hpp"

namespace qtc3d {

// Occurrence counts of the 27 possible (G,H,I) triplets, indexed
// lexicographically with minus < zero < plus.
struct SymbolHistogram {
    std::array<std::uint64_t, 27> counts{};
    std::uint64_t total = 0;

    static std::size_t bin_index(QtcSymbol g, QtcSymbol h, QtcSymbol i) {
        return 9 * static_cast<std::size_t>(g) + 3 * static_cast<std::size_t>(h) +
               static_cast<std::size_t>(i);
    }
    void add(QtcSymbol g, QtcSymbol h, QtcSymbol i) {
        ++counts[bin_index(g, h, i)];
        ++total;
    }
};

// Counts the (G,H,I) sub-triplets of a 3d sequence. Warned tuples carry
// zero symbols by policy and are included unless include_warned is false.
SymbolHistogram triplet_histogram(const QtcSequence& seq, bool include_warned = true);

// The same histogram built by quantizing a raw angle sequence at th.
SymbolHistogram triplet_histogram(const std::vector<TaitBryanAngles>& angles, double th);

// Shannon entropy in bits; empty bins contribute nothing. Throws
// EmptySequenceError when the histogram holds no counts.
double entropy(const SymbolHistogram& h);

// (sum lf / sum lnf) * (|lnf| / |lf|), i.e. mean(lf) / mean(lnf). Throws
// EmptySequenceError on an empty class and DivisionByZeroError when the
// lnf entropies sum to zero.
double entropy_ratio(const std::vector<double>& lf, const std::vector<double>& lnf);

enum class PairClass { leader_follower, leader_nonfollower, unlabeled };

const char* to_string(PairClass c);

struct EntropyReport {
    std::string pair_label;
    PairClass cls = PairClass::unlabeled;
    double tait_bryan_th = 0.0; // radians
    double entropy_bits = 0.0;
};

// Tait-Bryan angles of the frame-to-frame rotation at each tau where both
// objects have a frame. A sample is degenerate when either frame was;
// under mark_undefined those angles are reported as (0,0,0), mirroring the
// encoder's zeroed symbols.
struct AngleSample {
    std::size_t tau = 0;
    TaitBryanAngles angles;
    bool degenerate = false;
};

std::vector<AngleSample> tait_bryan_sequence(const TrajectoryPair& pair,
                                             TransformMode mode = TransformMode::world_frame,
                                             const FrenetOptions& frenet = {});

// Entropy of the pair's (G,H,I) distribution at the given threshold.
double pair_entropy(const TrajectoryPair& pair, double tait_bryan_th,
                    TransformMode mode = TransformMode::world_frame,
                    const FrenetOptions& frenet = {});

// Per-angle counts over [-180, 180] degrees in bins centered on 0.
struct AngleHistogram {
    double bin_width_deg = 8.0;
    std::vector<std::uint64_t> psi;
    std::vector<std::uint64_t> theta;
    std::vector<std::uint64_t> phi;

    std::size_t n_bins() const { return psi.size(); }
    double bin_center_deg(std::size_t idx) const;
};

AngleHistogram angle_histograms(const TrajectoryPair& pair,
                                TransformMode mode = TransformMode::world_frame,
                                double bin_width_deg = 8.0, const FrenetOptions& frenet = {});

struct LabeledPair {
    std::string label;
    PairClass cls = PairClass::unlabeled;
    TrajectoryPair pair;
};

struct SweepRow {
    double th = 0.0; // radians
    double lf_mean = 0.0;
    double lf_std = 0.0;
    double lnf_mean = 0.0;
    double lnf_std = 0.0;
    double ratio = 0.0; // mean(lf) / mean(lnf)
};

struct SweepResult {
    TransformMode mode = TransformMode::world_frame;
    std::vector<SweepRow> rows;
};

// Entropies of every pair at every threshold, aggregated per class with
// mean and population std (a single member reports std 0). Requires at
// least one pair per class and a non-empty grid. Angle sequences are
// extracted once per pair and requantized per threshold, which matches
// encoding each pair at that threshold exactly.
SweepResult sweep(const std::vector<LabeledPair>& pairs, const std::vector<double>& th_grid,
                  TransformMode mode = TransformMode::world_frame,
                  const FrenetOptions& frenet = {});

struct Classification {
    PairClass cls = PairClass::unlabeled;
    double entropy_bits = 0.0;
    double lf_mean = 0.0;
    double lnf_mean = 0.0;
    double midpoint = 0.0;
    double margin = 0.0; // midpoint - entropy; positive means follower side
};

// Midpoint rule on the reference class mean entropies at the given
// threshold: below the midpoint classifies as leader-follower.
Classification classify(const TrajectoryPair& pair, const std::vector<TrajectoryPair>& ref_lf,
                        const std::vector<TrajectoryPair>& ref_lnf, double tait_bryan_th,
                        TransformMode mode = TransformMode::world_frame,
                        const FrenetOptions& frenet = {});

struct AnalyzeResult {
    std::vector<EntropyReport> reports;
    double tait_bryan_th = 0.0; // radians
    double ratio = 0.0;
    bool has_ratio = false; // both classes present
};

std::string analyze_to_csv(const AnalyzeResult& r);
std::string analyze_to_json(const AnalyzeResult& r);
std::string sweep_to_csv(const SweepResult& r);
std::string sweep_to_json(const SweepResult& r);
std::string angle_histogram_to_csv(const AngleHistogram& h);

} // namespace qtc3d

#endif // QTC3D_ANALYSIS_HPP
