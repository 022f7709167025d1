#include "qtc3d/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtc3d/errors.hpp"

namespace qtc3d {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double population_std(const std::vector<double>& xs, double m) {
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size()));
}

} // namespace

const char* to_string(PairClass c) {
    switch (c) {
    case PairClass::leader_follower: return "leader-follower";
    case PairClass::leader_nonfollower: return "leader-nonfollower";
    case PairClass::unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

SymbolHistogram triplet_histogram(const QtcSequence& seq, bool include_warned) {
    if (seq.variant != QtcVariant::three_d) {
        throw InputError("triplet histogram needs the 3d variant's G,H,I symbols");
    }
    if (seq.tuples.empty()) {
        throw EmptySequenceError("cannot build a histogram from an empty sequence");
    }
    SymbolHistogram h;
    for (const QtcTuple& t : seq.tuples) {
        if (!include_warned && t.warn) continue;
        h.add(t.symbols[4], t.symbols[5], t.symbols[6]);
    }
    return h;
}

SymbolHistogram triplet_histogram(const std::vector<TaitBryanAngles>& angles, double th) {
    if (angles.empty()) {
        throw EmptySequenceError("cannot build a histogram from an empty angle sequence");
    }
    SymbolHistogram h;
    for (const TaitBryanAngles& a : angles) {
        h.add(quantize(a.psi, th), quantize(a.theta, th), quantize(a.phi, th));
    }
    return h;
}

double entropy(const SymbolHistogram& h) {
    if (h.total == 0) {
        throw EmptySequenceError("entropy of an empty histogram is undefined");
    }
    const double total = static_cast<double>(h.total);
    double bits = 0.0;
    for (std::uint64_t c : h.counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        bits -= p * std::log2(p);
    }
    return bits;
}

double entropy_ratio(const std::vector<double>& lf, const std::vector<double>& lnf) {
    if (lf.empty() || lnf.empty()) {
        throw EmptySequenceError("entropy ratio needs both classes non-empty");
    }
    double sum_lf = 0.0, sum_lnf = 0.0;
    for (double x : lf) sum_lf += x;
    for (double x : lnf) sum_lnf += x;
    if (sum_lnf == 0.0) {
        throw DivisionByZeroError("leader-nonfollower entropies sum to zero");
    }
    return (sum_lf / sum_lnf) *
           (static_cast<double>(lnf.size()) / static_cast<double>(lf.size()));
}

std::vector<AngleSample> tait_bryan_sequence(const TrajectoryPair& pair, TransformMode mode,
                                             const FrenetOptions& frenet) {
    const std::vector<FrenetFrame> fk = discrete_frames(pair.k, frenet);
    const std::vector<FrenetFrame> fl = discrete_frames(pair.l, frenet);
    std::vector<AngleSample> out;
    out.reserve(fk.size());
    for (std::size_t i = 0; i < fk.size(); ++i) {
        AngleSample s;
        s.tau = fk[i].index;
        s.degenerate = fk[i].degenerate != DegeneracyKind::none ||
                       fl[i].degenerate != DegeneracyKind::none;
        if (!(s.degenerate && frenet.policy == DegeneracyPolicy::mark_undefined)) {
            s.angles = extract_tait_bryan(frame_transform(fk[i], fl[i], mode).t);
        }
        out.push_back(s);
    }
    return out;
}

double pair_entropy(const TrajectoryPair& pair, double tait_bryan_th, TransformMode mode,
                    const FrenetOptions& frenet) {
    const std::vector<AngleSample> samples = tait_bryan_sequence(pair, mode, frenet);
    std::vector<TaitBryanAngles> angles;
    angles.reserve(samples.size());
    for (const AngleSample& s : samples) angles.push_back(s.angles);
    return entropy(triplet_histogram(angles, tait_bryan_th));
}

double AngleHistogram::bin_center_deg(std::size_t idx) const {
    const double half = static_cast<double>((n_bins() - 1) / 2);
    return (static_cast<double>(idx) - half) * bin_width_deg;
}

AngleHistogram angle_histograms(const TrajectoryPair& pair, TransformMode mode,
                                double bin_width_deg, const FrenetOptions& frenet) {
    if (!(bin_width_deg > 0.0) || bin_width_deg > 360.0) {
        throw InputError("bin width must be in (0, 360] degrees");
    }
    AngleHistogram h;
    h.bin_width_deg = bin_width_deg;
    const std::size_t half = static_cast<std::size_t>(std::floor(180.0 / bin_width_deg));
    const std::size_t n = 2 * half + 1;
    h.psi.assign(n, 0);
    h.theta.assign(n, 0);
    h.phi.assign(n, 0);

    auto bin_of = [&](double rad) {
        const long idx =
            std::lround(rad2deg(rad) / bin_width_deg) + static_cast<long>(half);
        return static_cast<std::size_t>(std::clamp(idx, 0L, static_cast<long>(n - 1)));
    };
    for (const AngleSample& s : tait_bryan_sequence(pair, mode, frenet)) {
        ++h.psi[bin_of(s.angles.psi)];
        ++h.theta[bin_of(s.angles.theta)];
        ++h.phi[bin_of(s.angles.phi)];
    }
    return h;
}

SweepResult sweep(const std::vector<LabeledPair>& pairs, const std::vector<double>& th_grid,
                  TransformMode mode, const FrenetOptions& frenet) {
    if (th_grid.empty()) {
        throw InputError("sweep needs a non-empty threshold grid");
    }
    bool have_lf = false, have_lnf = false;
    for (const LabeledPair& p : pairs) {
        if (p.cls == PairClass::leader_follower) have_lf = true;
        else if (p.cls == PairClass::leader_nonfollower) have_lnf = true;
        else throw InputError("sweep requires every pair labeled lf or lnf ('" + p.label + "')");
    }
    if (!have_lf || !have_lnf) {
        throw InputError("sweep needs at least one pair per class");
    }

    // one angle extraction per pair; requantizing per threshold is
    // identical to re-encoding at that threshold
    std::vector<std::vector<TaitBryanAngles>> angle_seqs;
    angle_seqs.reserve(pairs.size());
    for (const LabeledPair& p : pairs) {
        const std::vector<AngleSample> samples = tait_bryan_sequence(p.pair, mode, frenet);
        std::vector<TaitBryanAngles> angles;
        angles.reserve(samples.size());
        for (const AngleSample& s : samples) angles.push_back(s.angles);
        angle_seqs.push_back(std::move(angles));
    }

    SweepResult result;
    result.mode = mode;
    result.rows.reserve(th_grid.size());
    for (double th : th_grid) {
        std::vector<double> lf, lnf;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const double bits = entropy(triplet_histogram(angle_seqs[i], th));
            (pairs[i].cls == PairClass::leader_follower ? lf : lnf).push_back(bits);
        }
        SweepRow row;
        row.th = th;
        row.lf_mean = mean(lf);
        row.lf_std = population_std(lf, row.lf_mean);
        row.lnf_mean = mean(lnf);
        row.lnf_std = population_std(lnf, row.lnf_mean);
        row.ratio = entropy_ratio(lf, lnf);
        result.rows.push_back(row);
    }
    return result;
}

Classification classify(const TrajectoryPair& pair, const std::vector<TrajectoryPair>& ref_lf,
                        const std::vector<TrajectoryPair>& ref_lnf, double tait_bryan_th,
                        TransformMode mode, const FrenetOptions& frenet) {
    if (ref_lf.empty() || ref_lnf.empty()) {
        throw InputError("classification needs non-empty reference sets");
    }
    std::vector<double> lf, lnf;
    for (const TrajectoryPair& p : ref_lf) lf.push_back(pair_entropy(p, tait_bryan_th, mode, frenet));
    for (const TrajectoryPair& p : ref_lnf) lnf.push_back(pair_entropy(p, tait_bryan_th, mode, frenet));

    Classification c;
    c.entropy_bits = pair_entropy(pair, tait_bryan_th, mode, frenet);
    c.lf_mean = mean(lf);
    c.lnf_mean = mean(lnf);
    c.midpoint = 0.5 * (c.lf_mean + c.lnf_mean);
    c.margin = c.midpoint - c.entropy_bits;
    c.cls = c.entropy_bits < c.midpoint ? PairClass::leader_follower
                                        : PairClass::leader_nonfollower;
    return c;
}

std::string analyze_to_csv(const AnalyzeResult& r) {
    std::ostringstream out;
    out << "label,class,th_deg,entropy_bits\n";
    for (const EntropyReport& rep : r.reports) {
        out << rep.pair_label << ',' << to_string(rep.cls) << ','
            << format_double(rad2deg(rep.tait_bryan_th)) << ','
            << format_double(rep.entropy_bits) << '\n';
    }
    if (r.has_ratio) {
        out << "ratio,lf/lnf," << format_double(rad2deg(r.tait_bryan_th)) << ','
            << format_double(r.ratio) << '\n';
    }
    return out.str();
}

std::string analyze_to_json(const AnalyzeResult& r) {
    nlohmann::json j;
    j["th_deg"] = rad2deg(r.tait_bryan_th);
    nlohmann::json reports = nlohmann::json::array();
    for (const EntropyReport& rep : r.reports) {
        reports.push_back({{"label", rep.pair_label},
                           {"class", to_string(rep.cls)},
                           {"entropy_bits", rep.entropy_bits}});
    }
    j["reports"] = std::move(reports);
    if (r.has_ratio) j["ratio"] = r.ratio;
    return j.dump(2) + "\n";
}

std::string sweep_to_csv(const SweepResult& r) {
    std::ostringstream out;
    out << "th_deg,lf_mean,lf_std,lnf_mean,lnf_std,ratio\n";
    for (const SweepRow& row : r.rows) {
        out << format_double(rad2deg(row.th)) << ',' << format_double(row.lf_mean) << ','
            << format_double(row.lf_std) << ',' << format_double(row.lnf_mean) << ','
            << format_double(row.lnf_std) << ',' << format_double(row.ratio) << '\n';
    }
    return out.str();
}

std::string sweep_to_json(const SweepResult& r) {
    nlohmann::json j;
    j["mode"] = to_string(r.mode);
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : r.rows) {
        rows.push_back({{"th_deg", rad2deg(row.th)},
                        {"lf_mean", row.lf_mean},
                        {"lf_std", row.lf_std},
                        {"lnf_mean", row.lnf_mean},
                        {"lnf_std", row.lnf_std},
                        {"ratio", row.ratio}});
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string angle_histogram_to_csv(const AngleHistogram& h) {
    std::ostringstream out;
    out << "bin_center_deg,psi,theta,phi\n";
    for (std::size_t i = 0; i < h.n_bins(); ++i) {
        out << format_double(h.bin_center_deg(i)) << ',' << h.psi[i] << ',' << h.theta[i] << ','
            << h.phi[i] << '\n';
    }
    return out.str();
}

} // namespace qtc3d
