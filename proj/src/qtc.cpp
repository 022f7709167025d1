#include "qtc3d/qtc.hpp"

#include <charconv>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtc3d/errors.hpp"

namespace qtc3d {

char to_char(QtcSymbol s) {
    switch (s) {
    case QtcSymbol::minus: return '-';
    case QtcSymbol::zero: return '0';
    case QtcSymbol::plus: return '+';
    }
    return '0';
}

QtcSymbol symbol_from_char(char c) {
    switch (c) {
    case '-': return QtcSymbol::minus;
    case '0': return QtcSymbol::zero;
    case '+': return QtcSymbol::plus;
    default: throw InputError(std::string("invalid symbol character '") + c + "'");
    }
}

QtcSymbol negated(QtcSymbol s) {
    if (s == QtcSymbol::minus) return QtcSymbol::plus;
    if (s == QtcSymbol::plus) return QtcSymbol::minus;
    return QtcSymbol::zero;
}

QtcSymbol quantize(double x, double th) {
    if (x < -th) return QtcSymbol::minus;
    if (x > th) return QtcSymbol::plus;
    return QtcSymbol::zero;
}

const char* to_string(QtcVariant v) {
    switch (v) {
    case QtcVariant::b1: return "b1";
    case QtcVariant::b2: return "b2";
    case QtcVariant::c1: return "c1";
    case QtcVariant::c2: return "c2";
    case QtcVariant::three_d: return "3d";
    }
    return "3d";
}

QtcVariant variant_from_string(const std::string& name) {
    if (name == "b1") return QtcVariant::b1;
    if (name == "b2") return QtcVariant::b2;
    if (name == "c1") return QtcVariant::c1;
    if (name == "c2") return QtcVariant::c2;
    if (name == "3d") return QtcVariant::three_d;
    throw InputError("unknown variant '" + name + "' (expected b1, b2, c1, c2, or 3d)");
}

const char* variant_letters(QtcVariant v) {
    switch (v) {
    case QtcVariant::b1: return "AB";
    case QtcVariant::b2: return "ABC";
    case QtcVariant::c1: return "ABDE";
    case QtcVariant::c2: return "ABCDEF";
    case QtcVariant::three_d: return "ABCFGHI";
    }
    return "ABCFGHI";
}

bool variant_is_2d(QtcVariant v) { return v != QtcVariant::three_d; }

std::string QtcSequence::symbol_string(std::size_t row) const {
    std::string out;
    for (QtcSymbol s : tuples[row].symbols) out.push_back(to_char(s));
    return out;
}

QtcSymbol constraint_a(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now, double dist_th,
                       double eps, bool* warn) {
    const double d_now = norm(k_now - l_now);
    if (d_now < eps) {
        if (warn) *warn = true;
        return QtcSymbol::zero;
    }
    return quantize(norm(k_next - l_now) - d_now, dist_th);
}

QtcSymbol constraint_b(const Vec3& k_now, const Vec3& l_now, const Vec3& l_next, double dist_th,
                       double eps, bool* warn) {
    return constraint_a(l_now, l_next, k_now, dist_th, eps, warn);
}

QtcSymbol constraint_c(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now,
                       const Vec3& l_next, double speed_th) {
    return quantize(norm(k_next - k_now) - norm(l_next - l_now), speed_th);
}

QtcSymbol constraint_d(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now, double side_th) {
    const Vec3 u = l_now - k_now;
    const Vec3 v = k_next - k_now;
    const double c = u.x * v.y - u.y * v.x;
    return quantize(-c, side_th * norm(u) * norm(v));
}

QtcSymbol constraint_e(const Vec3& k_now, const Vec3& l_now, const Vec3& l_next, double side_th) {
    return constraint_d(l_now, l_next, k_now, side_th);
}

QtcSymbol constraint_f(const Vec3& k_now, const Vec3& k_next, const Vec3& l_now,
                       const Vec3& l_next, double angle_f_th, double eps, bool* warn) {
    const Vec3 v_k = k_next - k_now;
    const Vec3 v_l = l_next - l_now;
    const Vec3 u_k = l_now - k_now; // connecting line as k sees it
    const Vec3 u_l = k_now - l_now;
    if (norm(v_k) < eps || norm(v_l) < eps || norm(u_k) < eps) {
        if (warn) *warn = true;
        return QtcSymbol::zero;
    }
    const double theta1 = angle_between(v_k, u_k);
    const double theta2 = angle_between(v_l, u_l);
    return quantize(theta1 - theta2, angle_f_th);
}

GhiSymbols constraints_ghi(const FrenetFrame& fk, const FrenetFrame& fl, TransformMode mode,
                           double tait_bryan_th) {
    const TaitBryanAngles a = extract_tait_bryan(frame_transform(fk, fl, mode).t);
    return {quantize(a.psi, tait_bryan_th), quantize(a.theta, tait_bryan_th),
            quantize(a.phi, tait_bryan_th)};
}

QtcSequence encode(const TrajectoryPair& pair, const EncodeOptions& opt) {
    QtcSequence seq;
    seq.variant = opt.variant;
    seq.k_id = pair.k.object_id();
    seq.l_id = pair.l.object_id();
    seq.thresholds = opt.thresholds;
    seq.mode = opt.mode;

    const Thresholds& th = opt.thresholds;
    const double eps = opt.frenet.eps_disp;
    const std::size_t n = pair.size();

    if (variant_is_2d(opt.variant)) {
        if (!pair.k.is_planar(opt.planar_eps) || !pair.l.is_planar(opt.planar_eps)) {
            throw NotPlanarError("variant " + std::string(to_string(opt.variant)) +
                                 " requires both trajectories in the z = 0 plane");
        }
        seq.tuples.reserve(n - 1);
        for (std::size_t tau = 0; tau + 1 < n; ++tau) {
            const Vec3& k0 = pair.k.position(tau);
            const Vec3& k1 = pair.k.position(tau + 1);
            const Vec3& l0 = pair.l.position(tau);
            const Vec3& l1 = pair.l.position(tau + 1);

            QtcTuple tuple;
            tuple.tau = tau;
            tuple.symbols.push_back(constraint_a(k0, k1, l0, th.dist_th, eps, &tuple.warn));
            tuple.symbols.push_back(constraint_b(k0, l0, l1, th.dist_th, eps, &tuple.warn));
            if (opt.variant == QtcVariant::b2 || opt.variant == QtcVariant::c2) {
                tuple.symbols.push_back(constraint_c(k0, k1, l0, l1, th.speed_th));
            }
            if (opt.variant == QtcVariant::c1 || opt.variant == QtcVariant::c2) {
                tuple.symbols.push_back(constraint_d(k0, k1, l0, th.angle_f_th));
                tuple.symbols.push_back(constraint_e(k0, l0, l1, th.angle_f_th));
            }
            if (opt.variant == QtcVariant::c2) {
                tuple.symbols.push_back(
                    constraint_f(k0, k1, l0, l1, th.angle_f_th, eps, &tuple.warn));
            }
            seq.tuples.push_back(std::move(tuple));
        }
        return seq;
    }

    const std::vector<FrenetFrame> frames_k = discrete_frames(pair.k, opt.frenet);
    const std::vector<FrenetFrame> frames_l = discrete_frames(pair.l, opt.frenet);
    seq.tuples.reserve(frames_k.size());
    for (std::size_t i = 0; i < frames_k.size(); ++i) {
        const std::size_t tau = frames_k[i].index;
        const Vec3& k0 = pair.k.position(tau);
        const Vec3& k1 = pair.k.position(tau + 1);
        const Vec3& l0 = pair.l.position(tau);
        const Vec3& l1 = pair.l.position(tau + 1);

        QtcTuple tuple;
        tuple.tau = tau;
        tuple.symbols.push_back(constraint_a(k0, k1, l0, th.dist_th, eps, &tuple.warn));
        tuple.symbols.push_back(constraint_b(k0, l0, l1, th.dist_th, eps, &tuple.warn));
        tuple.symbols.push_back(constraint_c(k0, k1, l0, l1, th.speed_th));
        tuple.symbols.push_back(constraint_f(k0, k1, l0, l1, th.angle_f_th, eps, &tuple.warn));

        const bool frame_degenerate = frames_k[i].degenerate != DegeneracyKind::none ||
                                      frames_l[i].degenerate != DegeneracyKind::none;
        GhiSymbols ghi;
        if (frame_degenerate && opt.frenet.policy == DegeneracyPolicy::mark_undefined) {
            // leave the quantized rotation unresolved: three zeros
        } else {
            ghi = constraints_ghi(frames_k[i], frames_l[i], opt.mode, th.tait_bryan_th);
        }
        tuple.warn = tuple.warn || frame_degenerate;
        tuple.symbols.push_back(ghi.g);
        tuple.symbols.push_back(ghi.h);
        tuple.symbols.push_back(ghi.i);
        seq.tuples.push_back(std::move(tuple));
    }
    return seq;
}

std::string sequence_to_csv(const QtcSequence& seq) {
    std::ostringstream out;
    out << "tau";
    for (const char* c = seq.letters(); *c; ++c) out << ',' << *c;
    out << ",warn\n";
    for (const QtcTuple& t : seq.tuples) {
        out << t.tau;
        for (QtcSymbol s : t.symbols) out << ',' << to_char(s);
        out << ',' << (t.warn ? 1 : 0) << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
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

} // namespace

QtcSequence sequence_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty sequence file", 1);
    }
    const std::vector<std::string> header = split_row(line);
    if (header.size() < 4 || header.front() != "tau" || header.back() != "warn") {
        throw ParseError("expected header 'tau,<letters>,warn'", 1);
    }
    std::string letters;
    for (std::size_t i = 1; i + 1 < header.size(); ++i) {
        if (header[i].size() != 1) throw ParseError("bad constraint column '" + header[i] + "'", 1);
        letters += header[i];
    }
    QtcSequence seq;
    bool known = false;
    for (QtcVariant v : {QtcVariant::b1, QtcVariant::b2, QtcVariant::c1, QtcVariant::c2,
                         QtcVariant::three_d}) {
        if (letters == variant_letters(v)) {
            seq.variant = v;
            known = true;
            break;
        }
    }
    if (!known) {
        throw ParseError("constraint columns '" + letters + "' match no variant", 1);
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_row(line);
        if (fields.size() != letters.size() + 2) {
            throw ParseError("expected " + std::to_string(letters.size() + 2) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        QtcTuple tuple;
        const std::string& tau_field = fields[0];
        const auto [ptr, ec] =
            std::from_chars(tau_field.data(), tau_field.data() + tau_field.size(), tuple.tau);
        if (ec != std::errc() || ptr != tau_field.data() + tau_field.size()) {
            throw ParseError("cannot parse tau '" + tau_field + "'", line_no);
        }
        for (std::size_t i = 0; i < letters.size(); ++i) {
            const std::string& f = fields[i + 1];
            if (f.size() != 1) throw ParseError("bad symbol field '" + f + "'", line_no);
            try {
                tuple.symbols.push_back(symbol_from_char(f[0]));
            } catch (const InputError& e) {
                throw ParseError(e.what(), line_no);
            }
        }
        const std::string& w = fields.back();
        if (w != "0" && w != "1") throw ParseError("bad warn field '" + w + "'", line_no);
        tuple.warn = w == "1";
        seq.tuples.push_back(std::move(tuple));
    }
    return seq;
}

std::string sequence_to_json(const QtcSequence& seq) {
    nlohmann::json j;
    j["variant"] = to_string(seq.variant);
    j["letters"] = seq.letters();
    j["k"] = seq.k_id;
    j["l"] = seq.l_id;
    j["mode"] = to_string(seq.mode);
    j["thresholds"] = {{"dist_th", seq.thresholds.dist_th},
                       {"speed_th", seq.thresholds.speed_th},
                       {"angle_f_th", seq.thresholds.angle_f_th},
                       {"tait_bryan_th", seq.thresholds.tait_bryan_th}};
    nlohmann::json tuples = nlohmann::json::array();
    for (std::size_t i = 0; i < seq.tuples.size(); ++i) {
        tuples.push_back({{"tau", seq.tuples[i].tau},
                          {"symbols", seq.symbol_string(i)},
                          {"warn", seq.tuples[i].warn}});
    }
    j["tuples"] = std::move(tuples);
    return j.dump(2) + "\n";
}

} // namespace qtc3d
