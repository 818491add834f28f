#include "qed1d/csv.hpp"

#include <cstdio>
#include <fstream>

#include "qed1d/errors.hpp"

namespace qed1d {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string curve_to_csv(const ProbabilityCurve& curve, const std::vector<std::string>& metadata) {
    std::string out;
    for (const auto& m : metadata) out += "# " + m + "\n";
    if (curve.out_of_regime)
        out += "# warning: some points lie beyond the perturbative validity window K*Omega*t < 1\n";
    out += "t_s,tau,P_ge0,P_ge_star,P_star_e_star,P_cond,mode,engine\n";
    for (const auto& p : curve.points) {
        out += num(p.t_s) + "," + num(p.tau) + "," + num(p.p_ge0) + "," + num(p.p_ge_star) + "," +
               num(p.p_star_e_star) + ",";
        out += p.p_cond ? num(*p.p_cond) : std::string("undefined");
        out += "," + curve.mode + "," + curve.engine + "\n";
    }
    return out;
}

void write_curve_csv(const std::string& path, const ProbabilityCurve& curve,
                     const std::vector<std::string>& metadata) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << curve_to_csv(curve, metadata);
}

std::vector<std::string> config_echo(const SystemSpec& spec) {
    std::vector<std::string> lines;
    const NaturalParams np = spec.natural();
    lines.push_back("omega_s_rad_s = " + num(spec.source.gap_frequency) +
                    " ; omega_d_rad_s = " + num(spec.detector.gap_frequency));
    lines.push_back("coupling_K_s = " + num(spec.source.coupling) +
                    " ; coupling_K_d = " + num(spec.detector.coupling));
    lines.push_back("separation_m = " + num(spec.separation_m) + " ; phase = " + num(spec.phase));
    lines.push_back("velocity_m_s = " + num(spec.field.velocity_m_s) +
                    " ; t0_s = " + num(spec.field.cutoff_time_s) +
                    " ; theta0_natural = " + num(np.theta0));
    for (const auto& w : spec.warnings) lines.push_back("warning: " + w);
    return lines;
}

} // namespace qed1d
