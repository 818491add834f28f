#include "qed1d/model.hpp"

#include <cmath>

namespace qed1d {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

bool has(const std::map<std::string, double>& m, const std::string& k) {
    return m.find(k) != m.end();
}

double get(const std::map<std::string, double>& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) throw MissingKey(k);
    if (!std::isfinite(it->second)) throw NonPhysicalValue(k + " is not finite");
    return it->second;
}

double get_or(const std::map<std::string, double>& m, const std::string& k, double fallback) {
    auto it = m.find(k);
    if (it == m.end()) return fallback;
    if (!std::isfinite(it->second)) throw NonPhysicalValue(k + " is not finite");
    return it->second;
}

} // namespace

bool SystemSpec::out_of_regime(double tau) const {
    const double t = seconds_from_tau(tau);
    const double ks = source.coupling * source.gap_frequency * t;
    const double kd = detector.coupling * detector.gap_frequency * t;
    return std::max(ks, kd) >= 1.0;
}

NaturalParams SystemSpec::natural() const {
    NaturalParams np;
    np.mu = detector.gap_frequency / source.gap_frequency;
    np.phi = phase;
    np.k_s = source.coupling;
    np.k_d = detector.coupling;
    np.theta0 = source.gap_frequency * field.cutoff_time_s;
    np.rwa = rwa_mode;
    return np;
}

SystemSpec build_system(const std::map<std::string, double>& raw, bool rwa_mode) {
    SystemSpec spec;
    spec.rwa_mode = rwa_mode;

    double omega_s, omega_d;
    if (has(raw, "omega_s_ghz") || has(raw, "omega_d_ghz")) {
        omega_s = kTwoPi * 1e9 * get(raw, "omega_s_ghz");
        omega_d = kTwoPi * 1e9 * get(raw, "omega_d_ghz");
    } else {
        const double shared = get(raw, "omega_ghz");
        omega_s = omega_d = kTwoPi * 1e9 * shared;
    }
    if (omega_s <= 0.0 || omega_d <= 0.0)
        throw NonPhysicalValue("qubit gap frequency must be positive");

    double k_s, k_d;
    if (has(raw, "coupling_s") || has(raw, "coupling_d")) {
        k_s = get(raw, "coupling_s");
        k_d = get(raw, "coupling_d");
    } else {
        k_s = k_d = get(raw, "coupling");
    }
    if (k_s < 0.0 || k_d < 0.0)
        throw NonPhysicalValue("coupling K must be non-negative");

    spec.field.velocity_m_s = get_or(raw, "velocity_m_s", 1e8);
    if (spec.field.velocity_m_s <= 0.0)
        throw NonPhysicalValue("field velocity must be positive");
    spec.field.cutoff_time_s = get_or(raw, "t0_s", 1e-13);
    if (spec.field.cutoff_time_s <= 0.0)
        throw NonPhysicalValue("cutoff time t0 must be positive");

    double x_s = 0.0, x_d = 0.0;
    if (has(raw, "phase")) {
        const double phi = get(raw, "phase");
        if (phi < 0.0) throw NonPhysicalValue("phase must be non-negative");
        x_d = phi * spec.field.velocity_m_s / omega_s;
    } else if (has(raw, "separation_m")) {
        const double r = get(raw, "separation_m");
        if (r < 0.0) throw NonPhysicalValue("separation must be non-negative");
        x_d = r;
    } else if (has(raw, "x_s_m") && has(raw, "x_d_m")) {
        x_s = get(raw, "x_s_m");
        x_d = get(raw, "x_d_m");
    } else {
        throw MissingKey("phase (or separation_m, or x_s_m + x_d_m)");
    }

    spec.source = QubitParams{'S', omega_s, x_s, k_s};
    spec.detector = QubitParams{'D', omega_d, x_d, k_d};
    spec.separation_m = std::abs(x_d - x_s);
    spec.phase = omega_s * spec.separation_m / spec.field.velocity_m_s;

    if (spec.separation_m == 0.0)
        spec.warnings.push_back("degenerate separation r = 0: qubits are co-located");

    return spec;
}

double to_natural(double t_seconds, const SystemSpec& spec) {
    return spec.tau_from_seconds(t_seconds);
}

double from_natural(double tau, const SystemSpec& spec) {
    return spec.seconds_from_tau(tau);
}

} // namespace qed1d
