#include "qed1d/observables.hpp"

#include <cmath>

#include "qed1d/threading.hpp"

namespace qed1d {

namespace {

struct PointProbs {
    double ge0, ge_star, star_e_star;
};

PointProbs point_probs(const NaturalParams& np, double tau, const EngineOptions& opt) {
    const double x2 = std::norm(amplitude_exchange_X(np, tau, opt));
    const double b2 = sum_B2_sq(np, tau, opt);
    const double b1 = sum_B1_sq(np, tau, /*corrections=*/true, opt);
    return {x2, x2 + b2, x2 + b1 + b2};
}

std::optional<double> conditional_of(const PointProbs& p) {
    if (p.star_e_star < kConditionalDenominatorFloor) return std::nullopt;
    return p.ge_star / p.star_e_star;
}

} // namespace

double prob_ge0(const SystemSpec& spec, double tau, const EngineOptions& opt) {
    return std::norm(amplitude_exchange_X(spec.natural(), tau, opt));
}

double prob_ge_star(const SystemSpec& spec, double tau, const EngineOptions& opt) {
    const NaturalParams np = spec.natural();
    return std::norm(amplitude_exchange_X(np, tau, opt)) + sum_B2_sq(np, tau, opt);
}

double prob_star_e_star(const SystemSpec& spec, double tau, const EngineOptions& opt) {
    const NaturalParams np = spec.natural();
    return std::norm(amplitude_exchange_X(np, tau, opt)) + sum_B2_sq(np, tau, opt) +
           sum_B1_sq(np, tau, /*corrections=*/true, opt);
}

std::optional<double> conditional_probability(const SystemSpec& spec, double tau,
                                              const EngineOptions& opt) {
    return conditional_of(point_probs(spec.natural(), tau, opt));
}

double unitarity_deficit(const SystemSpec& spec, double tau, const EngineOptions& opt) {
    const NaturalParams np = spec.natural();
    const Complex i_amp = vacuum_amplitude(np, tau, /*fourth_order=*/true, opt);
    const double x2 = std::norm(amplitude_exchange_X(np, tau, opt));
    const double a1 = sum_A1_sq(np, tau, /*corrections=*/true, opt);
    const double b1 = sum_B1_sq(np, tau, /*corrections=*/true, opt);
    const double a2 = sum_A2_sq(np, tau, opt);
    const double b2 = sum_B2_sq(np, tau, opt);
    return std::abs(1.0 - (std::norm(i_amp) + x2 + a1 + b1 + a2 + b2));
}

ProbabilityCurve compute_curve_perturbative(const SystemSpec& spec,
                                            const std::vector<double>& times_s,
                                            const EngineOptions& opt, int threads) {
    ProbabilityCurve curve;
    curve.mode = spec.rwa_mode ? "rwa" : "full";
    curve.engine = "perturbative";
    curve.t0_s = spec.field.cutoff_time_s;
    curve.points.resize(times_s.size());
    const NaturalParams np = spec.natural();
    parallel_for_index(times_s.size(), threads, [&](std::size_t i) {
        const double t = times_s[i];
        const double tau = spec.tau_from_seconds(t);
        const PointProbs p = point_probs(np, tau, opt);
        curve.points[i] = CurvePoint{t, tau, p.ge0, p.ge_star, p.star_e_star, conditional_of(p)};
    });
    for (double t : times_s)
        if (spec.out_of_regime(spec.tau_from_seconds(t))) curve.out_of_regime = true;
    return curve;
}

ProbabilityCurve compute_curve_oracle(const SystemSpec& spec, const LatticeConfig& cfg,
                                      const std::vector<double>& times_s) {
    ProbabilityCurve curve;
    curve.mode = cfg.rwa_mode ? "rwa" : "full";
    curve.engine = "oracle";
    curve.t0_s = spec.field.cutoff_time_s;
    std::vector<double> taus;
    taus.reserve(times_s.size());
    for (double t : times_s) taus.push_back(spec.tau_from_seconds(t));
    const auto probs = oracle_probabilities_curve(spec, cfg, taus);
    curve.points.resize(times_s.size());
    for (std::size_t i = 0; i < times_s.size(); ++i) {
        const auto& p = probs[i];
        std::optional<double> cond;
        if (p.p_star_e_star >= kConditionalDenominatorFloor)
            cond = p.p_ge_star / p.p_star_e_star;
        curve.points[i] =
            CurvePoint{times_s[i], taus[i], p.p_ge0, p.p_ge_star, p.p_star_e_star, cond};
        if (spec.out_of_regime(taus[i])) curve.out_of_regime = true;
    }
    return curve;
}

} // namespace qed1d
