// observables.hpp — probabilities of the detection problem and their curves
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qed1d/amplitudes.hpp"
#include "qed1d/lattice.hpp"
#include "qed1d/model.hpp"

namespace qed1d {

// Denominator floor below which the conditional probability is Undefined
// (0/0 at tau = 0); far below physical probabilities, above underflow.
inline constexpr double kConditionalDenominatorFloor = 1e-30;

double prob_ge0(const SystemSpec& spec, double tau, const EngineOptions& opt = {});
double prob_ge_star(const SystemSpec& spec, double tau, const EngineOptions& opt = {});
double prob_star_e_star(const SystemSpec& spec, double tau, const EngineOptions& opt = {});

// P(S_g | D_e) = P[ge*] / P[*e*]; nullopt marks the Undefined 0/0 case.
std::optional<double> conditional_probability(const SystemSpec& spec, double tau,
                                              const EngineOptions& opt = {});

// |1 - sum of all tracked sector probabilities|; O(K^3) when the engine is
// assembled correctly through O(K^2).
double unitarity_deficit(const SystemSpec& spec, double tau, const EngineOptions& opt = {});

struct CurvePoint {
    double t_s = 0.0;
    double tau = 0.0;
    double p_ge0 = 0.0;
    double p_ge_star = 0.0;
    double p_star_e_star = 0.0;
    std::optional<double> p_cond;
};

struct ProbabilityCurve {
    std::vector<CurvePoint> points;
    std::string mode;   // "full" | "rwa"
    std::string engine; // "perturbative" | "oracle"
    double t0_s = 0.0;
    bool out_of_regime = false; // any point beyond the soft validity boundary
};

ProbabilityCurve compute_curve_perturbative(const SystemSpec& spec,
                                            const std::vector<double>& times_s,
                                            const EngineOptions& opt = {}, int threads = 1);

ProbabilityCurve compute_curve_oracle(const SystemSpec& spec, const LatticeConfig& cfg,
                                      const std::vector<double>& times_s);

} // namespace qed1d
