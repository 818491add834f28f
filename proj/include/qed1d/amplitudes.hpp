// amplitudes.hpp — Dyson-series amplitudes through O(K^2)
//
// Time integrals are done exactly per diagram via ExpPoly nesting; mode
// integrals run through the oscillatory quadrature with the regulator
// exp(-omega t0 / 2) on every vertex coupling. Scalar entry points below are
// what the observables layer consumes; the grid-valued operations expose the
// per-mode amplitudes for inspection and independent summation.
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qed1d/diagrams.hpp"
#include "qed1d/model.hpp"
#include "qed1d/quadrature.hpp"

namespace qed1d {

struct EngineOptions {
    double quad_tol = 1e-8;        // absolute tolerance on probability-scale results
    double omega_max_factor = 20.0; // nu_max = factor / theta0
    double cap_scale = 1.0;         // scales panel caps; convergence tests halve it
    int gl_order = 10;
};

inline double nu_max(const NaturalParams& np, const EngineOptions& opt) {
    return opt.omega_max_factor / np.theta0;
}

// Per-mode single-photon amplitude with optional order-3 corrections split
// by emitter. Node values carry the vertex couplings g sqrt(nu) f(nu); the
// direction sum and spatial folds are applied by mode_sum_square.
struct AmplitudeGrid {
    std::vector<double> omega;   // strictly increasing, natural units
    std::vector<double> weight;  // positive quadrature weights
    std::vector<Complex> leading;
    std::vector<Complex> corr_same;  // order-3 pieces emitted by the leading qubit
    std::vector<Complex> corr_cross; // order-3 pieces emitted by the other qubit
    char leading_emitter = 'D';
    double theta0 = 0.0;
    double phi = 0.0;
};

// Two-photon amplitude on a tensor grid. Factorized kind stores the two
// independent emission profiles; general kind stores full pair matrices.
struct PairGrid {
    enum class Kind { factorized, general };
    Kind kind = Kind::factorized;
    std::vector<double> omega;
    std::vector<double> weight;
    std::vector<Complex> chan_s; // factorized: source profile a(nu); general: row-major S(nu_i, nu_j)
    std::vector<Complex> chan_d; // factorized: detector profile b(nu); general: D(nu_i, nu_j)
    double theta0 = 0.0;
    double phi = 0.0;
};

// <ge0|U_I|eg0>, order 2 (both photon-exchange routes; one in rwa_mode).
Complex amplitude_exchange_X(const NaturalParams& np, double tau, const EngineOptions& opt = {});

AmplitudeGrid amplitude_A1(const NaturalParams& np, double tau, bool include_corrections,
                           const EngineOptions& opt = {});
AmplitudeGrid amplitude_B1(const NaturalParams& np, double tau, bool include_corrections,
                           const EngineOptions& opt = {});
PairGrid amplitude_A2(const NaturalParams& np, double tau, const EngineOptions& opt = {});
PairGrid amplitude_B2(const NaturalParams& np, double tau, const EngineOptions& opt = {});

// Mode sums of |amplitude|^2 over both propagation directions, including the
// order-1 x order-3 interference when corrections are present (|order-3|^2 is
// dropped) and the direct-plus-crossed split with the 1/2! factor for pairs.
// Throws RegulatorMissing when the grid was built with t0 = 0.
double mode_sum_square(const AmplitudeGrid& grid);
double mode_sum_square(const PairGrid& grid);

// Scalar fast paths used by the observables layer (identical contracts).
double sum_A1_sq(const NaturalParams& np, double tau, bool corrections,
                 const EngineOptions& opt = {});
double sum_B1_sq(const NaturalParams& np, double tau, bool corrections,
                 const EngineOptions& opt = {});
double sum_A2_sq(const NaturalParams& np, double tau, const EngineOptions& opt = {});
double sum_B2_sq(const NaturalParams& np, double tau, const EngineOptions& opt = {});

// Vacuum-persistence amplitude I = 1 + I^(2) [+ I^(4)]; the fourth order is
// needed for the unitarity audit to cancel through O(K^2).
Complex vacuum_amplitude(const NaturalParams& np, double tau, bool fourth_order,
                         const EngineOptions& opt = {});

} // namespace qed1d
