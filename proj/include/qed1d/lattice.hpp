// lattice.hpp — exact-evolution oracle on a finite ring of field modes
//
// Discretizes the continuum onto modes k_n = 2 pi n / L, n = -M..M without
// n = 0, truncates the Fock space at two photons, builds the full sparse
// Hamiltonian and propagates the Schroedinger equation. No perturbation
// theory anywhere: this is the independent check on the Dyson engine, with
// the same exp(-omega t0 / 2) form factor so both sides regulate alike.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "qed1d/model.hpp"

namespace qed1d {

struct LatticeConfig {
    int mode_count = 48;             // M; modes n = -M..M, n != 0
    double box_length = 16.0 * 2.0 * M_PI; // L, natural units
    int max_photons = 2;             // fixed by the engine's order of accuracy
    bool rwa_mode = false;
    double theta0 = 0.0;             // form factor, natural units (Omega_S t0)
    std::size_t dimension_cap = 200000;

    double mode_spacing() const { return 2.0 * M_PI / box_length; }
    // Soft guidance limits; violations are reported by validate(), not fatal.
    std::vector<std::string> validate(double tau_max, double phi) const;
};

// Basis enumeration: (qubit pair gg, ge, eg, ee) x (vacuum | 1 photon | 2
// photons, unordered with repetition). Index maps in both directions.
class FockBasis {
public:
    explicit FockBasis(const LatticeConfig& cfg);

    int modes() const { return n_modes_; }              // 2M
    std::size_t dimension() const { return dim_; }

    // state -> index; photon list must be sorted, size <= 2
    std::size_t index_of(int qubit_pair, const std::vector<int>& photons) const;
    // index -> (qubit_pair, photons)
    void state_of(std::size_t idx, int& qubit_pair, std::vector<int>& photons) const;

    // mode bookkeeping: slot m in [0, 2M) maps to lattice index n in
    // -M..-1, 1..M and frequency |k_n|
    int slot_to_n(int m) const;
    double omega(int m) const { return omega_[m]; }
    double k(int m) const { return k_[m]; }

    std::size_t photon_sector_offset(int n_photons) const;

private:
    int m_count_;
    int n_modes_;
    std::size_t dim_;
    std::size_t one_photon_states_;
    std::size_t two_photon_states_;
    std::vector<double> omega_, k_;
};

struct SparseHamiltonian {
    Eigen::SparseMatrix<std::complex<double>> matrix; // column-major, hermitian
    double norm_bound = 0.0;                          // 1-norm bound for step control
    // couplings used for the three-photon leakage bound
    double leak_rate_coeff = 0.0;
};

FockBasis build_basis(const LatticeConfig& cfg);

SparseHamiltonian build_hamiltonian(const SystemSpec& spec, const LatticeConfig& cfg,
                                    const FockBasis& basis);

// |psi(tau)> from |eg0> under the full H, truncated-Taylor stepping with the
// step set by the Hamiltonian norm. Norm is preserved to the integrator
// tolerance; ToleranceNotMet if the series cannot reach it.
Eigen::VectorXcd evolve(const SparseHamiltonian& h, const FockBasis& basis, double tau);

struct OracleProbs {
    double p_ge0 = 0.0;
    double p_ge_star = 0.0;
    double p_star_e_star = 0.0;
    double total = 0.0;            // norm^2 over the truncated basis
    double leakage_estimate = 0.0; // first-order bound on 3-photon outflow
};

OracleProbs oracle_probabilities(const SystemSpec& spec, const LatticeConfig& cfg, double tau);

// Checkpointed version: probabilities at each tau in an increasing list,
// one continuous evolution.
std::vector<OracleProbs> oracle_probabilities_curve(const SystemSpec& spec,
                                                    const LatticeConfig& cfg,
                                                    const std::vector<double>& taus);

namespace lattice_detail {
// sector projections of an evolved state; exposed for tests
OracleProbs project(const Eigen::VectorXcd& psi, const FockBasis& basis, double leak);
} // namespace lattice_detail

} // namespace qed1d
