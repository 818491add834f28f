#include "qed1d/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "qed1d/errors.hpp"

namespace qed1d {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

// qubit pair index: 2*qS + qD with g = 0, e = 1
constexpr int kGG = 0, kGE = 1, kEG = 2, kEE = 3;
} // namespace

std::vector<std::string> LatticeConfig::validate(double tau_max, double phi) const {
    std::vector<std::string> issues;
    if (mode_count < 1) issues.push_back("mode_count must be >= 1");
    if (box_length <= 0.0) issues.push_back("box_length must be positive");
    if (max_photons != 2) issues.push_back("max_photons is fixed at 2");
    if (box_length < 4.0 * tau_max + 2.0 * phi)
        issues.push_back("box too short: wrap-around signal inside the simulated window");
    if (mode_spacing() > 1.0 / 20.0)
        issues.push_back("mode spacing above Omega/20: qubit resonance underresolved");
    return issues;
}

FockBasis::FockBasis(const LatticeConfig& cfg) {
    m_count_ = cfg.mode_count;
    n_modes_ = 2 * cfg.mode_count;
    one_photon_states_ = static_cast<std::size_t>(n_modes_);
    two_photon_states_ = static_cast<std::size_t>(n_modes_) * (n_modes_ + 1) / 2;
    const std::size_t per_qubit = 1 + one_photon_states_ + two_photon_states_;
    dim_ = 4 * per_qubit;
    if (dim_ > cfg.dimension_cap)
        throw DimensionOverflow("basis dimension " + std::to_string(dim_) + " exceeds cap " +
                                std::to_string(cfg.dimension_cap));
    const double dk = cfg.mode_spacing();
    omega_.resize(n_modes_);
    k_.resize(n_modes_);
    for (int m = 0; m < n_modes_; ++m) {
        const int n = slot_to_n(m);
        k_[m] = n * dk;
        omega_[m] = std::abs(k_[m]);
    }
}

int FockBasis::slot_to_n(int m) const { return (m < m_count_) ? (m - m_count_) : (m - m_count_ + 1); }

std::size_t FockBasis::photon_sector_offset(int n_photons) const {
    if (n_photons == 0) return 0;
    if (n_photons == 1) return 1;
    return 1 + one_photon_states_;
}

std::size_t FockBasis::index_of(int qubit_pair, const std::vector<int>& photons) const {
    const std::size_t per_qubit = 1 + one_photon_states_ + two_photon_states_;
    std::size_t ph_idx = 0;
    if (photons.empty()) {
        ph_idx = 0;
    } else if (photons.size() == 1) {
        ph_idx = 1 + static_cast<std::size_t>(photons[0]);
    } else {
        const int i = photons[0], j = photons[1]; // i <= j
        const std::size_t row_off = static_cast<std::size_t>(i) * n_modes_ -
                                    static_cast<std::size_t>(i) * (i - 1) / 2;
        ph_idx = 1 + one_photon_states_ + row_off + static_cast<std::size_t>(j - i);
    }
    return static_cast<std::size_t>(qubit_pair) * per_qubit + ph_idx;
}

void FockBasis::state_of(std::size_t idx, int& qubit_pair, std::vector<int>& photons) const {
    const std::size_t per_qubit = 1 + one_photon_states_ + two_photon_states_;
    qubit_pair = static_cast<int>(idx / per_qubit);
    std::size_t ph = idx % per_qubit;
    photons.clear();
    if (ph == 0) return;
    if (ph <= one_photon_states_) {
        photons.push_back(static_cast<int>(ph - 1));
        return;
    }
    ph -= 1 + one_photon_states_;
    int i = 0;
    std::size_t row = static_cast<std::size_t>(n_modes_);
    while (ph >= row) {
        ph -= row;
        --row;
        ++i;
    }
    photons.push_back(i);
    photons.push_back(i + static_cast<int>(ph));
}

FockBasis build_basis(const LatticeConfig& cfg) { return FockBasis(cfg); }

SparseHamiltonian build_hamiltonian(const SystemSpec& spec, const LatticeConfig& cfg,
                                    const FockBasis& basis) {
    const NaturalParams np = spec.natural();
    const double theta0 = (cfg.theta0 > 0.0) ? cfg.theta0 : np.theta0;
    const double dk = cfg.mode_spacing();
    const int nm = basis.modes();
    const std::size_t dim = basis.dimension();

    // natural-unit positions; only the separation matters physically
    const double chi_s = spec.source.gap_frequency * spec.source.position_m / spec.field.velocity_m_s;
    const double chi_d = spec.source.gap_frequency * spec.detector.position_m / spec.field.velocity_m_s;

    // per-qubit, per-mode coupling carrying the continuum normalization
    std::vector<double> g_s(nm), g_d(nm);
    double sum_g2 = 0.0;
    for (int m = 0; m < nm; ++m) {
        const double ff = std::exp(-0.5 * basis.omega(m) * theta0);
        g_s[m] = 0.5 * std::sqrt(np.k_s * basis.omega(m) * dk) * ff;
        g_d[m] = 0.5 * std::sqrt(np.k_d * basis.omega(m) * dk) * ff;
        sum_g2 += g_s[m] * g_s[m] + g_d[m] * g_d[m];
    }

    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    trip.reserve(dim * 8);

    std::vector<int> photons, modified;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        int q;
        basis.state_of(idx, q, photons);
        const bool s_exc = (q & 2) != 0;
        const bool d_exc = (q & 1) != 0;
        double e0 = (s_exc ? 0.5 : -0.5) + (d_exc ? 0.5 : -0.5) * np.mu;
        for (int m : photons) e0 += basis.omega(m);
        trip.emplace_back(static_cast<int>(idx), static_cast<int>(idx), std::complex<double>{e0, 0.0});

        for (int a = 0; a < 2; ++a) {
            const char qubit = (a == 0) ? 'S' : 'D';
            const bool excited = (qubit == 'S') ? s_exc : d_exc;
            const bool raise = !excited;
            const int q2 = q ^ ((qubit == 'S') ? 2 : 1);
            const double chi = (qubit == 'S') ? chi_s : chi_d;
            const std::vector<double>& g = (qubit == 'S') ? g_s : g_d;

            // creation: forbidden for sigma^+ in rwa_mode (counterrotating)
            if (static_cast<int>(photons.size()) < cfg.max_photons && !(cfg.rwa_mode && raise)) {
                for (int m = 0; m < nm; ++m) {
                    modified = photons;
                    modified.push_back(m);
                    std::sort(modified.begin(), modified.end());
                    const double bose =
                        (modified.size() == 2 && modified[0] == modified[1]) ? std::sqrt(2.0) : 1.0;
                    const std::complex<double> amp =
                        kI * g[m] * bose * std::complex<double>{std::cos(-basis.k(m) * chi),
                                                                std::sin(-basis.k(m) * chi)};
                    trip.emplace_back(static_cast<int>(basis.index_of(q2, modified)),
                                      static_cast<int>(idx), amp);
                }
            }
            // annihilation: forbidden for sigma^- in rwa_mode
            if (!photons.empty() && !(cfg.rwa_mode && !raise)) {
                for (std::size_t p = 0; p < photons.size(); ++p) {
                    if (p > 0 && photons[p] == photons[p - 1]) continue;
                    const int m = photons[p];
                    const double bose =
                        (photons.size() == 2 && photons[0] == photons[1]) ? std::sqrt(2.0) : 1.0;
                    modified = photons;
                    modified.erase(modified.begin() + p);
                    const std::complex<double> amp =
                        -kI * g[m] * bose * std::complex<double>{std::cos(basis.k(m) * chi),
                                                                 std::sin(basis.k(m) * chi)};
                    trip.emplace_back(static_cast<int>(basis.index_of(q2, modified)),
                                      static_cast<int>(idx), amp);
                }
            }
        }
    }

    SparseHamiltonian h;
    h.matrix.resize(static_cast<int>(dim), static_cast<int>(dim));
    h.matrix.setFromTriplets(trip.begin(), trip.end());
    h.matrix.makeCompressed();

    // 1-norm bound for step control
    double max_col = 0.0;
    for (int c = 0; c < h.matrix.outerSize(); ++c) {
        double col = 0.0;
        for (Eigen::SparseMatrix<std::complex<double>>::InnerIterator it(h.matrix, c); it; ++it)
            col += std::abs(it.value());
        max_col = std::max(max_col, col);
    }
    h.norm_bound = max_col;
    h.leak_rate_coeff = std::sqrt(3.0 * sum_g2);
    return h;
}

namespace {

// one truncated-Taylor step of exp(-i H dt); returns false if the series
// fails to reach the tolerance
bool taylor_step(const SparseHamiltonian& h, Eigen::VectorXcd& psi, double dt) {
    Eigen::VectorXcd term = psi;
    Eigen::VectorXcd acc = psi;
    const double target = 1e-15 * psi.norm();
    for (int j = 1; j <= 48; ++j) {
        term = (h.matrix * term).eval();
        term *= std::complex<double>{0.0, -dt} / double(j);
        acc += term;
        if (term.norm() < target) {
            psi = std::move(acc);
            return true;
        }
    }
    return false;
}

struct EvolveResult {
    Eigen::VectorXcd psi;
    double leakage = 0.0;
};

double two_photon_norm(const Eigen::VectorXcd& psi, const FockBasis& basis) {
    const std::size_t per_qubit = basis.dimension() / 4;
    const std::size_t off2 = basis.photon_sector_offset(2);
    double acc = 0.0;
    for (int q = 0; q < 4; ++q) {
        const std::size_t base = q * per_qubit;
        for (std::size_t i = base + off2; i < base + per_qubit; ++i) acc += std::norm(psi[i]);
    }
    return std::sqrt(acc);
}

void evolve_span(const SparseHamiltonian& h, const FockBasis& basis, Eigen::VectorXcd& psi,
                 double tau_from, double tau_to, double& leakage) {
    const double step = 3.0 / std::max(h.norm_bound, 1e-12);
    double t = tau_from;
    while (t < tau_to - 1e-15) {
        const double dt = std::min(step, tau_to - t);
        leakage += dt * h.leak_rate_coeff * two_photon_norm(psi, basis);
        if (!taylor_step(h, psi, dt))
            throw ToleranceNotMet("Taylor propagator did not converge within 48 terms");
        t += dt;
    }
}

} // namespace

Eigen::VectorXcd evolve(const SparseHamiltonian& h, const FockBasis& basis, double tau) {
    if (tau < 0.0) throw Error("tau must be non-negative");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()));
    psi[basis.index_of(kEG, {})] = 1.0;
    double leak = 0.0;
    evolve_span(h, basis, psi, 0.0, tau, leak);
    return psi;
}

namespace lattice_detail {

OracleProbs project(const Eigen::VectorXcd& psi, const FockBasis& basis, double leak) {
    OracleProbs out;
    const std::size_t per_qubit = basis.dimension() / 4;
    auto sector_norm = [&](int q) {
        double acc = 0.0;
        for (std::size_t i = 0; i < per_qubit; ++i) acc += std::norm(psi[q * per_qubit + i]);
        return acc;
    };
    out.p_ge0 = std::norm(psi[basis.index_of(kGE, {})]);
    out.p_ge_star = sector_norm(kGE);
    out.p_star_e_star = sector_norm(kGE) + sector_norm(kEE);
    out.total = psi.squaredNorm();
    out.leakage_estimate = leak;
    return out;
}

} // namespace lattice_detail

OracleProbs oracle_probabilities(const SystemSpec& spec, const LatticeConfig& cfg, double tau) {
    return oracle_probabilities_curve(spec, cfg, {tau}).front();
}

std::vector<OracleProbs> oracle_probabilities_curve(const SystemSpec& spec,
                                                    const LatticeConfig& cfg,
                                                    const std::vector<double>& taus) {
    const FockBasis basis = build_basis(cfg);
    const SparseHamiltonian h = build_hamiltonian(spec, cfg, basis);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()));
    psi[basis.index_of(kEG, {})] = 1.0;
    double leak = 0.0;
    double t = 0.0;
    std::vector<OracleProbs> out;
    out.reserve(taus.size());
    for (double target : taus) {
        if (target < t) throw Error("oracle checkpoints must be non-decreasing");
        evolve_span(h, basis, psi, t, target, leak);
        t = target;
        out.push_back(lattice_detail::project(psi, basis, leak));
    }
    return out;
}

} // namespace qed1d
