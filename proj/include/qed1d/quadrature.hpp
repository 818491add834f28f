// quadrature.hpp — oscillatory mode-sum quadrature
//
// The mode integrands produced by the perturbation engine are sums of smooth
// envelopes times exp(i (a*tau + b*phi) nu) oscillations, with a, b small
// integers. Away from resonances each envelope is fitted per panel in a
// Legendre basis and the oscillatory moments are integrated exactly
// (Filon-type), which keeps panel counts tied to envelope smoothness instead
// of the oscillation period; this is what makes ultraviolet ranges up to
// 20/t0 affordable. Near resonances the per-direction envelopes are
// individually singular (the full sum is regular), so narrow windows around
// the supplied critical points fall back to direct Gauss panels on the
// recombined integrand.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qed1d/errors.hpp"

namespace qed1d {

using Complex = std::complex<double>;

// Oscillation key: exp(i (a0*T + b0*Phi) nu) in the integration dimension,
// with (a1, b1) tagging a spectator dimension that survives integration.
namespace osckey {
inline int pack(int a0, int b0, int a1 = 0, int b1 = 0) {
    return (a0 + 4) | ((b0 + 4) << 4) | ((a1 + 4) << 8) | ((b1 + 4) << 12);
}
inline int a0(int k) { return (k & 0xF) - 4; }
inline int b0(int k) { return ((k >> 4) & 0xF) - 4; }
// dim0 components zeroed (offsets preserved), spectator kept
inline int spectator(int k) { return (k & 0xFF00) | 0x44; }
// move the spectator components into dim0
inline int spectator_to_dim0(int k) { return ((k >> 8) & 0xFF) | 0x4400; }
// add to the spectator components
inline int shift_spectator(int k, int da, int db) {
    const int a = ((k >> 8) & 0xF) + da;
    const int b = ((k >> 12) & 0xF) + db;
    if (a < 0 || a > 15 || b < 0 || b > 15) throw Error("spectator shift out of range");
    return (k & 0x00FF) | (a << 8) | (b << 12);
}
inline int identity() { return pack(0, 0, 0, 0); }
} // namespace osckey

// Small flat map from oscillation keys to complex values; lives on the stack.
class ClassVals {
public:
    static constexpr int kCap = 96;
    void clear() { n_ = 0; }
    int size() const { return n_; }
    int key(int i) const { return keys_[i]; }
    Complex val(int i) const { return vals_[i]; }
    void add(int key, Complex v);
    void add_all(const ClassVals& other, Complex factor);
    void scale(Complex c) {
        for (int i = 0; i < n_; ++i) vals_[i] *= c;
    }
    Complex sum_plain() const; // coefficients only, oscillations ignored
private:
    int n_ = 0;
    int keys_[kCap];
    Complex vals_[kCap];
};

struct OscRates {
    double t = 0.0;   // rate multiplier for the a index (usually tau)
    double phi = 0.0; // rate multiplier for the b index (separation phase)
    double rate(int key) const { return osckey::a0(key) * t + osckey::b0(key) * phi; }
    double max_rate() const { return 2.0 * std::abs(t) + 2.0 * std::abs(phi); }
};

struct OscOptions {
    double abs_tol = 1e-10;
    int gl_order = 10;        // nodes per direct panel and per Filon fit
    int max_depth = 26;
    double window_halfwidth = 0.4; // around each critical point
    double geometric_ratio = 1.8;  // panel growth in the ultraviolet range
    double structured_end = 4.0;   // below this, unit-scale initial panels
    double cap_scale = 1.0;        // scales all panel caps; used by halving checks
};

// A simple pole of the per-class envelopes at position = r0 + rho * x, where
// x is the spectator variable of a nested integration. The full integrand is
// regular there (the poles cancel across classes), but each class alone is
// only principal-value integrable, and the PV part oscillates with the pole
// position; rho tells the integrator which spectator class that oscillation
// belongs to.
struct PoleSpec {
    double position = 0.0;
    double r0 = 0.0;
    int rho = 0;
};

// Integrates f over nu in [lo, hi]. f fills a ClassVals with the envelope
// decomposition at nu. Returns one bucket per spectator key (a1, b1).
// Critical points get direct windows over the recombined integrand; pole
// windows additionally subtract each class's residue and restore the
// principal-value part in closed form so per-class results stay meaningful.
// Throws QuadratureNotConverged when panel refinement hits max_depth with
// the error budget still exceeded.
ClassVals integrate_osc(const std::function<void(double, ClassVals&)>& f,
                        double lo, double hi,
                        const OscRates& rates,
                        std::vector<double> criticals,
                        const OscOptions& opt,
                        const std::vector<PoleSpec>& poles = {});

// Convenience wrapper for integrands with no spectator dimension.
Complex integrate_osc_scalar(const std::function<void(double, ClassVals&)>& f,
                             double lo, double hi,
                             const OscRates& rates,
                             std::vector<double> criticals,
                             const OscOptions& opt);

// Plain adaptive Gauss-Legendre on a real integrand; used by brute-force
// test oracles and simple smooth integrals.
double integrate_gl(const std::function<double(double)>& f, double lo, double hi,
                    double rel_tol = 1e-10, int max_depth = 40);

// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
void gauss_legendre(int n, const double** nodes, const double** weights);

// Spherical Bessel j_0..j_mmax at x >= 0, stable for all magnitudes.
void spherical_bessel_array(int mmax, double x, double* out);

} // namespace qed1d
