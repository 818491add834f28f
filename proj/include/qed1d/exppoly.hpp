// exppoly.hpp — closed-form calculus on sums of c * tau^p * exp(i w tau)
//
// Every nested time integral of the Dyson series lives in this class of
// functions, so integration over [0, tau] can be done exactly, level by
// level. Terms optionally carry integer direction tags recording how the
// frequency w depends on up to two photon mode variables (dw/dnu); the
// oscillatory mode quadrature uses the tags to split an integrand into
// smooth envelopes per oscillation direction.
#pragma once

#include <array>
#include <complex>
#include <vector>

namespace qed1d {

using Complex = std::complex<double>;

// Frequencies closer to zero than this are treated as exactly zero by the
// integrator; integration then raises the power instead (secular term).
inline constexpr double kSecularFreqEps = 1e-12;

struct ExpPolyTerm {
    Complex coeff{0.0, 0.0};
    int power = 0;                   // non-negative
    double freq = 0.0;               // w in exp(i w tau)
    std::array<int, 2> dirs{0, 0};   // d(freq)/d(nu_1), d(freq)/d(nu_2)
};

class ExpPoly {
public:
    ExpPoly() = default;
    explicit ExpPoly(std::vector<ExpPolyTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

    static ExpPoly constant(Complex c) { return ExpPoly({ExpPolyTerm{c, 0, 0.0, {0, 0}}}); }
    static ExpPoly unit_exponential(double freq, std::array<int, 2> dirs = {0, 0}) {
        return ExpPoly({ExpPolyTerm{{1.0, 0.0}, 0, freq, dirs}});
    }

    const std::vector<ExpPolyTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Complex eval(double tau) const;

    // Sum of coefficients restricted to one (dir0, dir1) class, with the
    // tagged oscillation divided out: sum c * tau^p * exp(i (w - d0*nu0 - d1*nu1) tau).
    // Used by the mode quadrature to extract smooth envelopes.
    Complex eval_class(double tau, std::array<int, 2> cls, double nu0, double nu1) const;

    // Multiply by exp(i freq tau) carrying direction tags.
    ExpPoly shifted(double freq, std::array<int, 2> dirs = {0, 0}) const;

    ExpPoly operator+(const ExpPoly& other) const;
    ExpPoly& operator*=(Complex c);

    // All distinct direction classes present.
    std::vector<std::array<int, 2>> classes() const;

private:
    friend ExpPoly exppoly_integrate(const ExpPoly&);
    void canonicalize();
    std::vector<ExpPolyTerm> terms_;
};

// Exact antiderivative q(tau) = integral_0^tau p(t) dt, in closed form.
// Frequencies below kSecularFreqEps in magnitude integrate as secular terms
// (power raised by one). The result is canonical.
ExpPoly exppoly_integrate(const ExpPoly& p);

} // namespace qed1d
