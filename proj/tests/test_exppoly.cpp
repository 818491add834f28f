#include <doctest.h>

#include <cmath>
#include <random>

#include "qed1d/exppoly.hpp"

using namespace qed1d;

namespace {

// term-by-term analytic derivative, independent of the integration kernel
ExpPoly derivative(const ExpPoly& p) {
    std::vector<ExpPolyTerm> terms;
    for (const auto& t : p.terms()) {
        if (t.power > 0)
            terms.push_back(ExpPolyTerm{t.coeff * double(t.power), t.power - 1, t.freq, t.dirs});
        terms.push_back(ExpPolyTerm{t.coeff * Complex{0.0, t.freq}, t.power, t.freq, t.dirs});
    }
    return ExpPoly(std::move(terms));
}

// characteristic magnitude of p at tau, for a meaningful relative error
double scale_at(const ExpPoly& p, double tau) {
    double s = 0.0;
    for (const auto& t : p.terms()) s += std::abs(t.coeff) * std::pow(std::abs(tau) + 1.0, t.power);
    return s;
}

// Sixth-order central difference of the antiderivative; the independent
// oracle for the integration kernel
Complex fd_derivative(const ExpPoly& q, double tau, double h) {
    const Complex d1 = q.eval(tau + h) - q.eval(tau - h);
    const Complex d2 = q.eval(tau + 2.0 * h) - q.eval(tau - 2.0 * h);
    const Complex d3 = q.eval(tau + 3.0 * h) - q.eval(tau - 3.0 * h);
    return (45.0 * d1 - 9.0 * d2 + d3) / (60.0 * h);
}

// Frequencies either exactly zero (the secular branch) or of order one, as
// in the physical integrands; the closed-form antiderivative carries 1/w^p
// coefficients, so frequencies just above the secular threshold would make
// any sampled-value check ill-conditioned by construction.
ExpPoly random_poly(std::mt19937& rng, int nterms) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.5, 5.0);
    std::uniform_int_distribution<int> power(0, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ExpPolyTerm> terms;
    for (int i = 0; i < nterms; ++i) {
        const double w = (u(rng) < 0.2) ? 0.0 : (sign(rng) ? 1.0 : -1.0) * freq(rng);
        terms.push_back(ExpPolyTerm{{coeff(rng), coeff(rng)}, power(rng), w, {0, 0}});
    }
    return ExpPoly(std::move(terms));
}

} // namespace

TEST_CASE("canonical form merges duplicates and drops zeros") {
    ExpPoly p({{Complex{1.0, 0.0}, 2, 1.5, {0, 0}},
               {Complex{2.0, 1.0}, 2, 1.5, {0, 0}},
               {Complex{0.0, 0.0}, 1, 0.3, {0, 0}},
               {Complex{-3.0, -1.0}, 2, 1.5, {0, 0}}});
    REQUIRE(p.terms().size() == 0); // 1 + 2 - 3 = 0 merged away, zero dropped
    ExpPoly q({{Complex{1.0, 0.0}, 0, 0.0, {0, 0}}, {Complex{2.0, 0.0}, 0, 2.0, {0, 0}}});
    CHECK(q.terms().size() == 2);
    CHECK(q.eval(0.0) == Complex{3.0, 0.0}); // value at 0 is the coefficient sum
}

TEST_CASE("integrate: constant integrand gives tau") {
    const ExpPoly q = exppoly_integrate(ExpPoly::constant({1.0, 0.0}));
    REQUIRE(q.terms().size() == 1);
    CHECK(q.terms()[0].power == 1);
    CHECK(q.eval(3.25) == Complex{3.25, 0.0});
}

TEST_CASE("integrate: pure exponential gives (e^{iwt} - 1)/(iw)") {
    const double w = 2.7;
    const ExpPoly q = exppoly_integrate(ExpPoly::unit_exponential(w));
    for (double tau : {0.0, 0.4, 3.0, 17.0}) {
        const Complex expect = (std::polar(1.0, w * tau) - Complex{1.0, 0.0}) / Complex{0.0, w};
        CHECK(std::abs(q.eval(tau) - expect) < 1e-14 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("integrate: secular branch raises the power") {
    const ExpPoly p({{Complex{2.0, 0.0}, 1, 0.5e-12, {0, 0}}});
    const ExpPoly q = exppoly_integrate(p);
    REQUIRE(q.terms().size() == 1);
    CHECK(q.terms()[0].power == 2);
    CHECK(q.eval(4.0).real() == doctest::Approx(16.0)); // 2 tau^2 / 2
    CHECK(q.eval(4.0).imag() == doctest::Approx(0.0));
}

TEST_CASE("antiderivative vanishes at tau = 0") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const ExpPoly q = exppoly_integrate(random_poly(rng, 8));
        double coeff_scale = 0.0;
        for (const auto& t : q.terms()) coeff_scale += std::abs(t.coeff);
        CHECK(std::abs(q.eval(0.0)) < 1e-14 * (1.0 + coeff_scale));
    }
}

TEST_CASE("term-by-term derivative of the antiderivative recovers the integrand") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> taus(0.0, 50.0);
    for (int rep = 0; rep < 100; ++rep) {
        const ExpPoly p = random_poly(rng, 10);
        const ExpPoly dq = derivative(exppoly_integrate(p));
        for (int k = 0; k < 5; ++k) {
            const double tau = taus(rng);
            const double denom = std::abs(p.eval(tau)) + 1e-4 * scale_at(p, tau);
            CHECK(std::abs(dq.eval(tau) - p.eval(tau)) / denom < 1e-10);
        }
    }
}

TEST_CASE("finite-difference derivative check on randomized round trips") {
    // the acceptance-grade oracle: independent of any closed-form algebra
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> taus(2.0, 50.0);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const ExpPoly p = random_poly(rng, 10);
        const ExpPoly q = exppoly_integrate(p);
        for (int k = 0; k < 5; ++k) {
            const double tau = taus(rng);
            const Complex fd = fd_derivative(q, tau, 2e-3);
            const double denom = std::abs(p.eval(tau)) + 1e-2 * scale_at(p, tau);
            CHECK(std::abs(fd - p.eval(tau)) / denom < 1e-10);
            ++checked;
        }
    }
    CHECK(checked == 1000);
}

TEST_CASE("direction tags survive shifting and integration") {
    ExpPoly p = ExpPoly::unit_exponential(1.2, {1, 0});
    p = exppoly_integrate(p);
    p = p.shifted(-0.7, {0, -1});
    p = exppoly_integrate(p);
    bool has_mixed = false;
    for (const auto& t : p.terms()) {
        if (t.dirs == std::array<int, 2>{1, -1}) has_mixed = true;
        CHECK(t.dirs[0] >= 0);
        CHECK(t.dirs[1] <= 0);
    }
    CHECK(has_mixed);
    CHECK(p.classes().size() >= 2);
}
