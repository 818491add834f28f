#include <doctest.h>

#include <cmath>

#include "qed1d/quadrature.hpp"

using namespace qed1d;

TEST_CASE("plain adaptive Gauss-Legendre") {
    CHECK(integrate_gl([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(integrate_gl([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("spherical Bessel values") {
    double j[13];
    spherical_bessel_array(2, 0.5, j);
    CHECK(j[0] == doctest::Approx(std::sin(0.5) / 0.5).epsilon(1e-12));
    CHECK(j[1] == doctest::Approx(std::sin(0.5) / 0.25 - std::cos(0.5) / 0.5).epsilon(1e-12));
    // Miller (downward) and upward branches agree where both are stable:
    // mmax = 8 routes x = 15 through Miller, mmax = 2 routes it upward
    spherical_bessel_array(8, 15.0, j);
    double j2[13];
    spherical_bessel_array(2, 15.0, j2);
    for (int m = 0; m <= 2; ++m) CHECK(j[m] == doctest::Approx(j2[m]).epsilon(1e-10));
    // tiny argument series
    spherical_bessel_array(3, 1e-6, j);
    CHECK(j[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(j[1] == doctest::Approx(1e-6 / 3.0).epsilon(1e-8));
}

TEST_CASE("oscillatory integral against the Laplace-transform closed form") {
    // int_0^inf e^{-a nu} e^{i b nu} dnu = 1 / (a - i b)
    const double a = 0.05, b = 12.0;
    OscRates rates{b, 0.0};
    OscOptions opt;
    opt.abs_tol = 1e-11;
    auto f = [&](double nu, ClassVals& out) {
        out.add(osckey::pack(1, 0), Complex{std::exp(-a * nu), 0.0});
    };
    const Complex got = integrate_osc_scalar(f, 0.0, 700.0, rates, {}, opt);
    const Complex expect = 1.0 / Complex{a, -b};
    CHECK(std::abs(got - expect) < 1e-9);
}

TEST_CASE("oscillatory integral with a cosine fold") {
    // int_0^inf nu e^{-a nu} cos(b nu) dnu = (a^2 - b^2) / (a^2 + b^2)^2
    const double a = 0.2, b = 3.5;
    OscRates rates{0.0, b};
    OscOptions opt;
    opt.abs_tol = 1e-11;
    auto f = [&](double nu, ClassVals& out) {
        const Complex half{0.5 * nu * std::exp(-a * nu), 0.0};
        out.add(osckey::pack(0, 1), half);
        out.add(osckey::pack(0, -1), half);
    };
    const Complex got = integrate_osc_scalar(f, 0.0, 300.0, rates, {}, opt);
    const double expect = (a * a - b * b) / std::pow(a * a + b * b, 2);
    CHECK(got.real() == doctest::Approx(expect).epsilon(1e-8));
    CHECK(std::abs(got.imag()) < 1e-9);
}

TEST_CASE("resonance window: singular per-class envelopes, regular total") {
    // int_0^inf e^{-nu} (e^{i (nu-1) tau} - 1)/(nu - 1) dnu, smooth at nu = 1
    const double tau = 10.0;
    OscRates rates{tau, 0.0};
    OscOptions opt;
    opt.abs_tol = 1e-10;
    auto f = [&](double nu, ClassVals& out) {
        const double env = std::exp(-nu);
        const Complex den{nu - 1.0, 0.0};
        out.add(osckey::pack(1, 0), env * std::polar(1.0, -tau) / den);
        out.add(osckey::pack(0, 0), -env / den);
    };
    const Complex got = integrate_osc_scalar(f, 0.0, 60.0, rates, {1.0}, opt);
    // reference by direct fine integration of the recombined (regular) function
    auto real_part = [&](double nu) {
        if (std::abs(nu - 1.0) < 1e-9) return std::exp(-nu) * -tau * std::sin((nu - 1.0) * tau);
        return std::exp(-nu) * (std::cos((nu - 1.0) * tau) - 1.0) / (nu - 1.0);
    };
    auto imag_part = [&](double nu) {
        if (std::abs(nu - 1.0) < 1e-9) return std::exp(-nu) * tau;
        return std::exp(-nu) * std::sin((nu - 1.0) * tau) / (nu - 1.0);
    };
    const double re = integrate_gl(real_part, 0.0, 60.0, 1e-12);
    const double im = integrate_gl(imag_part, 0.0, 60.0, 1e-12);
    CHECK(got.real() == doctest::Approx(re).epsilon(1e-7));
    CHECK(got.imag() == doctest::Approx(im).epsilon(1e-7));
}

TEST_CASE("spectator buckets pass through untouched") {
    OscRates rates{2.0, 0.0};
    OscOptions opt;
    opt.abs_tol = 1e-11;
    auto f = [&](double nu, ClassVals& out) {
        const double env = std::exp(-nu);
        out.add(osckey::pack(0, 0, 1, 0), Complex{env, 0.0});
        out.add(osckey::pack(0, 0, 0, 0), Complex{2.0 * env, 0.0});
    };
    const ClassVals got = integrate_osc(f, 0.0, 80.0, rates, {}, opt);
    REQUIRE(got.size() == 2);
    double v1 = 0.0, v0 = 0.0;
    for (int i = 0; i < got.size(); ++i) {
        const int spec_key = osckey::spectator_to_dim0(got.key(i));
        if (osckey::a0(spec_key) == 1)
            v1 = got.val(i).real();
        else
            v0 = got.val(i).real();
    }
    CHECK(v1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v0 == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("unresolvable needle raises QuadratureNotConverged") {
    OscRates rates{1.0, 0.0};
    OscOptions opt;
    opt.abs_tol = 1e-14;
    opt.max_depth = 3;
    auto f = [&](double nu, ClassVals& out) {
        out.add(osckey::pack(0, 0), Complex{1.0 / (std::pow(nu - 37.123, 2) + 1e-9), 0.0});
    };
    CHECK_THROWS_AS(integrate_osc_scalar(f, 0.0, 80.0, rates, {}, opt), QuadratureNotConverged);
}
