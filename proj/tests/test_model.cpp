#include <doctest.h>

#include <cmath>

#include "qed1d/model.hpp"

using namespace qed1d;

namespace {

std::map<std::string, double> base_config() {
    return {{"omega_ghz", 1.0}, {"coupling", 7.5e-3}, {"phase", 0.5}};
}

} // namespace

TEST_CASE("build_system derives separation from the requested phase") {
    const auto spec = build_system(base_config());
    // r = phi v / Omega with Omega = 2 pi GHz, v = 1e8 m/s
    CHECK(spec.separation_m == doctest::Approx(7.957747154595e-3).epsilon(1e-12));
    CHECK(spec.phase == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spec.source.coupling == 7.5e-3);
    CHECK(spec.detector.coupling == 7.5e-3);
    CHECK(spec.warnings.empty());
}

TEST_CASE("build_system accepts co-located qubits with a warning") {
    auto kv = base_config();
    kv["phase"] = 0.0;
    const auto spec = build_system(kv);
    CHECK(spec.separation_m == 0.0);
    CHECK(spec.phase == 0.0);
    REQUIRE(spec.warnings.size() == 1);
}

TEST_CASE("build_system rejects non-physical inputs") {
    auto kv = base_config();
    kv["omega_ghz"] = 0.0;
    CHECK_THROWS_AS(build_system(kv), NonPhysicalValue);
    kv = base_config();
    kv["coupling"] = -1e-3;
    CHECK_THROWS_AS(build_system(kv), NonPhysicalValue);
    kv = base_config();
    kv.erase("phase");
    CHECK_THROWS_AS(build_system(kv), MissingKey);
    kv = base_config();
    kv["t0_s"] = 0.0;
    CHECK_THROWS_AS(build_system(kv), NonPhysicalValue);
}

TEST_CASE("natural time conversion and round trip") {
    const auto spec = build_system(base_config());
    CHECK(to_natural(0.0, spec) == 0.0);
    // t = 1 ns at Omega/2pi = 1 GHz gives tau = 2 pi
    CHECK(to_natural(1e-9, spec) == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
    for (double t : {1e-12, 3.7e-10, 2e-9, 1e-8}) {
        CHECK(from_natural(to_natural(t, spec), spec) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("phase parameterization scales like 2 pi r / lambda") {
    auto kv = base_config();
    kv.erase("phase");
    kv["separation_m"] = 2e-3;
    const auto s1 = build_system(kv);
    kv["separation_m"] = 4e-3;
    const auto s2 = build_system(kv);
    CHECK(s2.phase == doctest::Approx(2.0 * s1.phase).epsilon(1e-14));
    // scaling Omega up and r down together leaves phi fixed
    kv["separation_m"] = 1e-3;
    kv["omega_ghz"] = 2.0;
    const auto s3 = build_system(kv);
    CHECK(s3.phase == doctest::Approx(s1.phase).epsilon(1e-14));
}

TEST_CASE("spec construction is deterministic") {
    const auto a = build_system(base_config());
    const auto b = build_system(base_config());
    CHECK(a.separation_m == b.separation_m);
    CHECK(a.phase == b.phase);
    CHECK(a.source.gap_frequency == b.source.gap_frequency);
}

TEST_CASE("perturbative regime flag is soft and time dependent") {
    const auto spec = build_system(base_config());
    CHECK_FALSE(spec.out_of_regime(spec.tau_from_seconds(1e-9)));
    CHECK(spec.out_of_regime(spec.tau_from_seconds(1e-6)));
}

TEST_CASE("natural parameter block carries only dimensionless groups") {
    auto kv = base_config();
    kv["omega_s_ghz"] = 1.0;
    kv["omega_d_ghz"] = 1.3;
    kv["coupling_s"] = 1e-3;
    kv["coupling_d"] = 2e-3;
    const auto spec = build_system(kv, /*rwa=*/true);
    const auto np = spec.natural();
    CHECK(np.mu == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(np.k_s == 1e-3);
    CHECK(np.k_d == 2e-3);
    CHECK(np.theta0 == doctest::Approx(2.0 * M_PI * 1e9 * 1e-13).epsilon(1e-13));
    CHECK(np.rwa);
}
