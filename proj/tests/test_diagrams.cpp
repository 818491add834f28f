#include <doctest.h>

#include <algorithm>
#include <set>

#include "qed1d/diagrams.hpp"

using namespace qed1d;

namespace {

std::set<DiagramTopology> topologies(const std::vector<Diagram>& ds) {
    std::set<DiagramTopology> out;
    for (const auto& d : ds) out.insert(topology(d));
    return out;
}

} // namespace

TEST_CASE("detector self-excitation is the single order-1 route to ee1") {
    const auto full = enumerate_diagrams("ee1", 1, false);
    REQUIRE(full.size() == 1);
    const auto& v = full[0].vertices[0];
    CHECK(v.qubit == 'D');
    CHECK(v.raise_qubit);
    CHECK(v.create_photon);
    CHECK(v.counterrotating());
    CHECK(full[0].external_modes.size() == 1);
    CHECK(full[0].loop_modes.empty());

    CHECK(enumerate_diagrams("ee1", 1, true).empty()); // forbidden under RWA
}

TEST_CASE("photon exchange has a rotating and a counterrotating route") {
    const auto full = enumerate_diagrams("ge0", 2, false);
    REQUIRE(full.size() == 2);
    for (const auto& d : full) {
        CHECK(d.loop_modes.size() == 1);
        CHECK(d.external_modes.empty());
        CHECK(d.loop_endpoints(d.loop_modes[0]) == std::array<char, 2>{'D', 'S'});
    }
    // one of them proceeds through |gg1> (both vertices rotating), the other
    // through |ee1> (both counterrotating)
    int counterrotating_routes = 0;
    for (const auto& d : full)
        if (d.vertices[0].counterrotating()) ++counterrotating_routes;
    CHECK(counterrotating_routes == 1);

    const auto rwa = enumerate_diagrams("ge0", 2, true);
    REQUIRE(rwa.size() == 1);
    CHECK_FALSE(rwa[0].vertices[0].counterrotating());
}

TEST_CASE("order-3 corrections to ee1 group into the published topologies") {
    const auto ds = enumerate_diagrams("ee1", 3, false);
    CHECK(ds.size() == 12); // time orderings and contraction choices
    const auto tops = topologies(ds);
    REQUIRE(tops.size() == 3);
    // the two one-loop corrections and the exchange accompanied by an
    // emission at the source
    std::set<DiagramTopology> expect;
    expect.insert(DiagramTopology{{{'S', 'S'}}, "D"});
    expect.insert(DiagramTopology{{{'D', 'D'}}, "D"});
    expect.insert(DiagramTopology{{{'D', 'S'}}, "S"});
    CHECK(tops == expect);
    CHECK(enumerate_diagrams("ee1", 3, true).empty());
}

TEST_CASE("two-photon finals at order 2") {
    const auto b2 = enumerate_diagrams("ge2", 2, false);
    REQUIRE(b2.size() == 2); // both time orderings of the two emissions
    for (const auto& d : b2) {
        CHECK(d.external_modes.size() == 2);
        std::string emitters;
        for (int m : d.external_modes) emitters.push_back(d.emitter_of(m));
        std::sort(emitters.begin(), emitters.end());
        CHECK(emitters == "DS");
    }
    CHECK(enumerate_diagrams("ge2", 2, true).empty());

    const auto a2 = enumerate_diagrams("eg2", 2, false);
    REQUIRE(a2.size() == 2); // double emission at S, double emission at D
    std::set<std::string> emitter_pairs;
    for (const auto& d : a2) {
        std::string e;
        for (int m : d.external_modes) e.push_back(d.emitter_of(m));
        std::sort(e.begin(), e.end());
        emitter_pairs.insert(e);
    }
    CHECK(emitter_pairs == std::set<std::string>{"SS", "DD"});
}

TEST_CASE("vacuum persistence loops") {
    const auto i2 = enumerate_diagrams("eg0", 2, false);
    REQUIRE(i2.size() == 2);
    std::set<std::array<char, 2>> loops;
    for (const auto& d : i2) loops.insert(d.loop_endpoints(d.loop_modes[0]));
    CHECK(loops == std::set<std::array<char, 2>>{{'S', 'S'}, {'D', 'D'}});
    // the S loop is rotating (survives RWA), the D loop is not
    const auto i2_rwa = enumerate_diagrams("eg0", 2, true);
    REQUIRE(i2_rwa.size() == 1);
    CHECK(i2_rwa[0].loop_endpoints(i2_rwa[0].loop_modes[0]) == std::array<char, 2>{'S', 'S'});
}

TEST_CASE("RWA enumeration is a strict subset of the full enumeration") {
    auto signature = [](const Diagram& d) {
        std::string s;
        for (const auto& v : d.vertices) {
            s += v.qubit;
            s += v.raise_qubit ? '+' : '-';
            s += v.create_photon ? 'c' : 'a';
            s += static_cast<char>('0' + v.mode);
        }
        return s;
    };
    for (const auto& label : known_final_labels()) {
        for (int order = 1; order <= 3; ++order) {
            std::set<std::string> full, rwa;
            for (const auto& d : enumerate_diagrams(label, order, false)) full.insert(signature(d));
            for (const auto& d : enumerate_diagrams(label, order, true)) rwa.insert(signature(d));
            CHECK(std::includes(full.begin(), full.end(), rwa.begin(), rwa.end()));
            CHECK(rwa.size() <= full.size());
        }
    }
}

TEST_CASE("vertex counts, intermediate occupation, and validation") {
    for (const auto& label : known_final_labels()) {
        for (int order = 1; order <= 3; ++order) {
            for (const auto& d : enumerate_diagrams(label, order, false)) {
                CHECK(d.order() == order);
                CHECK(d.initial == "eg0");
                CHECK(d.final_label == label);
                // photons never go negative: replay earliest-first
                int in_flight = 0;
                for (const auto& v : d.time_ordered()) {
                    in_flight += v.create_photon ? 1 : -1;
                    CHECK(in_flight >= 0);
                }
                CHECK(in_flight == static_cast<int>(d.external_modes.size()));
            }
        }
    }
    CHECK_THROWS_AS(enumerate_diagrams("ee1", 4, false), UnsupportedOrder);
    CHECK_THROWS_AS(enumerate_diagrams("ee1", 0, false), UnsupportedOrder);
    CHECK_THROWS_AS(enumerate_diagrams("xx9", 2, false), Error);
}
