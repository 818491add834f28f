// diagrams.hpp — time-ordered interaction diagrams of the Dyson expansion
//
// A diagram is an ordered sequence of interaction vertices taking |eg0> to a
// final label, with photon modes assigned symbolically: a mode created and
// later annihilated is an internal loop, a mode created and kept is an
// external photon of the final state. Enumeration is exhaustive over vertex
// sequences with nonzero matrix element; in rwa_mode the counterrotating
// vertex types are excluded.
#pragma once

#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "qed1d/errors.hpp"

namespace qed1d {

struct Vertex {
    char qubit = 'S';          // 'S' or 'D'
    bool raise_qubit = false;  // sigma^+ if true, sigma^- otherwise
    bool create_photon = true; // a^dag if true, a otherwise
    int mode = 0;              // symbolic mode tag; shared by contracted pairs

    bool counterrotating() const { return raise_qubit == create_photon; }
};

struct Diagram {
    std::vector<Vertex> vertices; // latest-time first
    std::string initial = "eg0";
    std::string final_label;
    std::vector<int> external_modes; // creation order
    std::vector<int> loop_modes;     // creation order

    int order() const { return static_cast<int>(vertices.size()); }
    std::vector<Vertex> time_ordered() const { return {vertices.rbegin(), vertices.rend()}; }
    // sign of the product of vertex coupling prefactors
    int coupling_sign() const;
    // qubits of the two vertices touching a loop mode, sorted
    std::array<char, 2> loop_endpoints(int mode) const;
    // qubit emitting a given external mode
    char emitter_of(int mode) const;
};

// Loop/emitter structure, ignoring time orderings and internal contraction
// choices; this is the granularity at which diagram figures are drawn.
struct DiagramTopology {
    std::vector<std::array<char, 2>> loops; // sorted per loop, then sorted
    std::string emitters;                   // external emitters, sorted

    bool operator==(const DiagramTopology&) const = default;
    bool operator<(const DiagramTopology& o) const {
        return std::tie(loops, emitters) < std::tie(o.loops, o.emitters);
    }
};

DiagramTopology topology(const Diagram& d);

inline const std::vector<std::string>& known_final_labels() {
    static const std::vector<std::string> labels = {"ge0", "gg1", "ee1", "eg2", "ge2", "eg0"};
    return labels;
}

// Every vertex sequence of the given order connecting |eg0> to the final
// label. Orders 1..3; UnsupportedOrder otherwise.
std::vector<Diagram> enumerate_diagrams(const std::string& final_label, int order, bool rwa_mode);

namespace detail {
// Unchecked enumeration used internally (vacuum persistence needs order 4).
std::vector<Diagram> enumerate_unchecked(const std::string& final_label, int order, bool rwa_mode);
} // namespace detail

} // namespace qed1d
