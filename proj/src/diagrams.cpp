#include "qed1d/diagrams.hpp"

#include <algorithm>

namespace qed1d {

int Diagram::coupling_sign() const {
    int sign = 1;
    for (const auto& v : vertices)
        if (!v.create_photon) sign = -sign;
    return sign;
}

std::array<char, 2> Diagram::loop_endpoints(int mode) const {
    std::array<char, 2> ends{'?', '?'};
    int n = 0;
    for (const auto& v : vertices)
        if (v.mode == mode) ends[n++] = v.qubit;
    std::sort(ends.begin(), ends.end());
    return ends;
}

char Diagram::emitter_of(int mode) const {
    for (const auto& v : vertices)
        if (v.mode == mode && v.create_photon) return v.qubit;
    return '?';
}

DiagramTopology topology(const Diagram& d) {
    DiagramTopology t;
    for (int m : d.loop_modes) t.loops.push_back(d.loop_endpoints(m));
    std::sort(t.loops.begin(), t.loops.end());
    for (int m : d.external_modes) t.emitters.push_back(d.emitter_of(m));
    std::sort(t.emitters.begin(), t.emitters.end());
    return t;
}

namespace {

struct FinalState {
    bool s_excited;
    bool d_excited;
    int photons;
};

FinalState parse_label(const std::string& label) {
    const auto& known = known_final_labels();
    if (std::find(known.begin(), known.end(), label) == known.end())
        throw Error("unknown final label: " + label);
    return FinalState{label[0] == 'e', label[1] == 'e', label[2] - '0'};
}

struct Enumerator {
    FinalState target;
    int order;
    bool rwa;
    std::vector<Diagram> out;

    std::vector<Vertex> seq; // earliest-first while recursing
    std::vector<int> in_flight;
    int next_mode = 0;

    void emit() {
        Diagram d;
        d.vertices.assign(seq.rbegin(), seq.rend());
        d.final_label = (target.s_excited ? "e" : "g");
        d.final_label += (target.d_excited ? "e" : "g");
        d.final_label += std::to_string(target.photons);
        for (int m = 0; m < next_mode; ++m) {
            const bool external =
                std::find(in_flight.begin(), in_flight.end(), m) != in_flight.end();
            (external ? d.external_modes : d.loop_modes).push_back(m);
        }
        out.push_back(std::move(d));
    }

    void step(bool s_exc, bool d_exc) {
        if (static_cast<int>(seq.size()) == order) {
            if (s_exc == target.s_excited && d_exc == target.d_excited &&
                static_cast<int>(in_flight.size()) == target.photons)
                emit();
            return;
        }
        for (char qubit : {'S', 'D'}) {
            const bool excited = (qubit == 'S') ? s_exc : d_exc;
            const bool raise = !excited; // sigma_x flips the current state
            const bool ns = (qubit == 'S') ? !s_exc : s_exc;
            const bool nd = (qubit == 'D') ? !d_exc : d_exc;
            // create a fresh mode
            if (!rwa || !raise) {
                seq.push_back(Vertex{qubit, raise, true, next_mode});
                in_flight.push_back(next_mode);
                ++next_mode;
                step(ns, nd);
                --next_mode;
                in_flight.pop_back();
                seq.pop_back();
            }
            // annihilate any photon currently present
            if (!rwa || raise) {
                for (std::size_t i = 0; i < in_flight.size(); ++i) {
                    const int m = in_flight[i];
                    seq.push_back(Vertex{qubit, raise, false, m});
                    in_flight.erase(in_flight.begin() + i);
                    step(ns, nd);
                    in_flight.insert(in_flight.begin() + i, m);
                    seq.pop_back();
                }
            }
        }
    }
};

} // namespace

namespace detail {

std::vector<Diagram> enumerate_unchecked(const std::string& final_label, int order, bool rwa_mode) {
    Enumerator e;
    e.target = parse_label(final_label);
    e.order = order;
    e.rwa = rwa_mode;
    e.step(/*s_exc=*/true, /*d_exc=*/false);
    return std::move(e.out);
}

} // namespace detail

std::vector<Diagram> enumerate_diagrams(const std::string& final_label, int order, bool rwa_mode) {
    if (order < 1 || order > 3) throw UnsupportedOrder(order);
    return detail::enumerate_unchecked(final_label, order, rwa_mode);
}

} // namespace qed1d
