#include "qed1d/exppoly.hpp"

#include <algorithm>
#include <cmath>

namespace qed1d {

namespace {

// exp(i x) via sincos keeps the hot path cheap.
inline Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

inline bool same_freq(double a, double b) {
    return std::abs(a - b) <= kSecularFreqEps * (1.0 + std::max(std::abs(a), std::abs(b)));
}

} // namespace

void ExpPoly::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const ExpPolyTerm& a, const ExpPolyTerm& b) {
        if (a.dirs != b.dirs) return a.dirs < b.dirs;
        if (a.power != b.power) return a.power < b.power;
        return a.freq < b.freq;
    });
    std::vector<ExpPolyTerm> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty()) {
            auto& last = merged.back();
            if (last.dirs == t.dirs && last.power == t.power && same_freq(last.freq, t.freq)) {
                last.coeff += t.coeff;
                continue;
            }
        }
        merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const ExpPolyTerm& t) { return t.coeff == Complex{0.0, 0.0}; }),
                 merged.end());
    terms_ = std::move(merged);
}

Complex ExpPoly::eval(double tau) const {
    Complex acc{0.0, 0.0};
    for (const auto& t : terms_) {
        double tp = 1.0;
        for (int j = 0; j < t.power; ++j) tp *= tau;
        acc += t.coeff * tp * cis(t.freq * tau);
    }
    return acc;
}

Complex ExpPoly::eval_class(double tau, std::array<int, 2> cls, double nu0, double nu1) const {
    Complex acc{0.0, 0.0};
    for (const auto& t : terms_) {
        if (t.dirs != cls) continue;
        double tp = 1.0;
        for (int j = 0; j < t.power; ++j) tp *= tau;
        const double residual = t.freq - cls[0] * nu0 - cls[1] * nu1;
        acc += t.coeff * tp * cis(residual * tau);
    }
    return acc;
}

ExpPoly ExpPoly::shifted(double freq, std::array<int, 2> dirs) const {
    ExpPoly out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) {
        t.freq += freq;
        t.dirs = {t.dirs[0] + dirs[0], t.dirs[1] + dirs[1]};
    }
    out.canonicalize();
    return out;
}

ExpPoly ExpPoly::operator+(const ExpPoly& other) const {
    ExpPoly out;
    out.terms_ = terms_;
    out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
    out.canonicalize();
    return out;
}

ExpPoly& ExpPoly::operator*=(Complex c) {
    for (auto& t : terms_) t.coeff *= c;
    canonicalize();
    return *this;
}

std::vector<std::array<int, 2>> ExpPoly::classes() const {
    std::vector<std::array<int, 2>> out;
    for (const auto& t : terms_) {
        if (std::find(out.begin(), out.end(), t.dirs) == out.end()) out.push_back(t.dirs);
    }
    return out;
}

ExpPoly exppoly_integrate(const ExpPoly& p) {
    std::vector<ExpPolyTerm> out;
    out.reserve(p.terms().size() * 3);
    for (const auto& t : p.terms()) {
        if (std::abs(t.freq) < kSecularFreqEps) {
            // secular branch: integral of c tau^p is c tau^(p+1)/(p+1);
            // the result does not oscillate, so it carries no direction tag
            out.push_back(
                ExpPolyTerm{t.coeff / double(t.power + 1), t.power + 1, 0.0, {0, 0}});
            continue;
        }
        // integral of tau^p exp(i w tau) by repeated parts:
        //   exp(i w tau) * sum_{j=0..p} (-1)^(p-j) p!/j! tau^j / (i w)^(p-j+1)
        // minus the same expression at tau = 0 (only the j = 0 piece survives).
        const Complex iw{0.0, t.freq};
        double fact = 1.0; // p! / j!, built downward from j = p
        Complex denom = iw;
        for (int j = t.power; j >= 0; --j) {
            const double sign = ((t.power - j) % 2 == 0) ? 1.0 : -1.0;
            out.push_back(ExpPolyTerm{t.coeff * sign * fact / denom, j, t.freq, t.dirs});
            if (j > 0) {
                fact *= j;
                denom *= iw;
            }
        }
        // boundary value at tau = 0: a true constant, no direction tag
        const double sign0 = (t.power % 2 == 0) ? 1.0 : -1.0;
        out.push_back(ExpPolyTerm{-t.coeff * sign0 * fact / denom, 0, 0.0, {0, 0}});
    }
    ExpPoly q;
    q.terms_ = std::move(out);
    q.canonicalize();
    return q;
}

} // namespace qed1d
