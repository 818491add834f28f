#include "qed1d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace qed1d {

namespace {

inline Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

// ---------------------------------------------------------------- nodes ---

struct GLRule {
    std::vector<double> x, w;
    std::vector<std::vector<double>> legendre; // legendre[m][i] = P_m(x_i)
};

const GLRule& gl_rule(int n) {
    static std::mutex mu;
    static std::map<int, GLRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GLRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int m = 2; m <= n; ++m) {
            const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.x[n - 1 - i] = x;
        rule.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    rule.legendre.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        rule.legendre[0][i] = 1.0;
        if (n > 1) rule.legendre[1][i] = rule.x[i];
        for (int m = 2; m < n; ++m)
            rule.legendre[m][i] = ((2 * m - 1) * rule.x[i] * rule.legendre[m - 1][i] -
                                   (m - 1) * rule.legendre[m - 2][i]) /
                                  m;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

// ------------------------------------------------------- Bessel moments ---

void bessel_series(int mmax, double x, double* out) {
    // j_m(x) ~ x^m / (2m+1)!! * (1 - x^2/(2(2m+3)) + ...)
    double dfact = 1.0, xp = 1.0;
    for (int m = 0; m <= mmax; ++m) {
        out[m] = xp / dfact * (1.0 - x * x / (2.0 * (2.0 * m + 3.0)));
        xp *= x;
        dfact *= 2.0 * m + 3.0;
    }
}

} // namespace

void spherical_bessel_array(int mmax, double x, double* out) {
    if (x < 1e-4) {
        bessel_series(mmax, x, out);
        return;
    }
    if (x > mmax + 12) {
        // upward recurrence is stable well below the turning point m ~ x
        double jm1 = std::sin(x) / x;
        out[0] = jm1;
        if (mmax == 0) return;
        double j0 = jm1;
        double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
        out[1] = j1;
        for (int m = 2; m <= mmax; ++m) {
            const double j2 = (2.0 * m - 1.0) / x * j1 - j0;
            out[m] = j2;
            j0 = j1;
            j1 = j2;
        }
        return;
    }
    // Miller's downward recurrence; normalize against whichever of j_0, j_1
    // is larger in magnitude (their zeros interlace, so one is always away
    // from zero)
    const int start = mmax + 16 + static_cast<int>(x);
    double fp = 0.0, fc = 1e-270;
    std::vector<double> tmp(mmax + 2, 0.0);
    for (int m = start; m >= 1; --m) {
        const double fm = (2.0 * m + 1.0) / x * fc - fp;
        fp = fc;
        fc = fm;
        if (m - 1 <= mmax + 1) tmp[m - 1] = fc;
        if (std::abs(fc) > 1e250) { // rescale to avoid overflow
            fp /= 1e250;
            fc /= 1e250;
            for (auto& v : tmp) v /= 1e250;
        }
    }
    const double j0c = std::sin(x) / x;
    const double j1c = std::sin(x) / (x * x) - std::cos(x) / x;
    const double scale = (std::abs(j0c) >= std::abs(j1c)) ? j0c / tmp[0] : j1c / tmp[1];
    for (int m = 0; m <= mmax; ++m) out[m] = tmp[m] * scale;
}

namespace {

// Legendre moments of the oscillation: M_m(theta) = int_{-1}^{1} P_m(x) e^{i theta x} dx
// = 2 i^m j_m(theta). Negative theta by conjugation.
void legendre_moments(int mmax, double theta, Complex* out) {
    const double t = std::abs(theta);
    std::vector<double> j(mmax + 1);
    spherical_bessel_array(mmax, t, j.data());
    Complex ipow{1.0, 0.0};
    for (int m = 0; m <= mmax; ++m) {
        Complex v = 2.0 * ipow * j[m];
        out[m] = (theta >= 0.0) ? v : std::conj(v);
        ipow *= Complex{0.0, 1.0};
    }
}

struct Panel {
    double a, b;
    int depth;
};

} // namespace

void ClassVals::add(int key, Complex v) {
    for (int i = 0; i < n_; ++i) {
        if (keys_[i] == key) {
            vals_[i] += v;
            return;
        }
    }
    if (n_ >= kCap) throw Error("ClassVals capacity exceeded");
    keys_[n_] = key;
    vals_[n_] = v;
    ++n_;
}

void ClassVals::add_all(const ClassVals& other, Complex factor) {
    for (int i = 0; i < other.n_; ++i) add(other.keys_[i], other.vals_[i] * factor);
}

Complex ClassVals::sum_plain() const {
    Complex acc{0.0, 0.0};
    for (int i = 0; i < n_; ++i) acc += vals_[i];
    return acc;
}

ClassVals integrate_osc(const std::function<void(double, ClassVals&)>& f,
                        double lo, double hi,
                        const OscRates& rates,
                        std::vector<double> criticals,
                        const OscOptions& opt) {
    ClassVals result;
    if (hi <= lo) return result;
    const GLRule& rule = gl_rule(opt.gl_order);
    const int n = opt.gl_order;
    const int mfit = n - 1;

    // resonance windows, clipped and merged
    std::sort(criticals.begin(), criticals.end());
    std::vector<std::pair<double, double>> windows;
    for (double c : criticals) {
        if (c < lo - opt.window_halfwidth || c > hi + opt.window_halfwidth) continue;
        double a = std::max(lo, c - opt.window_halfwidth);
        double b = std::min(hi, c + opt.window_halfwidth);
        if (!windows.empty() && a <= windows.back().second) {
            windows.back().second = std::max(windows.back().second, b);
        } else if (b > a) {
            windows.emplace_back(a, b);
        }
    }

    // direct Gauss over a window: panel phase change capped at pi/2 so the
    // rule is effectively exact on the recombined integrand
    ClassVals probe;
    auto integrate_window = [&](double a, double b) {
        const double cap = M_PI / (2.0 * (rates.max_rate() + 1.0)) * opt.cap_scale;
        const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / cap)));
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double pa = a + p * h;
            for (int i = 0; i < n; ++i) {
                const double nu = pa + 0.5 * h * (rule.x[i] + 1.0);
                probe.clear();
                f(nu, probe);
                for (int k = 0; k < probe.size(); ++k) {
                    const Complex v = probe.val(k) * cis(rates.rate(probe.key(k)) * nu);
                    result.add(osckey::spectator(probe.key(k)), 0.5 * h * rule.w[i] * v);
                }
            }
        }
    };

    // Filon panel: Legendre fit of each envelope class, exact oscillatory
    // moments; returns an error estimate from the coefficient tail
    std::vector<ClassVals> node_vals(n);
    auto filon_panel = [&](double a, double b, ClassVals& acc) -> double {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int i = 0; i < n; ++i) {
            node_vals[i].clear();
            f(c + h * rule.x[i], node_vals[i]);
        }
        // collect keys present on this panel
        int keys[ClassVals::kCap];
        int nkeys = 0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < node_vals[i].size(); ++k) {
                const int key = node_vals[i].key(k);
                bool seen = false;
                for (int q = 0; q < nkeys; ++q)
                    if (keys[q] == key) { seen = true; break; }
                if (!seen) keys[nkeys++] = key;
            }
        double err = 0.0;
        std::vector<Complex> moments(mfit + 1);
        for (int q = 0; q < nkeys; ++q) {
            const int key = keys[q];
            const double theta = rates.rate(key) * h;
            legendre_moments(mfit, theta, moments.data());
            // Legendre coefficients from the sampled envelope
            Complex coeff[64];
            for (int m = 0; m <= mfit; ++m) {
                Complex cm{0.0, 0.0};
                for (int i = 0; i < n; ++i) {
                    Complex v{0.0, 0.0};
                    for (int k = 0; k < node_vals[i].size(); ++k)
                        if (node_vals[i].key(k) == key) { v = node_vals[i].val(k); break; }
                    cm += rule.w[i] * rule.legendre[m][i] * v;
                }
                coeff[m] = cm * (2.0 * m + 1.0) / 2.0;
            }
            Complex integral{0.0, 0.0};
            for (int m = 0; m <= mfit; ++m) integral += coeff[m] * moments[m];
            integral *= h * cis(rates.rate(key) * c);
            acc.add(osckey::spectator(key), integral);
            // tail of the coefficient sequence bounds the fit error
            err += h * (std::abs(coeff[mfit]) + std::abs(coeff[mfit - 1]) +
                        0.5 * std::abs(coeff[mfit - 2]));
        }
        return err;
    };

    const double total_len = hi - lo;
    auto integrate_smooth = [&](double a, double b) {
        if (b - a <= 0.0) return;
        std::vector<Panel> stack;
        // initial panels: unit scale through the structured region, geometric
        // growth in the tail where envelopes vary on scale nu
        double pos = a;
        while (pos < b) {
            double width;
            if (pos < opt.structured_end) {
                width = std::min(1.0 * opt.cap_scale, b - pos);
            } else {
                width = std::min((opt.geometric_ratio - 1.0) * opt.cap_scale * pos, b - pos);
            }
            stack.push_back({pos, std::min(pos + width, b), 0});
            pos += width;
        }
        while (!stack.empty()) {
            Panel p = stack.back();
            stack.pop_back();
            ClassVals acc;
            const double err = filon_panel(p.a, p.b, acc);
            const double budget = std::max(opt.abs_tol * (p.b - p.a) / total_len, opt.abs_tol / 16.0);
            if (err <= budget || p.depth >= opt.max_depth) {
                if (err > opt.abs_tol && p.depth >= opt.max_depth)
                    throw QuadratureNotConverged(
                        "mode-sum panel refinement exhausted at depth " + std::to_string(p.depth) +
                        " on [" + std::to_string(p.a) + ", " + std::to_string(p.b) +
                        "], err " + std::to_string(err));
                for (int k = 0; k < acc.size(); ++k) result.add(acc.key(k), acc.val(k));
            } else {
                const double mid = 0.5 * (p.a + p.b);
                stack.push_back({p.a, mid, p.depth + 1});
                stack.push_back({mid, p.b, p.depth + 1});
            }
        }
    };

    double cursor = lo;
    for (const auto& w : windows) {
        integrate_smooth(cursor, w.first);
        integrate_window(w.first, w.second);
        cursor = w.second;
    }
    integrate_smooth(cursor, hi);
    return result;
}

Complex integrate_osc_scalar(const std::function<void(double, ClassVals&)>& f,
                             double lo, double hi,
                             const OscRates& rates,
                             std::vector<double> criticals,
                             const OscOptions& opt) {
    return integrate_osc(f, lo, hi, rates, std::move(criticals), opt).sum_plain();
}

namespace {

double gl_fixed(const std::function<double(double)>& f, double a, double b, int n) {
    const GLRule& rule = gl_rule(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.w[i] * f(c + h * rule.x[i]);
    return acc * h;
}

double gl_adapt(const std::function<double(double)>& f, double a, double b, double tol,
                int depth, int max_depth) {
    const double coarse = gl_fixed(f, a, b, 12);
    const double mid = 0.5 * (a + b);
    const double fine = gl_fixed(f, a, mid, 12) + gl_fixed(f, mid, b, 12);
    if (std::abs(fine - coarse) <= tol * (1.0 + std::abs(fine)) || depth >= max_depth)
        return fine;
    return gl_adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           gl_adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double integrate_gl(const std::function<double(double)>& f, double lo, double hi,
                    double rel_tol, int max_depth) {
    if (hi <= lo) return 0.0;
    return gl_adapt(f, lo, hi, rel_tol, 0, max_depth);
}

void gauss_legendre(int n, const double** nodes, const double** weights) {
    const GLRule& rule = gl_rule(n);
    *nodes = rule.x.data();
    *weights = rule.w.data();
}

} // namespace qed1d
