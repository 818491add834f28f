#include "qed1d/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qed1d/exppoly.hpp"

namespace qed1d {

namespace {

inline Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

// ------------------------------------------------ classed-value algebra ---

int key_conj(int k) {
    int out = 0;
    for (int shift = 0; shift < 16; shift += 4) out |= (8 - ((k >> shift) & 0xF)) << shift;
    return out;
}

int key_add(int k1, int k2) {
    int out = 0;
    for (int shift = 0; shift < 16; shift += 4) {
        const int v = ((k1 >> shift) & 0xF) + ((k2 >> shift) & 0xF) - 4;
        if (v < 0 || v > 15) throw Error("oscillation key out of range");
        out |= v << shift;
    }
    return out;
}

ClassVals cv_conj(const ClassVals& a) {
    ClassVals out;
    for (int i = 0; i < a.size(); ++i) out.add(key_conj(a.key(i)), std::conj(a.val(i)));
    return out;
}

ClassVals cv_mul(const ClassVals& a, const ClassVals& b) {
    ClassVals out;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            out.add(key_add(a.key(i), b.key(j)), a.val(i) * b.val(j));
    return out;
}

// multiply by 2 cos(nu_dim * phi) = e^{+i nu phi} + e^{-i nu phi}
ClassVals cv_mul_2cos(const ClassVals& a, int dim) {
    const int delta = (dim == 0) ? (1 << 4) : (1 << 12);
    ClassVals out;
    for (int i = 0; i < a.size(); ++i) {
        out.add(a.key(i) + delta, a.val(i));
        out.add(a.key(i) - delta, a.val(i));
    }
    return out;
}

ClassVals cv_spectator_as_dim0(const ClassVals& a) {
    ClassVals out;
    for (int i = 0; i < a.size(); ++i) out.add(osckey::spectator_to_dim0(a.key(i)), a.val(i));
    return out;
}

// ------------------------------------------------- diagram evaluation -----

// linear form c + k0 nu0 + k1 nu1; roots mark resonances of the integrands
struct Lin {
    double c, k0, k1;
};

struct DiagCtx {
    struct V {
        double qubit_freq;
        int photon_sign;
        int dim;
    };
    std::vector<V> verts; // earliest-first
    double prefactor = 1.0; // sign * product of couplings g_A
    struct Loop {
        int dim;
        bool cross; // endpoints on different qubits
    };
    std::vector<Loop> loops;
    struct Ext {
        int dim;
        char emitter;
    };
    std::vector<Ext> exts;
    std::vector<Lin> lins;
};

DiagCtx make_ctx(const Diagram& d, const NaturalParams& np, const int* dim_of_mode) {
    DiagCtx ctx;
    ctx.prefactor = d.coupling_sign();
    for (const auto& v : d.time_ordered()) {
        ctx.prefactor *= (v.qubit == 'S') ? 0.5 * std::sqrt(np.k_s) : 0.5 * std::sqrt(np.k_d);
        DiagCtx::V vv;
        vv.qubit_freq = (v.raise_qubit ? 1.0 : -1.0) * (v.qubit == 'S' ? 1.0 : np.mu);
        vv.photon_sign = v.create_photon ? 1 : -1;
        vv.dim = dim_of_mode[v.mode];
        ctx.verts.push_back(vv);
    }
    for (int m : d.loop_modes) {
        const auto ends = d.loop_endpoints(m);
        ctx.loops.push_back({dim_of_mode[m], ends[0] != ends[1]});
    }
    for (int m : d.external_modes) ctx.exts.push_back({dim_of_mode[m], d.emitter_of(m)});
    const int n = static_cast<int>(ctx.verts.size());
    for (int i = 0; i < n; ++i) {
        Lin acc{0.0, 0.0, 0.0};
        for (int j = i; j < n; ++j) {
            acc.c += ctx.verts[j].qubit_freq;
            if (ctx.verts[j].dim == 0) acc.k0 += ctx.verts[j].photon_sign;
            if (ctx.verts[j].dim == 1) acc.k1 += ctx.verts[j].photon_sign;
            ctx.lins.push_back(acc);
        }
    }
    return ctx;
}

// exact nested time integral, decomposed by mode oscillation direction
ClassVals eval_T_classed(const DiagCtx& ctx, double nu0, double nu1, double tau) {
    ExpPoly p;
    bool first = true;
    for (const auto& v : ctx.verts) {
        const double nu = (v.dim == 0) ? nu0 : (v.dim == 1 ? nu1 : 0.0);
        const double alpha = v.qubit_freq + v.photon_sign * nu;
        std::array<int, 2> dirs{0, 0};
        if (v.dim >= 0) dirs[v.dim] = v.photon_sign;
        if (first) {
            p = ExpPoly::unit_exponential(alpha, dirs);
            first = false;
        } else {
            p = p.shifted(alpha, dirs);
        }
        p = exppoly_integrate(p);
    }
    ClassVals out;
    for (const auto& t : p.terms()) {
        double tp = 1.0;
        for (int j = 0; j < t.power; ++j) tp *= tau;
        const double resid = t.freq - t.dirs[0] * nu0 - t.dirs[1] * nu1;
        out.add(osckey::pack(t.dirs[0], 0, t.dirs[1], 0), t.coeff * tp * cis(resid * tau));
    }
    return out;
}

void criticals_dim0(const std::vector<DiagCtx>& ctxs, double nu1, double lo, double hi,
                    std::vector<double>& out) {
    for (const auto& ctx : ctxs)
        for (const auto& L : ctx.lins) {
            if (L.k0 == 0.0) continue;
            const double root = -(L.c + L.k1 * nu1) / L.k0;
            if (root > lo && root < hi) out.push_back(root);
        }
}

// dim-1 points where the dim-0 resonance layout degenerates: direct dim-1
// resonances, inner roots crossing nu0 = 0, and pairwise pinches
void criticals_dim1(const std::vector<DiagCtx>& ctxs, double lo, double hi, double numax,
                    std::vector<double>& out) {
    std::vector<Lin> lins;
    for (const auto& ctx : ctxs) lins.insert(lins.end(), ctx.lins.begin(), ctx.lins.end());
    for (const auto& L : lins) {
        if (L.k1 == 0.0) continue;
        const double root = -L.c / L.k1;
        if (root > lo && root < hi) out.push_back(root);
    }
    for (std::size_t i = 0; i < lins.size(); ++i)
        for (std::size_t j = i + 1; j < lins.size(); ++j) {
            const double det = lins[i].k0 * lins[j].k1 - lins[i].k1 * lins[j].k0;
            if (std::abs(det) < 1e-12) continue;
            const double x = (-lins[i].c * lins[j].k1 + lins[j].c * lins[i].k1) / det;
            const double y = (-lins[j].c * lins[i].k0 + lins[i].c * lins[j].k0) / det;
            if (x > 0.0 && x < numax && y > lo && y < hi) out.push_back(y);
        }
}

double form_factor(double nu, double theta0) { return std::exp(-0.5 * nu * theta0); }

OscOptions osc_opts(const EngineOptions& opt, double tol_scale) {
    OscOptions oo;
    oo.abs_tol = opt.quad_tol * tol_scale;
    oo.gl_order = opt.gl_order;
    oo.cap_scale = opt.cap_scale;
    return oo;
}

void check_tau(double tau) {
    if (tau < 0.0) throw Error("tau must be non-negative");
}

// ----------------------------------------------- loop-only amplitudes -----

// X and I^(2): one internal loop, no external photons
Complex loop_only_amplitude(const std::string& label, const NaturalParams& np, double tau,
                            const EngineOptions& opt) {
    check_tau(tau);
    if (tau == 0.0) return {0.0, 0.0};
    const auto diags = detail::enumerate_unchecked(label, 2, np.rwa);
    std::vector<DiagCtx> ctxs;
    for (const auto& d : diags) {
        const int dims[1] = {0};
        ctxs.push_back(make_ctx(d, np, dims));
    }
    if (ctxs.empty()) return {0.0, 0.0};
    const double numax = nu_max(np, opt);
    std::vector<double> crit;
    criticals_dim0(ctxs, 0.0, 0.0, numax, crit);
    const OscRates rates{tau, np.phi};
    auto f = [&](double nu, ClassVals& out) {
        const double w = nu * std::exp(-nu * np.theta0);
        for (const auto& ctx : ctxs) {
            ClassVals t = eval_T_classed(ctx, nu, 0.0, tau);
            t.scale(ctx.prefactor * w);
            if (ctx.loops[0].cross) {
                t = cv_mul_2cos(t, 0);
            } else {
                t.scale(2.0);
            }
            out.add_all(t, 1.0);
        }
    };
    return integrate_osc_scalar(f, 0.0, numax, rates, crit, osc_opts(opt, 0.5));
}

// ------------------------------------- single-photon sector (A1 / B1) -----

struct SinglePhotonPlan {
    char leading_emitter;
    std::vector<DiagCtx> lead;  // order 1; dim0 = external mode
    std::vector<DiagCtx> corr;  // order 3; dim0 = loop, dim1 = external
    std::vector<double> outer_crit;
    double numax;
    OscRates rates;
    NaturalParams np;
    EngineOptions opt;
    double tau;
};

SinglePhotonPlan make_single_photon_plan(const std::string& label, const NaturalParams& np,
                                         double tau, bool corrections, const EngineOptions& opt) {
    SinglePhotonPlan plan;
    plan.leading_emitter = (label == "ee1") ? 'D' : 'S';
    plan.np = np;
    plan.opt = opt;
    plan.tau = tau;
    plan.numax = nu_max(np, opt);
    plan.rates = OscRates{tau, np.phi};
    for (const auto& d : detail::enumerate_unchecked(label, 1, np.rwa)) {
        const int dims[1] = {0};
        plan.lead.push_back(make_ctx(d, np, dims));
    }
    if (corrections) {
        for (const auto& d : detail::enumerate_unchecked(label, 3, np.rwa)) {
            int dims[2] = {-1, -1};
            dims[d.loop_modes[0]] = 0;
            dims[d.external_modes[0]] = 1;
            plan.corr.push_back(make_ctx(d, np, dims));
        }
    }
    // outer layout: leading resonances plus degeneracies of the inner loop
    std::vector<DiagCtx> lead_as_outer = plan.lead;
    criticals_dim0(lead_as_outer, 0.0, 0.0, plan.numax, plan.outer_crit);
    criticals_dim1(plan.corr, 0.0, plan.numax, plan.numax, plan.outer_crit);
    return plan;
}

// leading per-mode amplitude (couplings included, spatial fold not)
ClassVals leading_cv(const SinglePhotonPlan& plan, double nu) {
    ClassVals acc;
    const double w = std::sqrt(nu) * form_factor(nu, plan.np.theta0);
    for (const auto& ctx : plan.lead) {
        ClassVals t = eval_T_classed(ctx, nu, 0.0, plan.tau);
        t.scale(ctx.prefactor * w);
        acc.add_all(t, 1.0);
    }
    return acc;
}

// order-3 correction at external mode nu_e, split by emitter; loop integrated.
// Spatial folds relative to the leading emitter are baked in when fold=true.
void corrections_cv(const SinglePhotonPlan& plan, double nu_e, bool fold, ClassVals& out_same,
                    ClassVals& out_cross) {
    if (plan.corr.empty()) return;
    std::vector<double> crit;
    criticals_dim0(plan.corr, nu_e, 0.0, plan.numax, crit);
    const OscOptions oo = osc_opts(plan.opt, 1e-3);
    const double we = std::sqrt(nu_e) * form_factor(nu_e, plan.np.theta0);
    auto run = [&](bool want_same) {
        auto f = [&](double nu_l, ClassVals& out) {
            const double w = nu_l * std::exp(-nu_l * plan.np.theta0);
            for (const auto& ctx : plan.corr) {
                const bool same = (ctx.exts[0].emitter == plan.leading_emitter);
                if (same != want_same) continue;
                ClassVals t = eval_T_classed(ctx, nu_l, nu_e, plan.tau);
                t.scale(ctx.prefactor * w);
                if (ctx.loops[0].cross) {
                    t = cv_mul_2cos(t, 0);
                } else {
                    t.scale(2.0);
                }
                if (fold) {
                    if (same) {
                        t.scale(2.0);
                    } else {
                        t = cv_mul_2cos(t, 1);
                    }
                }
                out.add_all(t, 1.0);
            }
        };
        ClassVals buckets;
        try {
            buckets = integrate_osc(f, 0.0, plan.numax, plan.rates, crit, oo);
        } catch (const QuadratureNotConverged& e) {
            throw QuadratureNotConverged(std::string(e.what()) + " [inner loop at nu_e = " +
                                         std::to_string(nu_e) + "]");
        }
        buckets.scale(we);
        return cv_spectator_as_dim0(buckets);
    };
    out_same = run(true);
    out_cross = run(false);
}

double corrected_mode_sum(const std::string& label, const NaturalParams& np, double tau,
                          bool corrections, const EngineOptions& opt) {
    check_tau(tau);
    if (tau == 0.0) return 0.0;
    SinglePhotonPlan plan = make_single_photon_plan(label, np, tau, corrections, opt);
    if (plan.lead.empty()) return 0.0;
    auto f = [&](double nu, ClassVals& out) {
        const ClassVals lead = leading_cv(plan, nu);
        ClassVals sq = cv_mul(cv_conj(lead), lead);
        out.add_all(sq, 2.0);
        if (!plan.corr.empty()) {
            ClassVals c_same, c_cross;
            corrections_cv(plan, nu, /*fold=*/true, c_same, c_cross);
            ClassVals ctot = c_same;
            ctot.add_all(c_cross, 1.0);
            const ClassVals m = cv_mul(cv_conj(lead), ctot);
            out.add_all(m, 1.0);
            out.add_all(cv_conj(m), 1.0);
        }
    };
    const Complex total = integrate_osc_scalar(f, 0.0, plan.numax, plan.rates, plan.outer_crit,
                                               osc_opts(opt, 0.5));
    return total.real();
}

// -------------------------------------------- two-photon sector plans -----

struct EmissionProfile {
    // a(nu) = g sqrt(nu) f(nu) T1(lead_freq + nu); used by B2's factorization
    DiagCtx ctx;
    double g = 0.0;
};

// B2 components: rotating emission at S, counterrotating emission at D.
// The time-ordered double integral over commuting vertices factorizes into
// the product of the two single-vertex integrals.
bool b2_profiles(const NaturalParams& np, EmissionProfile& at_s, EmissionProfile& at_d) {
    if (np.rwa) return false;
    if (np.k_s == 0.0 || np.k_d == 0.0) return false;
    const auto a1 = detail::enumerate_unchecked("gg1", 1, np.rwa);
    const auto b1 = detail::enumerate_unchecked("ee1", 1, np.rwa);
    if (a1.empty() || b1.empty()) return false;
    const int dims[1] = {0};
    at_s.ctx = make_ctx(a1[0], np, dims);
    at_d.ctx = make_ctx(b1[0], np, dims);
    return true;
}

} // namespace

// ---------------------------------------------------------- public ops ----

Complex amplitude_exchange_X(const NaturalParams& np, double tau, const EngineOptions& opt) {
    return loop_only_amplitude("ge0", np, tau, opt);
}

double sum_A1_sq(const NaturalParams& np, double tau, bool corrections, const EngineOptions& opt) {
    return corrected_mode_sum("gg1", np, tau, corrections, opt);
}

double sum_B1_sq(const NaturalParams& np, double tau, bool corrections, const EngineOptions& opt) {
    return corrected_mode_sum("ee1", np, tau, corrections, opt);
}

double sum_B2_sq(const NaturalParams& np, double tau, const EngineOptions& opt) {
    check_tau(tau);
    if (tau == 0.0) return 0.0;
    EmissionProfile at_s, at_d;
    if (!b2_profiles(np, at_s, at_d)) return 0.0;
    const double numax = nu_max(np, opt);
    const OscRates rates{tau, np.phi};
    const OscOptions oo = osc_opts(opt, 0.3);
    std::vector<double> crit;
    {
        std::vector<DiagCtx> cs{at_s.ctx, at_d.ctx};
        criticals_dim0(cs, 0.0, 0.0, numax, crit);
    }
    auto profile = [&](const DiagCtx& ctx, double nu) {
        ClassVals t = eval_T_classed(ctx, nu, 0.0, tau);
        t.scale(ctx.prefactor * std::sqrt(nu) * form_factor(nu, np.theta0));
        return t;
    };
    auto f_sq_s = [&](double nu, ClassVals& out) {
        const ClassVals a = profile(at_s.ctx, nu);
        out.add_all(cv_mul(cv_conj(a), a), 1.0);
    };
    auto f_sq_d = [&](double nu, ClassVals& out) {
        const ClassVals b = profile(at_d.ctx, nu);
        out.add_all(cv_mul(cv_conj(b), b), 1.0);
    };
    auto f_cross = [&](double nu, ClassVals& out) {
        const ClassVals a = profile(at_s.ctx, nu);
        const ClassVals b = profile(at_d.ctx, nu);
        out.add_all(cv_mul_2cos(cv_mul(a, cv_conj(b)), 0), 1.0);
    };
    const double ia = integrate_osc_scalar(f_sq_s, 0.0, numax, rates, crit, oo).real();
    const double ib = integrate_osc_scalar(f_sq_d, 0.0, numax, rates, crit, oo).real();
    const Complex c = integrate_osc_scalar(f_cross, 0.0, numax, rates, crit, oo);
    return 4.0 * ia * ib + std::norm(c);
}

double sum_A2_sq(const NaturalParams& np, double tau, const EngineOptions& opt) {
    check_tau(tau);
    if (tau == 0.0) return 0.0;
    const auto diags = detail::enumerate_unchecked("eg2", 2, np.rwa);
    if (diags.empty()) return 0.0;
    // both mode-to-argument assignments, so channel values are symmetric sums
    std::vector<DiagCtx> s_ctx, d_ctx;
    for (const auto& d : diags) {
        for (int swap = 0; swap < 2; ++swap) {
            int dims[2];
            dims[d.external_modes[0]] = swap;
            dims[d.external_modes[1]] = 1 - swap;
            auto ctx = make_ctx(d, np, dims);
            (ctx.exts[0].emitter == 'S' ? s_ctx : d_ctx).push_back(std::move(ctx));
        }
    }
    const double numax = nu_max(np, opt);
    const OscRates rates{tau, np.phi};
    const OscOptions inner_oo = osc_opts(opt, 1e-3);
    const OscOptions outer_oo = osc_opts(opt, 0.5);
    std::vector<DiagCtx> all_ctx = s_ctx;
    all_ctx.insert(all_ctx.end(), d_ctx.begin(), d_ctx.end());
    std::vector<double> outer_crit;
    criticals_dim1(all_ctx, 0.0, numax, numax, outer_crit);

    auto channel = [&](const std::vector<DiagCtx>& ctxs, double nu0, double nu1) {
        ClassVals acc;
        const double w = std::sqrt(nu0 * nu1) * form_factor(nu0, np.theta0) *
                         form_factor(nu1, np.theta0);
        for (const auto& ctx : ctxs) {
            ClassVals t = eval_T_classed(ctx, nu0, nu1, tau);
            t.scale(ctx.prefactor * w);
            acc.add_all(t, 1.0);
        }
        return acc;
    };
    auto f_outer = [&](double nu1, ClassVals& out) {
        std::vector<double> crit;
        criticals_dim0(all_ctx, nu1, 0.0, numax, crit);
        auto f_inner = [&](double nu0, ClassVals& o) {
            const ClassVals s = channel(s_ctx, nu0, nu1);
            const ClassVals d = channel(d_ctx, nu0, nu1);
            o.add_all(cv_mul(cv_conj(s), s), 2.0);
            o.add_all(cv_mul(cv_conj(d), d), 2.0);
            ClassVals g = cv_mul(s, cv_conj(d));
            g.add_all(cv_conj(g), 1.0);
            g.scale(0.5);
            o.add_all(cv_mul_2cos(cv_mul_2cos(g, 0), 1), 1.0);
        };
        ClassVals inner = integrate_osc(f_inner, 0.0, numax, rates, crit, inner_oo);
        out.add_all(cv_spectator_as_dim0(inner), 1.0);
    };
    return integrate_osc_scalar(f_outer, 0.0, numax, rates, outer_crit, outer_oo).real();
}

Complex vacuum_amplitude(const NaturalParams& np, double tau, bool fourth_order,
                         const EngineOptions& opt) {
    check_tau(tau);
    Complex total{1.0, 0.0};
    if (tau == 0.0) return total;
    total += loop_only_amplitude("eg0", np, tau, opt);
    if (!fourth_order) return total;

    const auto diags = detail::enumerate_unchecked("eg0", 4, np.rwa);
    if (diags.empty()) return total;
    std::vector<DiagCtx> ctxs;
    for (const auto& d : diags) {
        int dims[4] = {-1, -1, -1, -1};
        dims[d.loop_modes[0]] = 1; // first-created loop integrates outermost
        dims[d.loop_modes[1]] = 0;
        ctxs.push_back(make_ctx(d, np, dims));
    }
    const double numax = nu_max(np, opt);
    const OscRates rates{tau, np.phi};
    const OscOptions inner_oo = osc_opts(opt, 1e-3);
    const OscOptions outer_oo = osc_opts(opt, 0.5);
    std::vector<double> outer_crit;
    criticals_dim1(ctxs, 0.0, numax, numax, outer_crit);
    auto f_outer = [&](double nu1, ClassVals& out) {
        std::vector<double> crit;
        criticals_dim0(ctxs, nu1, 0.0, numax, crit);
        auto f_inner = [&](double nu0, ClassVals& o) {
            const double w = nu0 * std::exp(-nu0 * np.theta0);
            for (const auto& ctx : ctxs) {
                ClassVals t = eval_T_classed(ctx, nu0, nu1, tau);
                t.scale(ctx.prefactor * w);
                for (const auto& loop : ctx.loops) {
                    if (loop.cross) {
                        t = cv_mul_2cos(t, loop.dim);
                    } else {
                        t.scale(2.0);
                    }
                }
                o.add_all(t, 1.0);
            }
        };
        ClassVals inner = integrate_osc(f_inner, 0.0, numax, rates, crit, inner_oo);
        inner.scale(nu1 * std::exp(-nu1 * np.theta0));
        out.add_all(cv_spectator_as_dim0(inner), 1.0);
    };
    total += integrate_osc_scalar(f_outer, 0.0, numax, rates, outer_crit, outer_oo);
    return total;
}

// ------------------------------------------------------------- grids ------

namespace {

void make_grid_nodes(const NaturalParams& np, double tau, const EngineOptions& opt,
                     std::vector<double>& omega, std::vector<double>& weight) {
    const double numax = nu_max(np, opt);
    const double cap = M_PI / (tau + np.theta0 + 1.0) * opt.cap_scale;
    const std::size_t panels = static_cast<std::size_t>(std::ceil(numax / cap));
    if (panels * opt.gl_order > 4000000)
        throw Error("amplitude grid would exceed 4e6 nodes; use the scalar mode sums instead");
    const double* gx;
    const double* gw;
    gauss_legendre(opt.gl_order, &gx, &gw);
    const double h = numax / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = p * h;
        for (int i = 0; i < opt.gl_order; ++i) {
            omega.push_back(a + 0.5 * h * (gx[i] + 1.0));
            weight.push_back(0.5 * h * gw[i]);
        }
    }
}

AmplitudeGrid single_photon_grid(const std::string& label, const NaturalParams& np, double tau,
                                 bool corrections, const EngineOptions& opt) {
    check_tau(tau);
    AmplitudeGrid grid;
    grid.theta0 = np.theta0;
    grid.phi = np.phi;
    grid.leading_emitter = (label == "ee1") ? 'D' : 'S';
    make_grid_nodes(np, tau, opt, grid.omega, grid.weight);
    grid.leading.assign(grid.omega.size(), Complex{0.0, 0.0});
    if (corrections) {
        grid.corr_same.assign(grid.omega.size(), Complex{0.0, 0.0});
        grid.corr_cross.assign(grid.omega.size(), Complex{0.0, 0.0});
    }
    if (tau == 0.0) return grid;
    SinglePhotonPlan plan = make_single_photon_plan(label, np, tau, corrections, opt);
    if (plan.lead.empty() && plan.corr.empty()) return grid;
    for (std::size_t i = 0; i < grid.omega.size(); ++i) {
        const double nu = grid.omega[i];
        const ClassVals lead = leading_cv(plan, nu);
        Complex lv{0.0, 0.0};
        for (int k = 0; k < lead.size(); ++k)
            lv += lead.val(k) * cis(plan.rates.rate(lead.key(k)) * nu);
        grid.leading[i] = lv;
        if (corrections && !plan.corr.empty()) {
            ClassVals c_same, c_cross;
            corrections_cv(plan, nu, /*fold=*/false, c_same, c_cross);
            Complex vs{0.0, 0.0}, vx{0.0, 0.0};
            for (int k = 0; k < c_same.size(); ++k)
                vs += c_same.val(k) * cis(plan.rates.rate(c_same.key(k)) * nu);
            for (int k = 0; k < c_cross.size(); ++k)
                vx += c_cross.val(k) * cis(plan.rates.rate(c_cross.key(k)) * nu);
            grid.corr_same[i] = vs;
            grid.corr_cross[i] = vx;
        }
    }
    return grid;
}

} // namespace

AmplitudeGrid amplitude_A1(const NaturalParams& np, double tau, bool include_corrections,
                           const EngineOptions& opt) {
    return single_photon_grid("gg1", np, tau, include_corrections, opt);
}

AmplitudeGrid amplitude_B1(const NaturalParams& np, double tau, bool include_corrections,
                           const EngineOptions& opt) {
    return single_photon_grid("ee1", np, tau, include_corrections, opt);
}

PairGrid amplitude_B2(const NaturalParams& np, double tau, const EngineOptions& opt) {
    check_tau(tau);
    PairGrid grid;
    grid.kind = PairGrid::Kind::factorized;
    grid.theta0 = np.theta0;
    grid.phi = np.phi;
    make_grid_nodes(np, tau, opt, grid.omega, grid.weight);
    grid.chan_s.assign(grid.omega.size(), Complex{0.0, 0.0});
    grid.chan_d.assign(grid.omega.size(), Complex{0.0, 0.0});
    EmissionProfile at_s, at_d;
    if (tau == 0.0 || !b2_profiles(np, at_s, at_d)) return grid;
    for (std::size_t i = 0; i < grid.omega.size(); ++i) {
        const double nu = grid.omega[i];
        const double w = std::sqrt(nu) * form_factor(nu, np.theta0);
        ClassVals a = eval_T_classed(at_s.ctx, nu, 0.0, tau);
        ClassVals b = eval_T_classed(at_d.ctx, nu, 0.0, tau);
        Complex av{0.0, 0.0}, bv{0.0, 0.0};
        const OscRates rates{tau, np.phi};
        for (int k = 0; k < a.size(); ++k) av += a.val(k) * cis(rates.rate(a.key(k)) * nu);
        for (int k = 0; k < b.size(); ++k) bv += b.val(k) * cis(rates.rate(b.key(k)) * nu);
        grid.chan_s[i] = at_s.ctx.prefactor * w * av;
        grid.chan_d[i] = at_d.ctx.prefactor * w * bv;
    }
    return grid;
}

PairGrid amplitude_A2(const NaturalParams& np, double tau, const EngineOptions& opt) {
    check_tau(tau);
    PairGrid grid;
    grid.kind = PairGrid::Kind::general;
    grid.theta0 = np.theta0;
    grid.phi = np.phi;
    make_grid_nodes(np, tau, opt, grid.omega, grid.weight);
    const std::size_t n = grid.omega.size();
    if (n > 3000) throw Error("A2 pair grid too large; use sum_A2_sq");
    grid.chan_s.assign(n * n, Complex{0.0, 0.0});
    grid.chan_d.assign(n * n, Complex{0.0, 0.0});
    if (tau == 0.0) return grid;
    const auto diags = detail::enumerate_unchecked("eg2", 2, np.rwa);
    if (diags.empty()) return grid;
    std::vector<DiagCtx> s_ctx, d_ctx;
    for (const auto& d : diags) {
        for (int swap = 0; swap < 2; ++swap) {
            int dims[2];
            dims[d.external_modes[0]] = swap;
            dims[d.external_modes[1]] = 1 - swap;
            auto ctx = make_ctx(d, np, dims);
            (ctx.exts[0].emitter == 'S' ? s_ctx : d_ctx).push_back(std::move(ctx));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double nu0 = grid.omega[i], nu1 = grid.omega[j];
            const double w = std::sqrt(nu0 * nu1) * form_factor(nu0, np.theta0) *
                             form_factor(nu1, np.theta0);
            auto recombine = [&](const std::vector<DiagCtx>& ctxs) {
                Complex acc{0.0, 0.0};
                for (const auto& ctx : ctxs) {
                    ClassVals t = eval_T_classed(ctx, nu0, nu1, tau);
                    for (int k = 0; k < t.size(); ++k) {
                        const double r0 = osckey::a0(t.key(k)) * tau;
                        const double r1 = osckey::a0(osckey::spectator_to_dim0(t.key(k))) * tau;
                        acc += ctx.prefactor * w * t.val(k) * cis(r0 * nu0) * cis(r1 * nu1);
                    }
                }
                return acc;
            };
            grid.chan_s[i * n + j] = recombine(s_ctx);
            grid.chan_d[i * n + j] = recombine(d_ctx);
        }
    }
    return grid;
}

double mode_sum_square(const AmplitudeGrid& grid) {
    if (grid.theta0 <= 0.0) throw RegulatorMissing();
    double acc = 0.0;
    const bool with_corr = !grid.corr_same.empty();
    for (std::size_t i = 0; i < grid.omega.size(); ++i) {
        double v = 2.0 * std::norm(grid.leading[i]);
        if (with_corr) {
            const Complex lbar = std::conj(grid.leading[i]);
            v += 4.0 * (lbar * grid.corr_same[i]).real();
            v += 4.0 * std::cos(grid.omega[i] * grid.phi) * (lbar * grid.corr_cross[i]).real();
        }
        acc += grid.weight[i] * v;
    }
    return acc;
}

double mode_sum_square(const PairGrid& grid) {
    if (grid.theta0 <= 0.0) throw RegulatorMissing();
    const std::size_t n = grid.omega.size();
    if (grid.kind == PairGrid::Kind::factorized) {
        double ia = 0.0, ib = 0.0;
        Complex c{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            ia += grid.weight[i] * std::norm(grid.chan_s[i]);
            ib += grid.weight[i] * std::norm(grid.chan_d[i]);
            c += grid.weight[i] * 2.0 * std::cos(grid.omega[i] * grid.phi) * grid.chan_s[i] *
                 std::conj(grid.chan_d[i]);
        }
        return 4.0 * ia * ib + std::norm(c);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex s = grid.chan_s[i * n + j];
            const Complex d = grid.chan_d[i * n + j];
            double v = 2.0 * (std::norm(s) + std::norm(d));
            v += 4.0 * std::cos(grid.omega[i] * grid.phi) * std::cos(grid.omega[j] * grid.phi) *
                 (s * std::conj(d)).real();
            acc += grid.weight[i] * grid.weight[j] * v;
        }
    }
    return acc;
}


// temporary debug hook
namespace debug_hooks {
Complex b1_outer_integrand(const NaturalParams& np, double tau, double nu,
                           const EngineOptions& opt) {
    SinglePhotonPlan plan = make_single_photon_plan("ee1", np, tau, true, opt);
    const ClassVals lead = leading_cv(plan, nu);
    ClassVals c_same, c_cross;
    corrections_cv(plan, nu, true, c_same, c_cross);
    ClassVals out;
    out.add_all(cv_mul(cv_conj(lead), lead), 2.0);
    ClassVals ctot = c_same;
    ctot.add_all(c_cross, 1.0);
    const ClassVals m = cv_mul(cv_conj(lead), ctot);
    out.add_all(m, 1.0);
    out.add_all(cv_conj(m), 1.0);
    // recombine at nu with rates
    Complex acc{0.0, 0.0};
    for (int i = 0; i < out.size(); ++i)
        acc += out.val(i) * cis(plan.rates.rate(out.key(i)) * nu);
    return acc;
}

void b1_outer_classes(const NaturalParams& np, double tau, double nu, const EngineOptions& opt) {
    SinglePhotonPlan plan = make_single_photon_plan("ee1", np, tau, true, opt);
    const ClassVals lead = leading_cv(plan, nu);
    ClassVals c_same, c_cross;
    corrections_cv(plan, nu, true, c_same, c_cross);
    ClassVals out;
    out.add_all(cv_mul(cv_conj(lead), lead), 2.0);
    ClassVals ctot = c_same;
    ctot.add_all(c_cross, 1.0);
    const ClassVals m = cv_mul(cv_conj(lead), ctot);
    out.add_all(m, 1.0);
    out.add_all(cv_conj(m), 1.0);
    std::printf("nu=%.9f\n", nu);
    for (int i = 0; i < out.size(); ++i)
        std::printf("  key a=%+d b=%+d  val %.12e %.12e\n", osckey::a0(out.key(i)),
                    osckey::b0(out.key(i)), out.val(i).real(), out.val(i).imag());
}

void b1_corr_probe(const NaturalParams& np, double tau, double nu, const EngineOptions& opt) {
    SinglePhotonPlan plan = make_single_photon_plan("ee1", np, tau, true, opt);
    ClassVals c_same, c_cross;
    corrections_cv(plan, nu, true, c_same, c_cross);
    std::printf("nu=%.9f\n", nu);
    for (int i = 0; i < c_same.size(); ++i)
        std::printf("  same a=%+d b=%+d  %.10e %.10e\n", osckey::a0(c_same.key(i)),
                    osckey::b0(c_same.key(i)), c_same.val(i).real(), c_same.val(i).imag());
    for (int i = 0; i < c_cross.size(); ++i)
        std::printf("  cross a=%+d b=%+d  %.10e %.10e\n", osckey::a0(c_cross.key(i)),
                    osckey::b0(c_cross.key(i)), c_cross.val(i).real(), c_cross.val(i).imag());
}
} // namespace debug_hooks

} // namespace qed1d
