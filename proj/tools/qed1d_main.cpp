// qed1d — two-qubit 1-D waveguide QED short-time detection simulator
//
// Subcommands:
//   sweep           probability curves over a time window
//   figure <name>   parameter presets reproducing the reference figures
//   oracle-compare  perturbative engine vs exact lattice oracle, paired CSVs
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qed1d/config.hpp"
#include "qed1d/csv.hpp"
#include "qed1d/threading.hpp"

using namespace qed1d;

namespace {

struct FlagValues {
    std::string config_file;
    std::map<std::string, std::string> kv;
};

void add_common_flags(CLI::App* cmd, FlagValues& fv) {
    cmd->add_option("--config", fv.config_file, "key = value configuration file");
    auto bind = [cmd, &fv](const std::string& flag, const std::string& key,
                           const std::string& help) {
        cmd->add_option_function<std::string>(
               flag, [&fv, key](const std::string& v) { fv.kv[key] = v; }, help)
            ->expected(1);
    };
    bind("--omega-ghz", "omega_ghz", "qubit gap Omega/2pi in GHz (both qubits)");
    bind("--omega-s-ghz", "omega_s_ghz", "source gap in GHz");
    bind("--omega-d-ghz", "omega_d_ghz", "detector gap in GHz");
    bind("--coupling", "coupling", "dimensionless K for both qubits");
    bind("--coupling-s", "coupling_s", "source coupling K_S");
    bind("--coupling-d", "coupling_d", "detector coupling K_D");
    bind("--phase", "phase", "separation phase Omega r / v");
    bind("--separation-m", "separation_m", "qubit separation in meters");
    bind("--velocity", "velocity_m_s", "field propagation velocity in m/s");
    bind("--t0", "t0_s", "regulator cutoff time in seconds");
    bind("--t-min", "t_min_s", "window start in seconds");
    bind("--t-max", "t_max_s", "window end in seconds");
    bind("--points", "points", "number of time points");
    bind("--engine", "engine", "perturbative | oracle | both");
    bind("--mode", "mode", "full | rwa | both");
    bind("--out", "out", "output path prefix");
    bind("--quad-tol", "quad_tol", "absolute quadrature tolerance");
    bind("--lattice-modes", "lattice_modes", "oracle modes M (k_n, n = -M..M)");
    bind("--lattice-length", "lattice_length", "oracle box length, natural units");
    bind("--threads", "threads", "worker threads (0 = auto, capped by QED1D_THREADS)");
    cmd->add_flag_callback(
        "--log-time", [&fv]() { fv.kv["time_scale"] = "log"; }, "logarithmic time grid");
}

RunConfig load_config(const FlagValues& fv) {
    std::map<std::string, std::string> file_kv;
    if (!fv.config_file.empty()) {
        std::ifstream f(fv.config_file);
        if (!f) throw ParseError("cannot read config file: " + fv.config_file);
        std::stringstream ss;
        ss << f.rdbuf();
        file_kv = parse_config_text(ss.str());
    }
    return parse_config(file_kv, fv.kv);
}

int effective_threads(const RunConfig& cfg) {
    return (cfg.threads > 0) ? std::min(cfg.threads, thread_budget()) : thread_budget();
}

LatticeConfig lattice_config(const RunConfig& cfg, const SystemSpec& spec, bool rwa) {
    LatticeConfig lc;
    lc.mode_count = cfg.lattice_modes;
    lc.box_length = cfg.lattice_length;
    lc.rwa_mode = rwa;
    lc.theta0 = spec.natural().theta0;
    const double tau_max = spec.tau_from_seconds(cfg.t_max_s);
    for (const auto& issue : lc.validate(tau_max, spec.phase))
        std::cerr << "warning: lattice: " << issue << "\n";
    return lc;
}

std::vector<std::string> run_metadata(const SystemSpec& spec, const RunConfig& cfg) {
    auto lines = config_echo(spec);
    lines.push_back("quad_tol = " + std::to_string(cfg.quad_tol));
    return lines;
}

int cmd_sweep(const FlagValues& fv) {
    const RunConfig cfg = load_config(fv);
    std::vector<std::string> modes;
    if (cfg.mode == "both")
        modes = {"full", "rwa"};
    else
        modes = {cfg.mode};
    std::vector<std::string> engines;
    if (cfg.engine == "both")
        engines = {"perturbative", "oracle"};
    else
        engines = {cfg.engine};

    EngineOptions opt;
    opt.quad_tol = cfg.quad_tol;
    const auto times = cfg.time_grid();
    for (const auto& mode : modes) {
        const bool rwa = (mode == "rwa");
        const SystemSpec spec = cfg.system(rwa);
        for (const auto& engine : engines) {
            ProbabilityCurve curve;
            if (engine == "perturbative") {
                curve = compute_curve_perturbative(spec, times, opt, effective_threads(cfg));
            } else {
                curve = compute_curve_oracle(spec, lattice_config(cfg, spec, rwa), times);
            }
            const std::string path = cfg.out + "_" + mode + "_" + engine + ".csv";
            write_curve_csv(path, curve, run_metadata(spec, cfg));
            std::cout << "wrote " << path << "\n";
        }
    }
    return 0;
}

int cmd_figure(const std::string& name, const FlagValues& fv) {
    auto runs = figure_preset(name);
    for (auto& run : runs) {
        RunConfig cfg = run.cfg;
        // a few flags may override preset values (tolerance, grid, output)
        if (fv.kv.count("points")) cfg.points = std::stoi(fv.kv.at("points"));
        if (fv.kv.count("quad_tol")) cfg.quad_tol = std::stod(fv.kv.at("quad_tol"));
        if (fv.kv.count("threads")) cfg.threads = std::stoi(fv.kv.at("threads"));
        if (fv.kv.count("out")) cfg.out = fv.kv.at("out");
        if (fv.kv.count("t_max_s")) cfg.t_max_s = std::stod(fv.kv.at("t_max_s"));
        const SystemSpec spec = cfg.system(false);
        EngineOptions opt;
        opt.quad_tol = cfg.quad_tol;
        const auto curve =
            compute_curve_perturbative(spec, cfg.time_grid(), opt, effective_threads(cfg));
        auto meta = run_metadata(spec, cfg);
        meta.insert(meta.end(), run.metadata.begin(), run.metadata.end());
        const std::string path = cfg.out + "_" + name + "_" + run.curve_label + ".csv";
        write_curve_csv(path, curve, meta);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

int cmd_oracle_compare(const FlagValues& fv) {
    RunConfig cfg = load_config(fv);
    const bool rwa = (cfg.mode == "rwa");
    const SystemSpec spec = cfg.system(rwa);
    EngineOptions opt;
    opt.quad_tol = cfg.quad_tol;
    const auto times = cfg.time_grid();
    const auto pert = compute_curve_perturbative(spec, times, opt, effective_threads(cfg));
    const auto orac = compute_curve_oracle(spec, lattice_config(cfg, spec, rwa), times);
    write_curve_csv(cfg.out + "_perturbative.csv", pert, run_metadata(spec, cfg));
    write_curve_csv(cfg.out + "_oracle.csv", orac, run_metadata(spec, cfg));
    double worst[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& a = pert.points[i];
        const auto& b = orac.points[i];
        auto rel = [](double x, double y) {
            const double den = std::max(std::abs(y), 1e-300);
            return std::abs(x - y) / den;
        };
        worst[0] = std::max(worst[0], rel(a.p_ge0, b.p_ge0));
        worst[1] = std::max(worst[1], rel(a.p_ge_star, b.p_ge_star));
        worst[2] = std::max(worst[2], rel(a.p_star_e_star, b.p_star_e_star));
    }
    std::cout << "max relative deviation perturbative vs oracle:\n"
              << "  P_ge0         " << worst[0] << "\n"
              << "  P_ge_star     " << worst[1] << "\n"
              << "  P_star_e_star " << worst[2] << "\n";
    std::cout << "wrote " << cfg.out << "_perturbative.csv and " << cfg.out << "_oracle.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit 1-D waveguide QED short-time detection simulator"};
    app.require_subcommand(1);

    FlagValues sweep_fv, figure_fv, compare_fv;
    auto* sweep = app.add_subcommand("sweep", "probability curves over a time window");
    add_common_flags(sweep, sweep_fv);
    auto* figure = app.add_subcommand("figure", "reference figure presets");
    std::string figure_name;
    figure->add_option("name", figure_name, "fig1a | fig1b | fig2 | fig4 | fig5")->required();
    add_common_flags(figure, figure_fv);
    auto* compare = app.add_subcommand("oracle-compare", "perturbative vs lattice oracle");
    add_common_flags(compare, compare_fv);

    CLI11_PARSE(app, argc, argv);
    try {
        if (sweep->parsed()) return cmd_sweep(sweep_fv);
        if (figure->parsed()) return cmd_figure(figure_name, figure_fv);
        if (compare->parsed()) return cmd_oracle_compare(compare_fv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MissingKey& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonPhysicalValue& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownPreset& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureNotConverged& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const ToleranceNotMet& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const DimensionOverflow& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
