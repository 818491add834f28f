#include "qed1d/config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qed1d {

std::vector<double> RunConfig::time_grid() const {
    std::vector<double> out;
    out.reserve(points);
    if (log_time) {
        const double la = std::log(t_min_s), lb = std::log(t_max_s);
        for (int i = 0; i < points; ++i)
            out.push_back(std::exp(la + (lb - la) * i / double(points - 1)));
    } else {
        for (int i = 0; i < points; ++i)
            out.push_back(t_min_s + (t_max_s - t_min_s) * i / double(points - 1));
    }
    return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = line.find_first_not_of(" \t\r\n");
        if (notspace == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\n");
            const auto b = s.find_last_not_of(" \t\r\n");
            return (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty key or value");
        kv[key] = val;
    }
    return kv;
}

namespace {

const std::vector<std::string> kSystemKeys = {
    "omega_ghz", "omega_s_ghz", "omega_d_ghz", "coupling", "coupling_s", "coupling_d",
    "phase",     "separation_m", "x_s_m",      "x_d_m",    "velocity_m_s", "t0_s"};

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& s, int& out) {
    try {
        std::size_t pos = 0;
        out = std::stoi(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

} // namespace

RunConfig parse_config(const std::map<std::string, std::string>& file_kv,
                       const std::map<std::string, std::string>& flag_kv) {
    std::map<std::string, std::string> kv = file_kv;
    for (const auto& [k, v] : flag_kv) kv[k] = v; // flags override file values

    RunConfig cfg;
    std::vector<std::string> errors;
    auto take_double = [&](const std::string& key, double& out) {
        auto it = kv.find(key);
        if (it == kv.end()) return false;
        if (!parse_double(it->second, out))
            errors.push_back(key + ": not a number: '" + it->second + "'");
        kv.erase(it);
        return true;
    };
    auto take_int = [&](const std::string& key, int& out) {
        auto it = kv.find(key);
        if (it == kv.end()) return false;
        if (!parse_int(it->second, out))
            errors.push_back(key + ": not an integer: '" + it->second + "'");
        kv.erase(it);
        return true;
    };
    auto take_string = [&](const std::string& key, std::string& out) {
        auto it = kv.find(key);
        if (it == kv.end()) return false;
        out = it->second;
        kv.erase(it);
        return true;
    };

    for (const auto& key : kSystemKeys) {
        double v;
        if (take_double(key, v)) cfg.system_kv[key] = v;
    }
    take_double("t_min_s", cfg.t_min_s);
    take_double("t_max_s", cfg.t_max_s);
    take_int("points", cfg.points);
    std::string scale;
    if (take_string("time_scale", scale)) {
        if (scale == "log")
            cfg.log_time = true;
        else if (scale == "linear")
            cfg.log_time = false;
        else
            errors.push_back("time_scale: expected linear or log, got '" + scale + "'");
    }
    take_string("engine", cfg.engine);
    take_string("mode", cfg.mode);
    take_string("out", cfg.out);
    take_double("quad_tol", cfg.quad_tol);
    take_int("lattice_modes", cfg.lattice_modes);
    take_double("lattice_length", cfg.lattice_length);
    take_int("threads", cfg.threads);

    for (const auto& [k, v] : kv) errors.push_back("unknown key: '" + k + "'");

    // invariants, all collected
    if (cfg.t_min_s < 0.0) errors.push_back("t_min_s must be >= 0");
    if (!(cfg.t_max_s > cfg.t_min_s)) errors.push_back("t_max_s must exceed t_min_s");
    if (cfg.points < 2) errors.push_back("points must be >= 2");
    if (cfg.log_time && cfg.t_min_s <= 0.0) errors.push_back("log time scale needs t_min_s > 0");
    if (!(cfg.quad_tol > 0.0)) errors.push_back("quad_tol must be positive");
    if (cfg.engine != "perturbative" && cfg.engine != "oracle" && cfg.engine != "both")
        errors.push_back("engine: expected perturbative, oracle or both");
    if (cfg.mode != "full" && cfg.mode != "rwa" && cfg.mode != "both")
        errors.push_back("mode: expected full, rwa or both");
    if (cfg.lattice_modes < 1) errors.push_back("lattice_modes must be >= 1");
    if (!(cfg.lattice_length > 0.0)) errors.push_back("lattice_length must be positive");
    if (cfg.threads < 0) errors.push_back("threads must be >= 0");

    if (errors.empty()) {
        try {
            cfg.system(false);
        } catch (const Error& e) {
            errors.push_back(e.what());
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return cfg;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

PresetRun make_preset_run(double coupling, double phase, double t_min, double t_max, int points,
                          const std::string& label) {
    std::map<std::string, std::string> kv;
    kv["omega_ghz"] = "1";
    kv["coupling"] = fmt(coupling);
    kv["phase"] = fmt(phase);
    kv["t_min_s"] = fmt(t_min);
    kv["t_max_s"] = fmt(t_max);
    kv["points"] = std::to_string(points);
    kv["engine"] = "perturbative";
    kv["mode"] = "full";
    PresetRun run;
    run.cfg = parse_config(kv, {});
    run.curve_label = label;
    return run;
}

} // namespace

std::vector<PresetRun> figure_preset(const std::string& name) {
    std::vector<PresetRun> runs;
    if (name == "fig1a") {
        for (double phi : {0.1, 0.3, 0.5}) {
            auto r = make_preset_run(7.5e-3, phi, 5e-11, 2e-9, 200, "phase" + fmt(phi));
            r.metadata.push_back(
                "quantity = P_ge0; the source caption labels it P_[eg0] but the plotted "
                "quantity is the exchange probability |X|^2");
            runs.push_back(std::move(r));
        }
    } else if (name == "fig1b") {
        for (double k : {6e-3, 7.5e-3, 9e-3}) {
            auto r = make_preset_run(k, 0.3, 5e-11, 2e-9, 200, "K" + fmt(k));
            r.metadata.push_back(
                "quantity = P_ge0; the source caption labels it P_[eg0] but the plotted "
                "quantity is the exchange probability |X|^2");
            runs.push_back(std::move(r));
        }
    } else if (name == "fig2") {
        auto r = make_preset_run(3e-2, 0.5, 1e-11, 2e-9, 200, "K0.03");
        r.metadata.push_back("quantity = P_ge_star vs P_ge0; the gap is the two-photon term");
        runs.push_back(std::move(r));
    } else if (name == "fig4") {
        for (double k : {7.5e-3, 1.5e-2, 7.5e-2}) {
            auto r = make_preset_run(k, 1.0, 2e-11, 2.5e-9, 120, "K" + fmt(k));
            r.metadata.push_back("x_axis = K*t (rescale the t_s column by the coupling)");
            r.metadata.push_back("quantity = P_cond");
            runs.push_back(std::move(r));
        }
    } else if (name == "fig5") {
        for (double phi : {0.5, 0.75, 1.0}) {
            auto r = make_preset_run(1.5e-2, phi, 2e-11, 2.5e-9, 120, "phase" + fmt(phi));
            r.metadata.push_back("quantity = P_cond");
            runs.push_back(std::move(r));
        }
    } else {
        throw UnknownPreset(name);
    }
    return runs;
}

} // namespace qed1d
