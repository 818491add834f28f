// config.hpp — run configuration, key=value parsing, figure presets
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qed1d/model.hpp"

namespace qed1d {

struct RunConfig {
    // physical inputs forwarded to build_system (lab units)
    std::map<std::string, double> system_kv;
    double t_min_s = 0.0;
    double t_max_s = 2e-9;
    int points = 200;
    bool log_time = false;
    std::string engine = "perturbative"; // perturbative | oracle | both
    std::string mode = "full";           // full | rwa | both
    std::string out = "sweep";
    double quad_tol = 1e-8;
    int lattice_modes = 48;
    double lattice_length = 16.0 * 2.0 * M_PI;
    int threads = 0; // 0 = hardware / QED1D_THREADS

    SystemSpec system(bool rwa_mode) const { return build_system(system_kv, rwa_mode); }
    std::vector<double> time_grid() const;
};

// Parses plain `key = value` text ('#' comments); ParseError carries the
// offending line number. Returns raw key-value pairs.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Merges file values and flag values (flags win) into a validated RunConfig.
// All violated invariants are collected into one ValidationError.
RunConfig parse_config(const std::map<std::string, std::string>& file_kv,
                       const std::map<std::string, std::string>& flag_kv);

struct PresetRun {
    RunConfig cfg;
    std::string curve_label;            // file name suffix, e.g. "phase0.5"
    std::vector<std::string> metadata;  // extra CSV comment lines
};

// Parameter sets reproducing the published figure curves; UnknownPreset for
// anything but fig1a, fig1b, fig2, fig4, fig5. Each run is expressed in the
// config schema and passed through parse_config.
std::vector<PresetRun> figure_preset(const std::string& name);

} // namespace qed1d
