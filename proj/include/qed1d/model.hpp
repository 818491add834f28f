// model.hpp — physical model definition and laboratory -> natural unit conversion
//
// Internal convention everywhere downstream: hbar = v = 1, times carried as
// tau = Omega_S * t, frequencies in units of Omega_S, distances as the phase
// phi = Omega_S * r / v. Qubit-field couplings enter only through the
// dimensionless K_A; dipole moments and field normalization never appear
// separately.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qed1d/errors.hpp"

namespace qed1d {

struct QubitParams {
    char label = 'S';             // 'S' (source) or 'D' (detector)
    double gap_frequency = 0.0;   // Omega_A, rad/s
    double position_m = 0.0;      // x_A, meters
    double coupling = 0.0;        // K_A, dimensionless
};

struct FieldParams {
    double velocity_m_s = 1e8;    // photon propagation velocity v
    double cutoff_time_s = 1e-13; // regulator time t0 ~ (qubit size)/v
};

// Dimensionless parameter set consumed by both engines.
struct NaturalParams {
    double mu = 1.0;      // Omega_D / Omega_S
    double phi = 0.0;     // Omega_S * r / v  (the 2*pi*r/lambda of figure captions)
    double k_s = 0.0;     // K_S
    double k_d = 0.0;     // K_D
    double theta0 = 0.0;  // Omega_S * t0
    bool rwa = false;
};

struct SystemSpec {
    QubitParams source;
    QubitParams detector;
    FieldParams field;
    bool rwa_mode = false;

    double separation_m = 0.0; // |x_S - x_D|
    double phase = 0.0;        // Omega_S * r / v
    std::vector<std::string> warnings;

    double tau_from_seconds(double t_s) const { return source.gap_frequency * t_s; }
    double seconds_from_tau(double tau) const { return tau / source.gap_frequency; }

    // Soft perturbative-validity boundary K_A * Omega_A * t ~ 1. Out-of-regime
    // points are flagged, never refused.
    bool out_of_regime(double tau) const;

    NaturalParams natural() const;
};

// Builds and validates a SystemSpec from labeled physical quantities.
//
// Recognized keys (lab units):
//   omega_ghz            qubit gap Omega/2pi in GHz, shared by S and D
//   omega_s_ghz, omega_d_ghz   per-qubit override
//   coupling             K for both qubits
//   coupling_s, coupling_d     per-qubit override
//   phase                Omega_S r / v (dimensionless), or
//   separation_m         r in meters, or
//   x_s_m + x_d_m        absolute positions in meters
//   velocity_m_s         field velocity (default 1e8)
//   t0_s                 regulator cutoff time (default 1e-13)
//
// Throws MissingKey / NonPhysicalValue. Degenerate separation r = 0 is
// accepted with a warning.
SystemSpec build_system(const std::map<std::string, double>& raw, bool rwa_mode = false);

double to_natural(double t_seconds, const SystemSpec& spec);
double from_natural(double tau, const SystemSpec& spec);

} // namespace qed1d
