// csv.hpp — probability curve serialization
#pragma once

#include <string>
#include <vector>

#include "qed1d/observables.hpp"

namespace qed1d {

// Fixed schema: t_s,tau,P_ge0,P_ge_star,P_star_e_star,P_cond,mode,engine.
// Numbers carry 12 significant digits; the undefined conditional serializes
// as the literal token `undefined`. Metadata lines are written first as
// '#'-prefixed comments. Output is byte-deterministic for fixed inputs.
std::string curve_to_csv(const ProbabilityCurve& curve,
                         const std::vector<std::string>& metadata);

void write_curve_csv(const std::string& path, const ProbabilityCurve& curve,
                     const std::vector<std::string>& metadata);

// Config echo lines (lab and natural units) for the CSV header.
std::vector<std::string> config_echo(const SystemSpec& spec);

} // namespace qed1d
