#pragma once

#include <iosfwd>
#include <string>

#include "mlsc/solver.hpp"

namespace mlsc {

/// JSON policy dump. Layout (all arrays row-major, level-major):
///   {"format": "mlsc-policy", "version": 1,
///    "params": {beta, gamma, delta, c_plus, c_minus, r, theta},
///    "ladder": [mu_1 .. mu_L],
///    "grid": {"dx": .., "points": N},
///    "epsilon", "iterations", "initial_gap", "residuals": [..],
///    "W": [L*N], "a_plus": [L*N], "a_minus": [L*N]}
void write_policy_json(std::ostream& os, const Policy& policy);
/// Throws ParseError on malformed or inconsistent input.
Policy read_policy_json(std::istream& is);

void save_policy(const std::string& path, const Policy& policy);
Policy load_policy(const std::string& path);

}  // namespace mlsc
