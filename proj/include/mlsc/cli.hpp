#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlsc {

/// Named experiment recipe: the subcommand it belongs to plus a JSON config
/// fragment merged underneath any --config file and flags.
struct Preset {
    std::string name;
    std::string command;
    std::string description;
    std::string config_json;
};

const std::vector<Preset>& presets();

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;

/// Runs one subcommand. 0 on success, 2 on usage or config errors, 3 when the
/// requested result is infeasible (e.g. verify finds a violation), 1 otherwise.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlsc
