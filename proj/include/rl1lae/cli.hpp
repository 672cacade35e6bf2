#ifndef RL1LAE_CLI_HPP
#define RL1LAE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rl1lae {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitDiverged = 2,
    kExitIo = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "RL1LAE_OUT_DIR";

/// Entry point of the `rl1lae` tool; returns the process exit code.
///   rl1lae run <config|manifest.json>
///   rl1lae preset <name>
///   rl1lae list-presets
///   rl1lae sweep --param <key> --values v1,v2,... [--config FILE | --preset NAME]
/// Common flags: --seed --runs --iterations --out --threads --set key=value --plot-data
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rl1lae

#endif  // RL1LAE_CLI_HPP
