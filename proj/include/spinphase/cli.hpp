#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spinphase/config.hpp"

namespace spinphase {

inline constexpr char const* tool_version = "spinphase 1.0.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int numerical = 2;
}  // namespace exit_code

struct CliEnvironment
{
    /// Lowest-priority config file (SPINPHASE_CONFIG).
    std::optional<std::string> config_path;

    static CliEnvironment from_process();
};

/// Built-in defaults for every key any subcommand understands.
ConfigLayer default_layer();

/// Resolve defaults <- env config <- --config <- flags for one subcommand
/// invocation.  args excludes the program name; args[0] is the subcommand.
/// Throws ConfigError on bad flags or unknown config keys.
RunConfig resolve_run_config(std::vector<std::string> const& args, CliEnvironment const& env);

/// Full command-line entry point; returns the process exit code.
int run_cli(std::vector<std::string> const& args,
            std::ostream& out,
            std::ostream& err,
            CliEnvironment const& env = {});

}  // namespace spinphase
