#pragma once

namespace jjfrac::cli {

/// Parses the command line, dispatches the subcommand and maps failures onto the
/// exit-code contract (0 ok, 2 config, 3 solver).
int run_app(int argc, char** argv);

}  // namespace jjfrac::cli
