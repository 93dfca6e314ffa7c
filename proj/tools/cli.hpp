#pragma once

namespace hpnmf::cli {

enum ExitCode : int { ok = 0, usage = 1, config = 2, runtime = 3 };

/// Entry point of the hpnmf command line. Subcommands: run, gradcheck,
/// sweep, gen. Returns one of ExitCode.
int cli_main(int argc, char** argv);

}  // namespace hpnmf::cli
