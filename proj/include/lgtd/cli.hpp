#pragma once

#include <string>
#include <vector>

namespace lgtd::cli {

/**
 * Runs the command-line interface. `args` excludes the program name.
 * Subcommands: decompose, synth, eval, bench, sweep.
 * Returns 0 on success, 1 on usage errors, 2 on data errors.
 */
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace lgtd::cli
