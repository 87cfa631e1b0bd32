#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace twostrain {

struct CommandOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed; // overrides the configured seed
    bool reproducible = false;         // no timestamp header lines
};

/// Runs `simulate`, `analyze`, `phase`, `scan` or `fit` against a config
/// file, writing the command's output files into out_dir. Throws
/// ModelError; exit_code_for(code) maps failures onto the CLI convention.
void run_command(const std::string& name, const CommandOptions& options);

} // namespace twostrain
