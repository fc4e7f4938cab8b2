#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinorbit/cli/scene.hpp"

namespace spinorbit::cli {

/// Command-line overrides applied on top of a scene document.
struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::pair<std::size_t, std::size_t>> grid;
    /// Replaces the angle of the last element of arm 2 (the variable closure plate).
    std::optional<double> closure_deg;
};

struct CommandResult {
    std::vector<std::filesystem::path> written;
    std::string summary;  ///< one-line human readable outcome
    int exit_code = 0;
};

SceneConfig apply_overrides(SceneConfig config, const RunOptions& options);

CommandResult run_render(const SceneConfig& config, const RunOptions& options);
CommandResult run_sweep(const SceneConfig& config, const RunOptions& options);
CommandResult run_classify(const SceneConfig& config, const RunOptions& options);
CommandResult run_photon(const SceneConfig& config, const RunOptions& options);
CommandResult run_oracle(const SceneConfig& config, const RunOptions& options);

inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnexpected = 1;

/// Distinct nonzero exit status per error category.
int exit_code(ErrorKind kind);

}  // namespace spinorbit::cli
