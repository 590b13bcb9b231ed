// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace kreiss::cli
{

enum ExitCode : int
{
  kExitPass = 0,
  kExitVerificationFailed = 1,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
};

/// Environment variable naming the output directory; --out takes precedence.
inline constexpr const char *kOutputDirEnv = "KREISS_OUTPUT_DIR";

int run(const std::filesystem::path &config_path,
        const std::optional<std::filesystem::path> &out_override, std::ostream &out,
        std::ostream &err);

/// Dry run: prints the plan and writes nothing.
int describe(const std::filesystem::path &config_path, std::ostream &out, std::ostream &err);

}  // namespace kreiss::cli
