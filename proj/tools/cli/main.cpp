// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli/runner.hpp"

int main(int argc, char **argv)
{
  CLI::App app{"kreiss: resolvent and semigroup growth verifier"};
  app.require_subcommand(1);

  std::string run_config;
  std::string out_dir;
  auto *run = app.add_subcommand("run", "execute the enabled stages of a config");
  run->add_option("config", run_config, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory (overrides KREISS_OUTPUT_DIR and the config)");

  std::string describe_config;
  auto *describe = app.add_subcommand("describe", "print the plan without computing");
  describe->add_option("config", describe_config, "experiment config (JSON)")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : kreiss::cli::kExitConfigError;
  }

  if (*run)
  {
    std::optional<std::filesystem::path> over;
    if (!out_dir.empty())
      over = out_dir;
    return kreiss::cli::run(run_config, over, std::cout, std::cerr);
  }
  return kreiss::cli::describe(describe_config, std::cout, std::cerr);
}
