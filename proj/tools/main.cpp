#include "lsflow/config.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace {

struct CommandArgs {
  std::string configPath;
  std::vector<std::string> sets;
};

lsflow::RunConfig load_config(const CommandArgs& args) {
  lsflow::RunConfig cfg;
  lsflow::apply_entries(cfg, lsflow::parse_config_file(args.configPath));
  for (const std::string& kv : args.sets) lsflow::apply_override(cfg, kv);
  lsflow::validate_config(cfg);
  return cfg;
}

void add_command(CLI::App& app, const std::string& name,
                 const std::string& description,
                 const std::function<int(const lsflow::RunConfig&)>& fn,
                 int& exitCode) {
  auto* cmd = app.add_subcommand(name, description);
  auto args = std::make_shared<CommandArgs>();
  cmd->add_option("--config", args->configPath, "run description file")
      ->required();
  cmd->add_option("--set", args->sets,
                  "override a config entry as key=value (repeatable)");
  cmd->callback([args, fn, &exitCode]() { exitCode = fn(load_config(*args)); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simultaneous incompressible flow on every level set of a bulk "
      "scalar field"};
  app.require_subcommand(1);
  int exitCode = 0;

  add_command(app, "solve", "stationary solve of the configured case",
              lsflow::cmd_solve, exitCode);
  add_command(app, "converge",
              "solve a mesh sequence and report error slopes",
              lsflow::cmd_converge, exitCode);
  add_command(app, "march", "advance the configured case in time",
              lsflow::cmd_march, exitCode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const lsflow::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exitCode;
}
