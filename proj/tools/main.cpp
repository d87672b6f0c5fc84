// Experiment driver. Each subcommand reads a JSON config, runs the
// corresponding experiment and writes CSV files; see --print-schema and the
// README for the formats.

#include <CLI11.hpp>
#include <iostream>

#include "rsfd/config.hpp"
#include "rsfd/experiments.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  bool print_schema = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to the JSON config file");
  cmd->add_option("--out", args.out_dir,
                  "Output directory (defaults to the config's output_dir)");
  cmd->add_flag("--print-schema", args.print_schema,
                "Print the config file schema and exit");
}

int run(const std::string& experiment, const CommonArgs& args) {
  if (args.print_schema) {
    std::cout << rsfd::config_schema();
    return 0;
  }
  if (args.config_path.empty())
    throw std::invalid_argument("--config is required (or use --print-schema)");
  rsfd::ExperimentConfig config = rsfd::load_config_file(args.config_path);

  // The subcommand is authoritative; a conflicting config is an error, but
  // "convergence" accepts either refinement mode from the config.
  if (experiment == "convergence") {
    if (config.experiment != "convergence-temporal" &&
        config.experiment != "convergence-spatial")
      throw std::invalid_argument("config experiment '" + config.experiment +
                                  "' is not a convergence experiment");
  } else if (config.experiment != experiment) {
    throw std::invalid_argument("config experiment '" + config.experiment +
                                "' does not match subcommand '" + experiment + "'");
  }

  const std::filesystem::path out_dir =
      args.out_dir.empty() ? std::filesystem::path(config.output_dir)
                           : std::filesystem::path(args.out_dir);
  for (const auto& path : rsfd::run_experiment(config, out_dir))
    std::cout << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz space fractional diffusion solver experiments"};
  app.require_subcommand(1);

  const std::vector<std::string> names{"solve", "convergence", "iterations", "spectrum",
                                       "stability"};
  std::map<std::string, CommonArgs> args;
  for (const auto& name : names) {
    CLI::App* cmd = app.add_subcommand(name, name + " experiment");
    add_common(cmd, args[name]);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& name : names)
      if (app.got_subcommand(name)) return run(name, args[name]);
    return 1;
  } catch (const std::exception& err) {
    // Machine-readable single-line error.
    std::cerr << "{\"error\": \"" << err.what() << "\"}" << std::endl;
    return 1;
  }
}
