#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ks2d/config.hpp"
#include "ks2d/driver.hpp"
#include "ks2d/sweep.hpp"

namespace {

int dispatch(int argc, char** argv) {
  CLI::App app{
      "ks2d - pseudo-spectral lab for the 2D Kuramoto-Sivashinsky family "
      "of equations on the periodic box"};
  app.require_subcommand(1);

  std::string config_path, snapshot_path, out_dir;
  std::vector<double> lambdas;

  CLI::App* run_cmd = app.add_subcommand("run", "integrate one configured run");
  run_cmd->add_option("config", config_path, "key = value config file")
      ->required();

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "one run per lambda, shared-nothing");
  sweep_cmd->add_option("config", config_path, "base config file")->required();
  sweep_cmd
      ->add_option("--lambda", lambdas, "comma-separated lambda values")
      ->required()
      ->delimiter(',');

  CLI::App* resume_cmd =
      app.add_subcommand("resume", "continue a run from a snapshot");
  resume_cmd->add_option("snapshot", snapshot_path, "snapshot file")->required();
  resume_cmd->add_option("config", config_path, "config file")->required();

  CLI::App* report_cmd =
      app.add_subcommand("report", "summarize a finished output directory");
  report_cmd->add_option("out_dir", out_dir, "run output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    return ks2d::run_to_files(ks2d::load_config(config_path));
  }
  if (sweep_cmd->parsed()) {
    const auto rows = ks2d::sweep(ks2d::load_config(config_path), lambdas,
                                  ks2d::sweep_workers_from_env());
    bool any_blowup = false;
    for (const auto& r : rows) {
      std::cout << "lambda = " << r.lambda << ": " << r.status << "\n";
      any_blowup = any_blowup || r.status == "blowup";
    }
    return any_blowup ? 3 : 0;
  }
  if (resume_cmd->parsed()) {
    return ks2d::resume_to_files(snapshot_path, ks2d::load_config(config_path));
  }
  ks2d::report_directory(out_dir, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ks2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
