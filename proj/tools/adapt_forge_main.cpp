#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adapt_forge/config.hpp"
#include "adapt_forge/runner.hpp"
#include "adapt_forge/verify.hpp"

using namespace adapt_forge;

namespace {

void apply_thread_cap() {
  const char* env = std::getenv("ADAPT_FORGE_THREADS");
  if (!env || !*env) return;
  int n = 0;
  try {
    n = std::stoi(env);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("ADAPT_FORGE_THREADS is not an integer: ") + env);
  }
  if (n < 1) throw std::runtime_error("ADAPT_FORGE_THREADS must be >= 1");
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ADAPT-VQE with FEB, QEB, sQEB and sFEB operator pools"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> pools;
  std::string output_dir;
  auto* run_cmd = app.add_subcommand("run", "run ADAPT-VQE from a config file");
  run_cmd->add_option("--config", config_path, "run configuration")->required();
  run_cmd->add_option("--pool", pools, "pool family (repeat to compare pools)");
  run_cmd->add_option("--output-dir", output_dir, "artifact directory");

  auto* verify_cmd = app.add_subcommand("verify", "run the structural circuit and identity checks");

  std::size_t k = 10;
  auto* spec_cmd = app.add_subcommand("spectrum", "lowest eigenpairs of the (N, Sz) sector");
  spec_cmd->add_option("--config", config_path, "run configuration")->required();
  spec_cmd->add_option("-k", k, "number of eigenpairs")->check(CLI::PositiveNumber);
  spec_cmd->add_option("--output", output_dir, "CSV file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_thread_cap();
    if (*verify_cmd) return verify(std::cout);

    RunConfig cfg = load_config(config_path);
    if (*run_cmd) {
      if (!pools.empty()) {
        cfg.pools.clear();
        for (const auto& p : pools) cfg.pools.push_back(parse_pool_family(p));
      }
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      return run(cfg, std::cerr);
    }
    if (output_dir.empty()) {
      spectrum(cfg, k, std::cout);
    } else {
      std::ofstream out(output_dir);
      if (!out) throw std::runtime_error("cannot write " + output_dir);
      spectrum(cfg, k, out);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
