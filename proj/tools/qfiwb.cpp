#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qfiwb/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Seeded QFI / entanglement experiments"};
  std::string experiment;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  int threads = 0;
  app.add_option("experiment", experiment, "Registered experiment name")->required();
  app.add_option("--config", config_path, "Key = value configuration file")->required();
  auto* seed_opt = app.add_option("--seed", seed, "Overrides the configured seed");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory for <experiment>.csv/.json");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads (default: QFIWB_THREADS or 1)");
  app.footer("Exit codes: 0 pass, 1 invariant violation, 2 configuration error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qfiwb::ExperimentConfig config = qfiwb::load_config(config_path, experiment);
    if (!config.values.count("threads")) {
      if (const char* env = std::getenv("QFIWB_THREADS")) {
        try {
          config.threads = std::stoi(env);
        } catch (const std::exception&) {
          throw qfiwb::ConfigError("QFIWB_THREADS must be an integer");
        }
      }
    }
    if (*seed_opt) config.seed = seed;
    if (*out_opt) config.out_dir = out_dir;
    if (*threads_opt) config.threads = threads;
    if (config.threads < 1) throw qfiwb::ConfigError("thread count must be positive");
    return qfiwb::run_and_write(config, std::cout);
  } catch (const qfiwb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
