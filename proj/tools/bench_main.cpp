#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "elimvote/experiment.hpp"

// Times the experiment harness with the serial reference loop against the
// OpenMP work-sharing loop on the same config and checks that both produce
// identical summaries.

namespace {

double run_timed(const elimvote::ExperimentConfig& config,
                 elimvote::ExperimentResult& result) {
  const auto start = std::chrono::steady_clock::now();
  result = elimvote::run_experiment(config);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial-vs-parallel timing for the experiment harness"};
  std::string protocol = "scaling", model = "uniform";
  long long elections = 50;
  std::vector<int> sizes{4, 8, 16};
  std::uint64_t seed = 1;
  int threads = 0;
  app.add_option("--protocol", protocol, "small|scaling");
  app.add_option("--model", model, "uniform|urn");
  app.add_option("--elections", elections, "elections (per size for scaling)");
  app.add_option("--sizes", sizes, "scaling sizes")->delimiter(',');
  app.add_option("--seed", seed, "base seed");
  app.add_option("--threads", threads, "parallel thread count (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  elimvote::ExperimentConfig config;
  try {
    config.protocol = elimvote::protocol_from_string(protocol);
    config.model = elimvote::model_from_string(model);
    config.elections = elections;
    config.sizes = sizes;
    config.base_seed = seed;

    config.threads = 1;
    elimvote::ExperimentResult serial;
    const double serial_time = run_timed(config, serial);

    config.threads = threads == 1 ? 0 : threads;
    elimvote::ExperimentResult parallel;
    const double parallel_time = run_timed(config, parallel);

    const bool identical = summary_to_json(config, serial) ==
                           summary_to_json(config, parallel);
    std::printf("serial:   %8.3f s\n", serial_time);
    std::printf("parallel: %8.3f s\n", parallel_time);
    std::printf("speedup:  %8.2fx\n",
                parallel_time > 0 ? serial_time / parallel_time : 0.0);
    std::printf("summaries identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
