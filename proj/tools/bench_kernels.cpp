// Timing comparison between the OpenMP kernels and their serial reference
// implementations: Brandes betweenness and the power-law cut-off scan.
//
//   bench_kernels [--nodes N] [--samples S] [--seed X]

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "dexnet/centrality.hpp"
#include "dexnet/powerlaw.hpp"
#include "dexnet/synthetic.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

template <typename Fn>
double timed(Fn&& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return seconds_since(start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel benchmark"};
  std::size_t nodes = 4000;
  std::size_t samples = 200000;
  std::uint64_t seed = 7;
  app.add_option("--nodes", nodes, "graph size for the betweenness benchmark");
  app.add_option("--samples", samples, "sample count for the fit benchmark");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  {
    dexnet::LiquidityGraph g = dexnet::preferential_attachment(nodes, 2, seed);
    std::printf("betweenness on %zu nodes / %zu edges\n", g.node_count(),
                g.edge_count());
    dexnet::BetweennessScores serial, parallel;
    double t_serial = timed([&] { serial = dexnet::brandes_scores_serial(g); });
    double t_parallel = timed([&] { parallel = dexnet::brandes_scores(g); });
    double max_diff = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v)
      max_diff = std::max(max_diff, std::abs(serial.node[v] - parallel.node[v]));
    std::printf("  serial   %8.3fs\n", t_serial);
    std::printf("  openmp   %8.3fs  (%.2fx, max |diff| %.3g)\n", t_parallel,
                t_serial / t_parallel, max_diff);
  }

  {
    auto data =
        dexnet::synth_power_law(2.5, 1.0, samples, seed, dexnet::FitMode::continuous);
    std::printf("power-law cut-off scan on %zu samples\n", data.size());
    dexnet::FitOptions serial_options;
    serial_options.serial_scan = true;
    dexnet::FitResult serial, parallel;
    double t_serial = timed(
        [&] { serial = dexnet::fit(data, dexnet::FitMode::continuous, {}, serial_options); });
    double t_parallel =
        timed([&] { parallel = dexnet::fit(data, dexnet::FitMode::continuous); });
    std::printf("  serial   %8.3fs  alpha %.4f xmin %.4g\n", t_serial, serial.alpha,
                serial.xmin);
    std::printf("  openmp   %8.3fs  alpha %.4f xmin %.4g  (%.2fx)\n", t_parallel,
                parallel.alpha, parallel.xmin, t_serial / t_parallel);
  }
  return 0;
}
