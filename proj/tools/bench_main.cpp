// Compares the OpenMP path-parallel simulator against the serial reference
// driver and the parallel quote tabulation against a plain loop, checking
// that parallel and serial results agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmq/policy.hpp"
#include "mmq/simulator.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

mmq::ModelParams reference_params() {
    mmq::ModelParams p;
    p.sigma = 0.3;
    p.A = 0.9;
    p.k = 0.3;
    p.gamma = 0.01;
    p.T = 600.0;
    p.Q = 30;
    return mmq::validate_params(p);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not enabled\n");
#endif

    const auto p = reference_params();
    const auto matrix = mmq::build_matrix(p, mmq::Variant::base);
    auto ladder = std::make_shared<mmq::ValueLadder>(mmq::value_ladder(matrix, p.T));
    const auto direct = mmq::optimal_policy(ladder, p);

    mmq::SimConfig cfg;
    cfg.n_paths = 2000;
    cfg.dt = 0.01;
    cfg.seed = 42;
    const int n_steps = static_cast<int>(std::llround(p.T / cfg.dt));

    // quote tabulation: serial loop vs the parallel kernel
    auto t0 = clock_type::now();
    std::vector<mmq::QuotePair> serial_table(
        static_cast<std::size_t>(n_steps) * (2 * p.Q + 1));
    for (int j = 0; j < n_steps; ++j)
        for (int q = -p.Q; q <= p.Q; ++q)
            serial_table[static_cast<std::size_t>(j) * (2 * p.Q + 1) + q + p.Q] =
                direct.quote(j * cfg.dt, q);
    const double tab_serial = seconds_since(t0);

    t0 = clock_type::now();
    const auto policy = mmq::tabulated(direct, cfg.dt, n_steps, p.Q);
    const double tab_parallel = seconds_since(t0);

    double max_dev = 0.0;
    for (int j = 0; j < n_steps; j += 997)
        for (int q = -p.Q + 1; q < p.Q; ++q) {
            const auto& a =
                serial_table[static_cast<std::size_t>(j) * (2 * p.Q + 1) + q + p.Q];
            const auto b = policy.quote(j * cfg.dt, q);
            max_dev = std::max(max_dev, std::abs(*a.bid - *b.bid));
            max_dev = std::max(max_dev, std::abs(*a.ask - *b.ask));
        }
    std::printf("quote tabulation %d x %d: serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  max |dev| %.1e\n",
                n_steps, 2 * p.Q + 1, tab_serial, tab_parallel,
                tab_serial / tab_parallel, max_dev);

    // simulator: serial reference vs OpenMP driver
    t0 = clock_type::now();
    const auto serial = mmq::simulate_serial(p, policy, cfg);
    const double sim_serial = seconds_since(t0);

    t0 = clock_type::now();
    const auto parallel = mmq::simulate(p, policy, cfg);
    const double sim_parallel = seconds_since(t0);

    bool identical = true;
    for (int i = 0; i < cfg.n_paths; ++i)
        identical = identical && serial.summary.terminal_wealth[i] ==
                                     parallel.summary.terminal_wealth[i];
    std::printf("simulate %d paths x %d steps: serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  bitwise %s\n",
                cfg.n_paths, n_steps, sim_serial, sim_parallel,
                sim_serial / sim_parallel, identical ? "equal" : "DIFFERENT");
    std::printf("mean terminal wealth %.4f (serial) %.4f (parallel)\n",
                serial.summary.mean_wealth, parallel.summary.mean_wealth);
    return identical ? 0 : 1;
}
