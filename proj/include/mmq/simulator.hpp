#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmq/params.hpp"
#include "mmq/policy.hpp"
#include "mmq/trades.hpp"

namespace mmq {

struct SimConfig {
    int n_paths = 1;
    double dt = 0.01;          // s
    std::uint64_t seed = 0;
    double s0 = 100.0;         // Ticks
    double x0 = 0.0;
    int q0 = 0;
    double delta_floor = -10.0;  // admissibility lower bound on offsets, Ticks
    double tick = 0.0;           // > 0: posted prices rounded to this grid
    int record_paths = 0;        // keep full trajectories for the first N paths
    bool parallel = true;
};

struct Fill {
    double t;
    char side;  // 'b' buy (our bid hit), 'a' sell (our ask lifted)
    double price;
    int q_after;
};

// Full trajectory of one recorded path. Step arrays hold the post-step state
// at t = (j+1) dt; fills carry the executed price.
struct SimPath {
    std::vector<double> times, prices, cash;
    std::vector<int> inventory;
    std::vector<Fill> fills;
    double terminal_wealth = 0.0;  // X_T + q_T S_T
    double terminal_cash = 0.0;
    double terminal_price = 0.0;
    int terminal_inventory = 0;
};

struct SimSummary {
    int n_paths = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::string policy;
    double mean_wealth = 0.0;
    double var_wealth = 0.0;
    double stderr_wealth = 0.0;
    double certainty_equivalent = 0.0;  // -(1/gamma) ln E[exp(-gamma W)]
    double stderr_ce = 0.0;
    double mean_fills_bid = 0.0;
    double mean_fills_ask = 0.0;
    double time_avg_inventory = 0.0;          // mean over paths and steps
    std::vector<double> inventory_histogram;  // occupancy fraction, index q + Q
    std::vector<double> terminal_wealth;      // per path
};

struct SimResult {
    SimSummary summary;
    std::vector<SimPath> recorded;
};

// Monte Carlo simulation of the quoted market under `policy`. Euler steps of
// size dt: each active side fills with probability 1 - exp(-A e^{-k delta} dt)
// (offsets clamped to delta_floor, so intensities stay bounded); the price
// then moves by mu dt + sigma sqrt(dt) N(0,1), plus -+xi per fill when
// xi > 0. At most one fill per side per step; simultaneous bid and ask fills
// are independent draws. Inventory never leaves [-Q, Q]: the bound side is
// never quoted.
//
// Paths draw from independent generators derived from (seed, path index), so
// results are identical whether run serially or in parallel; reductions are
// single-threaded in path order.
SimResult simulate(const ModelParams& p, const QuotingPolicy& policy,
                   const SimConfig& cfg);

// Serial reference driver: same per-path kernel, plain loop. Kept for tests
// and the benchmark; simulate(cfg.parallel = true) must match it bit for bit.
SimResult simulate_serial(const ModelParams& p, const QuotingPolicy& policy,
                          const SimConfig& cfg);

nlohmann::json summary_to_json(const SimSummary& s);

// ---------------------------------------------------------------------------
// Order-flow representation, used for tape generation and closed-loop tests.
// The same fill law factored differently: market orders arrive on each side
// at rate A and reach Exp(k) Ticks beyond the reference price; a quote at
// distance delta fills when the reach covers it. Every arrival prints one
// trade at its reach, whether or not it fills the maker.
// ---------------------------------------------------------------------------

struct FlowSimResult {
    std::vector<TradeRecord> tape;
    std::vector<Fill> fills;
    double terminal_wealth = 0.0;
    double terminal_cash = 0.0;
    double terminal_price = 0.0;
    int terminal_inventory = 0;
};

// Stepped simulation against the order-flow representation, recording the
// printed tape alongside the maker's own accounting. Tape prices are in
// Ticks; rows carry best quotes at +-half_spread around the reference.
// Requires xi = 0 (the tape has no maker-impact feedback).
FlowSimResult simulate_on_flow(const ModelParams& p, const QuotingPolicy& policy,
                               const SimConfig& cfg, double trade_size,
                               double half_spread);

struct TapeConfig {
    double duration = 600.0;  // s
    std::uint64_t seed = 0;
    double s0 = 100.0;        // Ticks
    double half_spread = 0.5; // Ticks
    double size = 1.0;        // printed trade size
};

// Maker-free tape: exact event-driven draw of the order flow (exponential
// inter-arrival times per side, Brownian reference between events).
std::vector<TradeRecord> generate_tape(const ModelParams& p, const TapeConfig& cfg);

}  // namespace mmq
