#include "mmq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mmq/errors.hpp"
#include "mmq/tick.hpp"
#include "parallel_util.hpp"

namespace mmq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent, reproducible stream per (seed, path): results do not depend
// on the execution schedule.
std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(path + 1)));
}

void check_config(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw DomainError("dt", "must be strictly positive");
    if (cfg.n_paths < 1) throw DomainError("n_paths", "must be positive");
}

struct PathStats {
    double wealth = 0.0;
    double q_time_avg = 0.0;
    long fills_bid = 0, fills_ask = 0;
    std::vector<long> occupancy;  // per q, post-step
};

// Per-(step, q) clamped offsets and fill probabilities, precomputed when no
// tick rounding is active (then they do not depend on the price level).
// Layout: 4 doubles per cell, NaN offset = side not quoted.
struct StepTables {
    int n_steps = 0, width = 0, bound = 0;
    std::vector<double> cells;  // [d_bid, p_bid, d_ask, p_ask] per (j, q)

    const double* at(int j, int q) const {
        return cells.data() +
               4 * (static_cast<std::size_t>(j) * width + (q + bound));
    }
};

StepTables build_tables(const ModelParams& p, const QuotingPolicy& policy,
                        const SimConfig& cfg, int n_steps) {
    StepTables tab;
    tab.n_steps = n_steps;
    tab.bound = p.Q;
    tab.width = 2 * p.Q + 1;
    tab.cells.assign(4 * static_cast<std::size_t>(n_steps) * tab.width, 0.0);

    detail::ExceptionSlot errors;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_steps; ++j) errors.run([&, j] {
        const double t = j * cfg.dt;
        for (int q = -p.Q; q <= p.Q; ++q) {
            const QuotePair quote = policy.quote(t, q);
            double* cell =
                tab.cells.data() +
                4 * (static_cast<std::size_t>(j) * tab.width + (q + p.Q));
            const double nan = std::numeric_limits<double>::quiet_NaN();
            cell[0] = cell[2] = nan;
            cell[1] = cell[3] = 0.0;
            if (quote.bid && q < p.Q) {
                const double d = std::max(*quote.bid, cfg.delta_floor);
                cell[0] = d;
                cell[1] = -std::expm1(-p.A * std::exp(-p.k * d) * cfg.dt);
            }
            if (quote.ask && q > -p.Q) {
                const double d = std::max(*quote.ask, cfg.delta_floor);
                cell[2] = d;
                cell[3] = -std::expm1(-p.A * std::exp(-p.k * d) * cfg.dt);
            }
        }
    });
    errors.rethrow();
    return tab;
}

PathStats run_path(const ModelParams& p, const QuotingPolicy& policy,
                   const SimConfig& cfg, const StepTables* tables, int path,
                   SimPath* record) {
    const int Q = p.Q;
    const int n_steps = static_cast<int>(std::llround(p.T / cfg.dt));
    const double sqdt = std::sqrt(cfg.dt);

    auto rng = path_rng(cfg.seed, static_cast<std::uint64_t>(path));
    std::normal_distribution<double> normal(0.0, 1.0);
    // uniform in [0, 1) straight from the top 53 bits
    auto unif = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    double S = cfg.s0, X = cfg.x0;
    int q = cfg.q0;
    PathStats stats;
    stats.occupancy.assign(2 * Q + 1, 0);
    long long q_sum = 0;

    if (record) {
        record->times.reserve(n_steps);
        record->prices.reserve(n_steps);
        record->cash.reserve(n_steps);
        record->inventory.reserve(n_steps);
    }

    for (int j = 0; j < n_steps; ++j) {
        const double t = j * cfg.dt;
        // fixed draw layout per step so streams are stable across policies
        const double u_bid = unif();
        const double u_ask = unif();
        const double z = normal(rng);

        bool fill_bid = false, fill_ask = false;
        double bid_px = 0.0, ask_px = 0.0;
        if (tables) {
            const double* cell = tables->at(j, q);
            if (u_bid < cell[1]) {
                fill_bid = true;
                bid_px = S - cell[0];
            }
            if (u_ask < cell[3]) {
                fill_ask = true;
                ask_px = S + cell[2];
            }
        } else {
            const QuotePair quote = policy.quote(t, q);
            if (quote.bid && q < Q) {
                double d = std::max(*quote.bid, cfg.delta_floor);
                bid_px = round_bid_to_tick(S - d, cfg.tick);
                const double lambda = p.A * std::exp(-p.k * (S - bid_px));
                fill_bid = u_bid < -std::expm1(-lambda * cfg.dt);
            }
            if (quote.ask && q > -Q) {
                double d = std::max(*quote.ask, cfg.delta_floor);
                ask_px = round_ask_to_tick(S + d, cfg.tick);
                const double lambda = p.A * std::exp(-p.k * (ask_px - S));
                fill_ask = u_ask < -std::expm1(-lambda * cfg.dt);
            }
        }

        if (fill_bid) {
            X -= bid_px;
            ++q;
            ++stats.fills_bid;
            if (record) record->fills.push_back({t, 'b', bid_px, q});
        }
        if (fill_ask) {
            X += ask_px;
            --q;
            ++stats.fills_ask;
            if (record) record->fills.push_back({t, 'a', ask_px, q});
        }

        S += p.mu * cfg.dt + p.sigma * sqdt * z;
        if (p.xi > 0.0)
            S += p.xi * (static_cast<int>(fill_ask) - static_cast<int>(fill_bid));

        q_sum += q;
        ++stats.occupancy[q + Q];
        if (record) {
            record->times.push_back(t + cfg.dt);
            record->prices.push_back(S);
            record->cash.push_back(X);
            record->inventory.push_back(q);
        }
    }

    stats.wealth = X + q * S;
    stats.q_time_avg = static_cast<double>(q_sum) / n_steps;
    if (record) {
        record->terminal_wealth = stats.wealth;
        record->terminal_cash = X;
        record->terminal_price = S;
        record->terminal_inventory = q;
    }
    return stats;
}

double logsumexp_mean(std::span<const double> xs) {
    double mx = xs[0];
    for (double x : xs) mx = std::max(mx, x);
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s / xs.size());
}

SimResult reduce(const ModelParams& p, const QuotingPolicy& policy,
                 const SimConfig& cfg, std::vector<PathStats>& stats,
                 std::vector<SimPath>&& recorded) {
    const int n = cfg.n_paths;
    SimResult out;
    out.recorded = std::move(recorded);
    SimSummary& s = out.summary;
    s.n_paths = n;
    s.dt = cfg.dt;
    s.seed = cfg.seed;
    s.policy = policy.label;
    s.inventory_histogram.assign(2 * p.Q + 1, 0.0);
    s.terminal_wealth.resize(n);

    // single-threaded reduction in path order
    double mean = 0.0;
    double fills_b = 0.0, fills_a = 0.0, q_avg = 0.0;
    std::vector<long> occ(2 * p.Q + 1, 0);
    for (int i = 0; i < n; ++i) {
        s.terminal_wealth[i] = stats[i].wealth;
        mean += stats[i].wealth;
        fills_b += stats[i].fills_bid;
        fills_a += stats[i].fills_ask;
        q_avg += stats[i].q_time_avg;
        for (std::size_t j = 0; j < occ.size(); ++j)
            occ[j] += stats[i].occupancy[j];
    }
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = stats[i].wealth - mean;
        var += d * d;
    }
    var = n > 1 ? var / (n - 1) : 0.0;

    s.mean_wealth = mean;
    s.var_wealth = var;
    s.stderr_wealth = std::sqrt(var / n);
    s.mean_fills_bid = fills_b / n;
    s.mean_fills_ask = fills_a / n;
    s.time_avg_inventory = q_avg / n;

    long total_occ = 0;
    for (long o : occ) total_occ += o;
    for (std::size_t j = 0; j < occ.size(); ++j)
        s.inventory_histogram[j] = static_cast<double>(occ[j]) / total_occ;

    // certainty equivalent -(1/gamma) ln E[exp(-gamma W)], via log-sum-exp
    std::vector<double> neg(n);
    for (int i = 0; i < n; ++i) neg[i] = -p.gamma * stats[i].wealth;
    const double lse = logsumexp_mean(neg);
    s.certainty_equivalent = -lse / p.gamma;
    // delta method on the mean of exp(-gamma W)
    double m_exp = 0.0, v_exp = 0.0;
    for (int i = 0; i < n; ++i) m_exp += std::exp(neg[i] - lse);
    m_exp /= n;
    for (int i = 0; i < n; ++i) {
        const double d = std::exp(neg[i] - lse) - m_exp;
        v_exp += d * d;
    }
    v_exp = n > 1 ? v_exp / (n - 1) : 0.0;
    s.stderr_ce = std::sqrt(v_exp / n) / (m_exp * p.gamma);

    return out;
}

}  // namespace

SimResult simulate(const ModelParams& p, const QuotingPolicy& policy,
                   const SimConfig& cfg) {
    check_config(cfg);
    const int n = cfg.n_paths;
    const int n_rec = std::min(cfg.record_paths, n);
    std::vector<PathStats> stats(n);
    std::vector<SimPath> recorded(n_rec);

    // with tick rounding off, offsets and fill probabilities depend on
    // (step, q) only; precompute them unless the table would be huge
    const int n_steps = static_cast<int>(std::llround(p.T / cfg.dt));
    const std::size_t cells = static_cast<std::size_t>(n_steps) * (2 * p.Q + 1);
    StepTables tables;
    const bool use_tables = cfg.tick <= 0.0 && cells <= (std::size_t{1} << 24);
    if (use_tables) tables = build_tables(p, policy, cfg, n_steps);
    const StepTables* tab = use_tables ? &tables : nullptr;

    if (cfg.parallel) {
        detail::ExceptionSlot errors;
#pragma omp parallel for schedule(dynamic, 8)
        for (int i = 0; i < n; ++i) errors.run([&, i] {
            stats[i] = run_path(p, policy, cfg, tab, i,
                                i < n_rec ? &recorded[i] : nullptr);
        });
        errors.rethrow();
    } else {
        for (int i = 0; i < n; ++i)
            stats[i] = run_path(p, policy, cfg, tab, i,
                                i < n_rec ? &recorded[i] : nullptr);
    }
    return reduce(p, policy, cfg, stats, std::move(recorded));
}

SimResult simulate_serial(const ModelParams& p, const QuotingPolicy& policy,
                          const SimConfig& cfg) {
    SimConfig serial = cfg;
    serial.parallel = false;
    return simulate(p, policy, serial);
}

nlohmann::json summary_to_json(const SimSummary& s) {
    return {{"n_paths", s.n_paths},
            {"dt", s.dt},
            {"seed", s.seed},
            {"policy", s.policy},
            {"mean_terminal_wealth", s.mean_wealth},
            {"var_terminal_wealth", s.var_wealth},
            {"stderr_terminal_wealth", s.stderr_wealth},
            {"certainty_equivalent", s.certainty_equivalent},
            {"stderr_certainty_equivalent", s.stderr_ce},
            {"mean_fills_bid", s.mean_fills_bid},
            {"mean_fills_ask", s.mean_fills_ask},
            {"time_avg_inventory", s.time_avg_inventory},
            {"inventory_histogram", s.inventory_histogram}};
}

FlowSimResult simulate_on_flow(const ModelParams& p, const QuotingPolicy& policy,
                               const SimConfig& cfg, double trade_size,
                               double half_spread) {
    check_config(cfg);
    if (p.xi > 0.0)
        throw DomainError("xi", "order-flow simulation has no impact feedback");

    const int Q = p.Q;
    const int n_steps = static_cast<int>(std::llround(p.T / cfg.dt));
    const double sqdt = std::sqrt(cfg.dt);
    const double p_arrival = -std::expm1(-p.A * cfg.dt);

    auto rng = path_rng(cfg.seed, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> reach(p.k);

    FlowSimResult out;
    double S = cfg.s0, X = cfg.x0;
    int q = cfg.q0;

    for (int j = 0; j < n_steps; ++j) {
        const double t = j * cfg.dt;
        QuotePair quote = policy.quote(t, q);

        const double u_sell = unif(rng);
        const double r_sell = reach(rng);
        const double u_buy = unif(rng);
        const double r_buy = reach(rng);
        const double z = normal(rng);

        // sell order: prints below the reference, can lift our bid
        if (u_sell < p_arrival) {
            out.tape.push_back({t, S - r_sell, trade_size, S - half_spread,
                                S + half_spread});
            if (quote.bid && q < Q) {
                double d = std::max(*quote.bid, cfg.delta_floor);
                double bid_px = round_bid_to_tick(S - d, cfg.tick);
                if (S - r_sell <= bid_px) {
                    X -= bid_px;
                    ++q;
                    out.fills.push_back({t, 'b', bid_px, q});
                }
            }
        }
        // buy order: prints above the reference, can hit our ask
        if (u_buy < p_arrival) {
            out.tape.push_back({t, S + r_buy, trade_size, S - half_spread,
                                S + half_spread});
            if (quote.ask && q > -Q) {
                double d = std::max(*quote.ask, cfg.delta_floor);
                double ask_px = round_ask_to_tick(S + d, cfg.tick);
                if (S + r_buy >= ask_px) {
                    X += ask_px;
                    --q;
                    out.fills.push_back({t, 'a', ask_px, q});
                }
            }
        }

        S += p.mu * cfg.dt + p.sigma * sqdt * z;
    }

    out.terminal_wealth = X + q * S;
    out.terminal_cash = X;
    out.terminal_price = S;
    out.terminal_inventory = q;
    return out;
}

std::vector<TradeRecord> generate_tape(const ModelParams& p,
                                       const TapeConfig& cfg) {
    if (!(cfg.duration > 0.0))
        throw DomainError("duration", "must be strictly positive");

    auto rng = path_rng(cfg.seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> inter(p.A);
    std::exponential_distribution<double> reach(p.k);

    double t_sell = inter(rng);
    double t_buy = inter(rng);
    double t = 0.0, S = cfg.s0;

    std::vector<TradeRecord> tape;
    while (true) {
        const bool sell_next = t_sell <= t_buy;
        const double t_next = sell_next ? t_sell : t_buy;
        if (t_next > cfg.duration) break;
        S += p.mu * (t_next - t) + p.sigma * std::sqrt(t_next - t) * normal(rng);
        t = t_next;
        const double r = reach(rng);
        tape.push_back({t, sell_next ? S - r : S + r, cfg.size,
                        S - cfg.half_spread, S + cfg.half_spread});
        if (sell_next)
            t_sell = t + inter(rng);
        else
            t_buy = t + inter(rng);
    }
    return tape;
}

}  // namespace mmq
