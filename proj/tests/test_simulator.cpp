#include <doctest.h>

#include <cmath>
#include <memory>

#include "mmq/errors.hpp"
#include "mmq/simulator.hpp"

using namespace mmq;

namespace {

ModelParams params(double T, int Q, double sigma = 0.3) {
    ModelParams p;
    p.sigma = sigma;
    p.A = 0.9;
    p.k = 0.3;
    p.gamma = 0.01;
    p.T = T;
    p.Q = Q;
    return validate_params(p);
}

}  // namespace

TEST_CASE("no quotes, no fills") {
    const auto p = params(60.0, 5);
    // a policy so deep it never trades
    const auto pol = symmetric_policy(1e9, p.Q);
    SimConfig cfg;
    cfg.n_paths = 4;
    cfg.seed = 9;
    cfg.record_paths = 4;
    const auto res = simulate(p, pol, cfg);
    CHECK(res.summary.mean_fills_bid == 0.0);
    CHECK(res.summary.mean_fills_ask == 0.0);
    for (const auto& path : res.recorded) {
        CHECK(path.terminal_inventory == 0);
        CHECK(path.terminal_cash == 0.0);
        CHECK(path.fills.empty());
    }
}

TEST_CASE("seeded determinism and serial/parallel equality") {
    const auto p = params(30.0, 5);
    const auto pol = symmetric_policy(2.0, p.Q);
    SimConfig cfg;
    cfg.n_paths = 64;
    cfg.seed = 1234;
    const auto a = simulate(p, pol, cfg);
    const auto b = simulate(p, pol, cfg);
    const auto c = simulate_serial(p, pol, cfg);
    for (int i = 0; i < cfg.n_paths; ++i) {
        CHECK(a.summary.terminal_wealth[i] == b.summary.terminal_wealth[i]);
        CHECK(a.summary.terminal_wealth[i] == c.summary.terminal_wealth[i]);
    }
    CHECK(a.summary.mean_wealth == c.summary.mean_wealth);
    CHECK(a.summary.certainty_equivalent == c.summary.certainty_equivalent);

    SimConfig other = cfg;
    other.seed = 4321;
    const auto d = simulate(p, pol, other);
    CHECK(d.summary.mean_wealth != a.summary.mean_wealth);
}

TEST_CASE("inventory respects the bound and cash identity holds") {
    const auto p = params(120.0, 1);  // tight bound, aggressive quoting
    const auto pol = symmetric_policy(-5.0, p.Q);
    SimConfig cfg;
    cfg.n_paths = 8;
    cfg.seed = 3;
    cfg.record_paths = 8;
    cfg.delta_floor = -5.0;
    const auto res = simulate(p, pol, cfg);
    for (const auto& path : res.recorded) {
        for (int q : path.inventory) CHECK(std::abs(q) <= p.Q);
        CHECK(res.summary.mean_fills_bid + res.summary.mean_fills_ask > 0.0);

        // recompute wealth from the event log
        double cash = 0.0;
        int q = 0;
        for (const auto& f : path.fills) {
            if (f.side == 'b') {
                cash -= f.price;
                ++q;
            } else {
                cash += f.price;
                --q;
            }
            CHECK(q == f.q_after);
        }
        const double wealth = cash + q * path.terminal_price;
        CHECK(std::abs(wealth - path.terminal_wealth) <= 1e-9);
    }
}

TEST_CASE("empirical fill frequency matches the exponential law") {
    // constant offset, bound wide enough to never bind
    const double delta = 2.0;
    const auto p = params(200.0, 200);
    const auto pol = symmetric_policy(delta, p.Q);
    SimConfig cfg;
    cfg.n_paths = 200;
    cfg.dt = 0.05;
    cfg.seed = 7;
    const auto res = simulate(p, pol, cfg);

    const long n_steps = std::lround(p.T / cfg.dt);
    const double p_fill = -std::expm1(-p.A * std::exp(-p.k * delta) * cfg.dt);
    const double trials = static_cast<double>(cfg.n_paths) * n_steps;
    const double se = std::sqrt(p_fill * (1.0 - p_fill) / trials);
    const double expect = p_fill;
    const double got_bid = res.summary.mean_fills_bid / n_steps;
    const double got_ask = res.summary.mean_fills_ask / n_steps;
    CHECK(std::abs(got_bid - expect) <= 3.0 * se);
    CHECK(std::abs(got_ask - expect) <= 3.0 * se);
}

TEST_CASE("monte carlo error shrinks like one over sqrt(n)") {
    const auto p = params(60.0, 10);
    const auto pol = symmetric_policy(3.0, p.Q);
    SimConfig a, b;
    a.n_paths = 500;
    a.seed = 11;
    b.n_paths = 2000;
    b.seed = 12;
    const auto ra = simulate(p, pol, a);
    const auto rb = simulate(p, pol, b);
    const double ratio = rb.summary.stderr_wealth / ra.summary.stderr_wealth;
    CHECK(ratio > 0.35);  // ideal 0.5 with sampling noise
    CHECK(ratio < 0.7);
}

TEST_CASE("impact jumps displace the price by xi per fill") {
    ModelParams p = params(60.0, 3, 1e-9);  // no diffusion to speak of
    p.xi = 0.5;
    p = validate_params(p);
    const auto pol = symmetric_policy(0.5, p.Q);
    SimConfig cfg;
    cfg.n_paths = 4;
    cfg.seed = 21;
    cfg.record_paths = 4;
    const auto res = simulate(p, pol, cfg);
    for (const auto& path : res.recorded) {
        long net = 0;
        for (const auto& f : path.fills) net += f.side == 'a' ? 1 : -1;
        CHECK(path.terminal_price ==
              doctest::Approx(cfg.s0 + p.xi * net).epsilon(1e-6));
    }
}

TEST_CASE("tick rounding posts on-grid prices") {
    const auto p = params(60.0, 5);
    const auto pol = symmetric_policy(2.0, p.Q);
    SimConfig cfg;
    cfg.n_paths = 6;
    cfg.seed = 5;
    cfg.record_paths = 6;
    cfg.tick = 1.0;
    const auto res = simulate(p, pol, cfg);
    bool any = false;
    for (const auto& path : res.recorded)
        for (const auto& f : path.fills) {
            any = true;
            CHECK(f.price == std::round(f.price));
        }
    CHECK(any);
}

TEST_CASE("generated tape matches the order-flow law") {
    const auto p = params(600.0, 5);
    TapeConfig tc;
    tc.duration = 20000.0;
    tc.seed = 17;
    tc.s0 = 10000.0;
    const auto tape = generate_tape(p, tc);

    // arrival count ~ Poisson(2 A duration)
    const double lam = 2.0 * p.A * tc.duration;
    CHECK(std::abs(tape.size() - lam) <= 4.0 * std::sqrt(lam));

    double prev = 0.0;
    double dist_sum = 0.0;
    for (const auto& r : tape) {
        CHECK(r.timestamp >= prev);
        prev = r.timestamp;
        CHECK(r.best_bid.has_value());
        CHECK(r.best_ask.has_value());
        const double mid = 0.5 * (*r.best_bid + *r.best_ask);
        dist_sum += std::abs(r.price - mid);
    }
    // reach is Exp(k): mean 1/k
    const double mean_dist = dist_sum / tape.size();
    const double se = (1.0 / p.k) / std::sqrt(static_cast<double>(tape.size()));
    CHECK(std::abs(mean_dist - 1.0 / p.k) <= 4.0 * se);
}

TEST_CASE("flow simulation records fills consistent with its own tape") {
    const auto p = params(300.0, 10);
    const auto pol = symmetric_policy(2.0, p.Q);
    SimConfig cfg;
    cfg.seed = 23;
    const auto res = simulate_on_flow(p, pol, cfg, 1.0, 0.5);
    CHECK(!res.tape.empty());
    // every fill price sits exactly delta away from some print's reference
    double cash = 0.0;
    int q = 0;
    for (const auto& f : res.fills) {
        if (f.side == 'b') {
            cash -= f.price;
            ++q;
        } else {
            cash += f.price;
            --q;
        }
    }
    CHECK(q == res.terminal_inventory);
    CHECK(std::abs(cash - res.terminal_cash) <= 1e-9);
    CHECK(std::abs(cash + q * res.terminal_price - res.terminal_wealth) <= 1e-9);

    ModelParams bad = p;
    bad.xi = 0.1;
    bad = validate_params(bad);
    CHECK_THROWS_AS(simulate_on_flow(bad, pol, cfg, 1.0, 0.5), DomainError);
}

TEST_CASE("invalid simulation configs are rejected") {
    const auto p = params(10.0, 2);
    const auto pol = symmetric_policy(1.0, p.Q);
    SimConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(simulate(p, pol, cfg), DomainError);
    cfg.dt = 0.01;
    cfg.n_paths = 0;
    CHECK_THROWS_AS(simulate(p, pol, cfg), DomainError);
}
