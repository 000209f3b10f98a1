#include <doctest.h>

#include <cmath>
#include <vector>

#include "mmq/errors.hpp"
#include "mmq/rk4.hpp"
#include "mmq/value_ladder.hpp"

using namespace mmq;

namespace {

ModelParams fig1(int Q = 30) {
    ModelParams p;
    p.sigma = 0.3;
    p.A = 0.9;
    p.k = 0.3;
    p.gamma = 0.01;
    p.T = 600.0;
    p.Q = Q;
    return validate_params(p);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    g.back() = b;
    return g;
}

}  // namespace

TEST_CASE("terminal condition is exact") {
    const auto p = fig1(6);
    for (Variant v : {Variant::base, Variant::impact}) {
        ModelParams pv = p;
        if (v == Variant::impact) {
            pv.xi = 0.3;
            pv = validate_params(pv);
        }
        const auto m = build_matrix(pv, v);
        const auto lad = value_ladder(m, pv.T);
        for (int q = -6; q <= 6; ++q)
            CHECK(lad.value(pv.T, q) == m.terminal[m.index_of(q)]);
    }
}

TEST_CASE("time domain is enforced") {
    const auto p = fig1(3);
    const auto lad = value_ladder(build_matrix(p, Variant::base), p.T);
    CHECK_THROWS_AS(lad.value(-1.0, 0), DomainError);
    CHECK_THROWS_AS(lad.value(p.T + 1.0, 0), DomainError);
    CHECK_THROWS_AS(lad.value(0.0, 4), DomainError);
}

TEST_CASE("base ladder is symmetric in q") {
    const auto p = fig1();
    const auto lad = value_ladder(build_matrix(p, Variant::base), p.T);
    for (double t : {0.0, 123.0, 599.0}) {
        const auto lv = lad.log_values(t);
        for (int q = 1; q <= p.Q; ++q)
            CHECK(lv[q + p.Q] ==
                  doctest::Approx(lv[-q + p.Q]).epsilon(1e-12));
    }
}

TEST_CASE("value depends on time-to-go only") {
    const auto p = fig1(8);
    const auto m = build_matrix(p, Variant::base);
    const auto eig = decompose(m);
    const ValueLadder long_lad(m, eig, 600.0);
    const ValueLadder short_lad(m, eig, 500.0);
    for (int q = -8; q <= 8; ++q)
        CHECK(long_lad.log_value(100.0, q) == short_lad.log_value(0.0, q));
}

TEST_CASE("positivity and the base lower bound hold on a grid") {
    const auto p = fig1();
    const auto lad = value_ladder(build_matrix(p, Variant::base), p.T);
    const double edge = p.alpha * p.Q * p.Q - p.eta;
    for (double t : linspace(0.0, p.T, 101)) {
        const auto v = lad.values(t);  // value() itself re-checks the bound
        const double bound = std::exp(-edge * (p.T - t));
        for (double x : v) {
            CHECK(x > 0.0);
            CHECK(x >= bound * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("spectral evaluation matches the RK4 oracle") {
    const auto p = fig1(5);
    const auto m = build_matrix(p, Variant::base);
    const auto lad = value_ladder(m, p.T);
    const auto times = linspace(0.0, p.T, 21);
    const auto grid = integrate_ode_oracle(m, p.T, 1e-3, times);
    double worst = 0.0;
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        const auto v = lad.values(times[ti]);
        for (int i = 0; i < m.dim(); ++i)
            worst = std::max(worst,
                             std::abs(v[i] - grid.value(ti, i)) /
                                 std::abs(grid.value(ti, i)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("RK4 oracle also validates drift and impact variants") {
    ModelParams p = fig1(4);
    p.mu = 0.06;
    p.xi = 0.25;
    p = validate_params(p);
    for (Variant v : {Variant::drift, Variant::impact}) {
        const auto m = build_matrix(p, v);
        const auto lad = value_ladder(m, p.T);
        const auto times = linspace(0.0, p.T, 7);
        const auto grid = integrate_ode_oracle(m, p.T, 1e-3, times);
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            const auto vv = lad.values(times[ti]);
            for (int i = 0; i < m.dim(); ++i)
                CHECK(vv[i] ==
                      doctest::Approx(grid.value(ti, i)).epsilon(1e-9));
        }
    }
}

TEST_CASE("RK4 converges at fourth order") {
    const auto p = fig1();
    const auto m = build_matrix(p, Variant::base);
    const auto lad = value_ladder(m, p.T);
    const std::vector<double> t0{0.0};
    const auto exact = lad.values(0.0);

    std::vector<double> errs;
    for (double h : {0.2, 0.1, 0.05}) {
        const auto grid = integrate_ode_oracle(m, p.T, h, t0);
        double worst = 0.0;
        for (int i = 0; i < m.dim(); ++i)
            worst = std::max(worst, std::abs(grid.value(0, i) - exact[i]) /
                                        std::abs(exact[i]));
        errs.push_back(worst);
    }
    // halving the step cuts the discrepancy by ~16x
    CHECK(errs[0] / errs[1] > 12.0);
    CHECK(errs[0] / errs[1] < 20.0);
    CHECK(errs[1] / errs[2] > 12.0);
    CHECK(errs[1] / errs[2] < 20.0);
}

TEST_CASE("finite differences of the ladder satisfy the generator") {
    // centered difference of v at interior grid times approximates M v with
    // O(dt^2) accuracy; checked by halving the spacing
    const auto p = fig1(6);
    const auto m = build_matrix(p, Variant::base);
    const auto lad = value_ladder(m, p.T);
    auto residual = [&](double dt) {
        double worst = 0.0;
        for (double t : {150.0, 300.0, 450.0}) {
            const auto up = lad.values(t + dt);
            const auto dn = lad.values(t - dt);
            const auto mid = lad.values(t);
            const auto gen = multiply(m, mid);
            for (int i = 0; i < m.dim(); ++i) {
                const double fd = (up[i] - dn[i]) / (2.0 * dt);
                worst = std::max(worst, std::abs(fd - gen[i]) / std::abs(mid[i]));
            }
        }
        return worst;
    };
    // dt small enough that dt * ||M|| is in the asymptotic regime
    const double r1 = residual(0.5);
    const double r2 = residual(0.25);
    CHECK(r1 / r2 > 3.2);  // second order
    CHECK(r1 / r2 < 4.8);
}

TEST_CASE("oracle rejects off-grid record times and bad steps") {
    const auto p = fig1(2);
    const auto m = build_matrix(p, Variant::base);
    const std::vector<double> bad{0.0005};
    CHECK_THROWS_AS(integrate_ode_oracle(m, p.T, 1e-3, bad), DomainError);
    const std::vector<double> fine{0.0};
    CHECK_THROWS_AS(integrate_ode_oracle(m, p.T, -1.0, fine), DomainError);
}
