#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "mmq/errors.hpp"
#include "mmq/quotes.hpp"

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

struct Fixture {
    ModelParams p = fig1();
    LadderMatrix m = build_matrix(p, Variant::base);
    ValueLadder lad = value_ladder(m, p.T);
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("terminal quotes collapse to the constant offset") {
    const auto& f = fixture();
    const double c = terminal_offset(f.p);
    CHECK(c == doctest::Approx(3.2789822822990872).epsilon(2e-14));
    for (int q = -f.p.Q; q <= f.p.Q; ++q) {
        const auto qp = optimal_quotes(f.lad, f.p, f.p.T, q);
        if (qp.bid) CHECK(*qp.bid == doctest::Approx(c).epsilon(1e-13));
        if (qp.ask) CHECK(*qp.ask == doctest::Approx(c).epsilon(1e-13));
    }
}

TEST_CASE("boundary inventories quote one side only") {
    const auto& f = fixture();
    const auto top = optimal_quotes(f.lad, f.p, 0.0, f.p.Q);
    CHECK(!top.bid);
    CHECK(top.ask);
    CHECK(!top.spread);
    const auto bottom = optimal_quotes(f.lad, f.p, 0.0, -f.p.Q);
    CHECK(bottom.bid);
    CHECK(!bottom.ask);
    CHECK(!bottom.spread);
    CHECK_THROWS_AS(optimal_quotes(f.lad, f.p, 0.0, f.p.Q + 1), DomainError);
}

TEST_CASE("bid/ask mirror under q <-> -q for the base variant") {
    const auto& f = fixture();
    for (double t : {0.0, 300.0}) {
        for (int q = -f.p.Q + 1; q < f.p.Q; ++q) {
            const auto a = optimal_quotes(f.lad, f.p, t, q);
            const auto b = optimal_quotes(f.lad, f.p, t, -q);
            CHECK(*a.bid == doctest::Approx(*b.ask).epsilon(1e-11));
        }
    }
}

TEST_CASE("spread identity and first-order condition at random points") {
    const auto& f = fixture();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ut(0.0, f.p.T);
    std::uniform_int_distribution<int> uq(-f.p.Q + 1, f.p.Q - 1);
    for (int rep = 0; rep < 200; ++rep) {
        const double t = ut(rng);
        const int q = uq(rng);
        const auto qp = optimal_quotes(f.lad, f.p, t, q);
        CHECK(std::abs(*qp.spread - (*qp.bid + *qp.ask)) <= 1e-12);

        // (k + gamma) e^{-gamma delta_b} (v_{q+1}/v_q)^{-gamma/k} = k
        const double lr = f.lad.log_value(t, q + 1) - f.lad.log_value(t, q);
        const double lhs = (f.p.k + f.p.gamma) *
                           std::exp(-f.p.gamma * *qp.bid) *
                           std::exp(-(f.p.gamma / f.p.k) * lr);
        CHECK(std::abs(lhs - f.p.k) / f.p.k <= 1e-10);
    }
}

TEST_CASE("optimal quote regression fixture at t = 0") {
    const auto& f = fixture();
    const auto qp = optimal_quotes(f.lad, f.p, 0.0, 0);
    CHECK(*qp.bid == doctest::Approx(3.313045409843928).epsilon(1e-9));
    const auto q5 = optimal_quotes(f.lad, f.p, 0.0, 5);
    CHECK(*q5.ask == doctest::Approx(2.9725217727900315).epsilon(1e-9));
}

TEST_CASE("asymptotic solution: fixtures, symmetry, Rayleigh optimality") {
    const auto& f = fixture();
    const auto sol = asymptotic_quotes(f.m, f.lad.decomposition(), f.p);
    CHECK(sol.lambda0 == doctest::Approx(-0.6447344299102664).epsilon(1e-12));
    CHECK(*sol.at(0).bid == doctest::Approx(3.3130454187516936).epsilon(1e-9));
    CHECK(*sol.at(0).spread == doctest::Approx(6.62609083750339).epsilon(1e-9));

    double norm = 0.0;
    for (double x : sol.f0) {
        CHECK(x > 0.0);
        norm += x * x;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));

    for (int q = 1; q < f.p.Q; ++q)
        CHECK(*sol.at(q).spread == doctest::Approx(*sol.at(-q).spread).epsilon(1e-10));

    // Rayleigh form of f0 never beaten by random unit vectors
    auto rayleigh = [&](const std::vector<double>& x) {
        double s = 0.0;
        const int Q = f.p.Q;
        for (int q = -Q; q <= Q; ++q)
            s += f.p.alpha * q * q * x[q + Q] * x[q + Q];
        for (int q = -Q; q < Q; ++q) {
            const double d = x[q + 1 + Q] - x[q + Q];
            s += f.p.eta * d * d;
        }
        s += f.p.eta * x[0] * x[0] + f.p.eta * x[2 * Q] * x[2 * Q];
        return s;
    };
    const double best = rayleigh(sol.f0);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> x(sol.f0.size());
        double n2 = 0.0;
        for (auto& v : x) {
            v = g(rng);
            n2 += v * v;
        }
        for (auto& v : x) v /= std::sqrt(n2);
        CHECK(rayleigh(x) >= best);
    }
    // and the Rayleigh value is the shifted ground eigenvalue
    CHECK(best == doctest::Approx(sol.lambda0 + 2.0 * f.p.eta).epsilon(1e-9));
}

TEST_CASE("finite-horizon quotes approach the asymptotic ones") {
    const auto& f = fixture();
    const auto sol = asymptotic_quotes(f.m, f.lad.decomposition(), f.p);
    const ValueLadder longer(f.m, decompose(f.m), 3600.0);
    double d600 = 0.0, d3600 = 0.0;
    for (int q = -10; q <= 10; ++q) {
        d600 = std::max(d600, std::abs(*optimal_quotes(f.lad, f.p, 0.0, q).bid -
                                       *sol.at(q).bid));
        d3600 = std::max(d3600, std::abs(*optimal_quotes(longer, f.p, 0.0, q).bid -
                                         *sol.at(q).bid));
    }
    CHECK(d600 < 1e-3);
    CHECK(d3600 < 1e-10);
    CHECK(d3600 < d600);
}

TEST_CASE("impact with xi = 0 reproduces base asymptotics exactly") {
    const auto& f = fixture();
    const auto base = asymptotic_quotes(build_matrix(f.p, Variant::base), f.p);
    const auto impact = asymptotic_quotes(build_matrix(f.p, Variant::impact), f.p);
    for (int q = -f.p.Q; q <= f.p.Q; ++q) {
        const auto& a = base.at(q);
        const auto& b = impact.at(q);
        CHECK(a.bid.has_value() == b.bid.has_value());
        if (a.bid) CHECK(*a.bid == *b.bid);
        if (a.ask) CHECK(*a.ask == *b.ask);
    }
}

TEST_CASE("impact terminal quotes carry the quadratic terminal condition") {
    // with v(T)_q = e^{-k xi q^2/2}: (ln v_q - ln v_{q+1})/k = (xi/2)(2q+1),
    // so delta_b(T,q) = c + xi (q+1) and delta_a(T,q) = c + xi (1-q)
    ModelParams p = fig1(6);
    p.xi = 0.4;
    p = validate_params(p);
    const auto lad = value_ladder(build_matrix(p, Variant::impact), p.T);
    const double c = terminal_offset(p);
    for (int q = -p.Q; q <= p.Q; ++q) {
        const auto qp = optimal_quotes(lad, p, p.T, q);
        if (qp.bid)
            CHECK(*qp.bid == doctest::Approx(c + p.xi * (q + 1)).epsilon(1e-12));
        if (qp.ask)
            CHECK(*qp.ask == doctest::Approx(c + p.xi * (1 - q)).epsilon(1e-12));
        if (qp.spread)
            CHECK(*qp.spread == doctest::Approx(2.0 * c + 2.0 * p.xi).epsilon(1e-12));
    }
}

TEST_CASE("impact shifts both asymptotic quotes by xi/2") {
    ModelParams p = fig1(8);
    p.xi = 0.4;
    p = validate_params(p);
    const auto sol = asymptotic_quotes(build_matrix(p, Variant::impact), p);
    // at q = 0 the f0 ratio term is symmetric, so bid == ask and both carry
    // the xi/2 shift relative to the log-ratio part
    CHECK(*sol.at(0).bid == doctest::Approx(*sol.at(0).ask).epsilon(1e-12));
    CHECK(*sol.at(0).spread ==
          doctest::Approx(*sol.at(0).bid + *sol.at(0).ask).epsilon(1e-12));
}

TEST_CASE("gaussian approximation formulas") {
    const auto& f = fixture();
    const auto q0 = gaussian_approximation(f.p, Variant::base, 0);
    CHECK(*q0.spread == doctest::Approx(6.625830397129078).epsilon(1e-12));
    // base spread approximation carries no q dependence
    for (int q : {-20, -3, 1, 17})
        CHECK(*gaussian_approximation(f.p, Variant::base, q).spread == *q0.spread);

    // drift with mu = 0 reduces to base
    const auto drift = gaussian_approximation(f.p, Variant::drift, 4);
    const auto base = gaussian_approximation(f.p, Variant::base, 4);
    CHECK(*drift.bid == *base.bid);
    CHECK(*drift.ask == *base.ask);

    // impact with xi = 0 reduces to base
    const auto impact = gaussian_approximation(f.p, Variant::impact, 4);
    CHECK(*impact.bid == *base.bid);

    // a positive drift lowers the bid offset and raises the ask offset
    ModelParams pm = f.p;
    pm.mu = 0.02;
    pm = validate_params(pm);
    const auto with_mu = gaussian_approximation(pm, Variant::drift, 4);
    CHECK(*with_mu.bid < *base.bid);
    CHECK(*with_mu.ask > *base.ask);

    // boundary convention matches QuotePair
    CHECK(!gaussian_approximation(f.p, Variant::base, f.p.Q).bid);
    CHECK(!gaussian_approximation(f.p, Variant::base, -f.p.Q).ask);
}

TEST_CASE("gaussian ground-state density") {
    const auto& f = fixture();
    CHECK(gaussian_f0_density(f.p, 0.0) ==
          doctest::Approx(0.28373025003587177).epsilon(1e-12));
    for (double x : {0.5, 3.0, 11.0})
        CHECK(gaussian_f0_density(f.p, x) == gaussian_f0_density(f.p, -x));

    // unit L2 norm by Simpson quadrature
    const double width = 60.0;
    const int n = 6000;  // even
    const double h = 2.0 * width / n;
    double integral = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -width + i * h;
        const double fx = gaussian_f0_density(f.p, x);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        integral += w * fx * fx;
    }
    integral *= h / 3.0;
    CHECK(std::abs(integral - 1.0) <= 1e-10);
}

TEST_CASE("taylor expansion near the terminal time") {
    const auto& f = fixture();
    const double c = terminal_offset(f.p);
    const auto at_T = taylor_quotes_near_T(f.p, f.p.T, 3);
    CHECK(*at_T.bid == c);
    CHECK(*at_T.ask == c);
    CHECK_THROWS_AS(taylor_quotes_near_T(f.p, f.p.T + 1.0, 0), DomainError);

    // q = 0: both sides coincide at every horizon
    const auto q0 = taylor_quotes_near_T(f.p, f.p.T - 7.0, 0);
    CHECK(*q0.bid == *q0.ask);

    // the error against the optimal quotes decays at least quadratically
    // in (T - t) under halving
    for (int q : {-2, 0, 2}) {
        double prev = -1.0;
        for (double h : {2.0, 1.0, 0.5, 0.25}) {
            const auto opt = optimal_quotes(f.lad, f.p, f.p.T - h, q);
            const auto tay = taylor_quotes_near_T(f.p, f.p.T - h, q);
            const double err = std::abs(*opt.bid - *tay.bid);
            if (prev >= 0.0) CHECK(prev / err >= 3.5);
            prev = err;
        }
    }
}
