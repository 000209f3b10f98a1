#include <doctest.h>

#include <memory>

#include "mmq/policy.hpp"

using namespace mmq;

namespace {

ModelParams fig1(int Q = 10) {
    ModelParams p;
    p.sigma = 0.3;
    p.A = 0.9;
    p.k = 0.3;
    p.gamma = 0.01;
    p.T = 600.0;
    p.Q = Q;
    return validate_params(p);
}

}  // namespace

TEST_CASE("policies mask the forbidden side at the bounds") {
    const auto p = fig1();
    auto ladder = std::make_shared<ValueLadder>(
        value_ladder(build_matrix(p, Variant::base), p.T));
    const auto sol = asymptotic_quotes(ladder->matrix(), ladder->decomposition(), p);

    for (const auto& pol :
         {optimal_policy(ladder, p), gaussian_policy(p, Variant::base),
          taylor_policy(p), asymptotic_policy(sol), symmetric_policy(3.0, p.Q)}) {
        const auto top = pol.quote(100.0, p.Q);
        CHECK(!top.bid);
        CHECK(top.ask);
        const auto bottom = pol.quote(100.0, -p.Q);
        CHECK(bottom.bid);
        CHECK(!bottom.ask);
    }
}

TEST_CASE("tabulated policies reproduce the source at grid times") {
    const auto p = fig1();
    auto ladder = std::make_shared<ValueLadder>(
        value_ladder(build_matrix(p, Variant::base), p.T));
    const auto direct = optimal_policy(ladder, p);
    const double dt = 0.5;
    const int n_steps = 1200;
    const auto generic = tabulated(direct, dt, n_steps, p.Q);
    const auto rowwise = tabulated_optimal_policy(ladder, p, dt, n_steps);
    CHECK(generic.label == "optimal");
    CHECK(rowwise.label == "optimal");

    for (int j : {0, 1, 599, 1199})
        for (int q = -p.Q; q <= p.Q; ++q) {
            const auto a = direct.quote(j * dt, q);
            const auto b = generic.quote(j * dt, q);
            const auto c = rowwise.quote(j * dt, q);
            CHECK(a.bid.has_value() == b.bid.has_value());
            if (a.bid) {
                CHECK(*a.bid == *b.bid);
                CHECK(*a.bid == doctest::Approx(*c.bid).epsilon(1e-13));
            }
            if (a.ask) {
                CHECK(*a.ask == *b.ask);
                CHECK(*a.ask == doctest::Approx(*c.ask).epsilon(1e-13));
            }
        }

    // off-grid times snap to the nearest step; out-of-range clamps
    const auto snapped = generic.quote(dt * 3 + 0.1, 0);
    const auto grid = generic.quote(dt * 3, 0);
    CHECK(*snapped.bid == *grid.bid);
    CHECK(*generic.quote(1e9, 0).bid ==
          *generic.quote((n_steps - 1) * dt, 0).bid);
}

TEST_CASE("symmetric policy quotes a constant half-spread") {
    const auto pol = symmetric_policy(2.5, 4);
    const auto qp = pol.quote(0.0, 1);
    CHECK(*qp.bid == 2.5);
    CHECK(*qp.ask == 2.5);
    CHECK(*qp.spread == 5.0);
    CHECK(pol.label == "symmetric-constant");
}
