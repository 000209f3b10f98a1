#include "mmq/policy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmq/errors.hpp"
#include "parallel_util.hpp"

namespace mmq {

using detail::ExceptionSlot;

QuotingPolicy optimal_policy(std::shared_ptr<const ValueLadder> ladder,
                             const ModelParams& p) {
    return {"optimal", [ladder, p](double t, int q) {
                return optimal_quotes(*ladder, p, t, q);
            }};
}

QuotingPolicy gaussian_policy(const ModelParams& p, Variant variant) {
    return {"gaussian-approx", [p, variant](double, int q) {
                return gaussian_approximation(p, variant, q);
            }};
}

QuotingPolicy taylor_policy(const ModelParams& p) {
    return {"taylor", [p](double t, int q) {
                return taylor_quotes_near_T(p, t, q);
            }};
}

QuotingPolicy asymptotic_policy(const AsymptoticSolution& sol) {
    auto table = std::make_shared<std::vector<QuotePair>>(sol.quotes_by_q);
    const int bound = sol.inv_bound();
    return {"asymptotic", [table, bound](double, int q) {
                if (q < -bound || q > bound)
                    throw DomainError("q", "inventory outside [-Q, Q]");
                return (*table)[static_cast<std::size_t>(q + bound)];
            }};
}

QuotingPolicy symmetric_policy(double half_spread, int inv_bound) {
    return {"symmetric-constant", [half_spread, inv_bound](double, int q) {
                QuotePair qp;
                if (q < inv_bound) qp.bid = half_spread;
                if (q > -inv_bound) qp.ask = half_spread;
                if (q > -inv_bound && q < inv_bound)
                    qp.spread = 2.0 * half_spread;
                return qp;
            }};
}

QuotingPolicy tabulated(const QuotingPolicy& src, double dt, int n_steps,
                        int inv_bound) {
    if (!(dt > 0.0)) throw DomainError("dt", "must be strictly positive");
    if (n_steps < 1) throw DomainError("n_steps", "must be positive");
    const int width = 2 * inv_bound + 1;
    auto table = std::make_shared<std::vector<QuotePair>>(
        static_cast<std::size_t>(n_steps) * width);

    ExceptionSlot errors;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_steps; ++j)
        errors.run([&, j] {
            for (int q = -inv_bound; q <= inv_bound; ++q)
                (*table)[static_cast<std::size_t>(j) * width + (q + inv_bound)] =
                    src.quote(j * dt, q);
        });
    errors.rethrow();

    return {src.label,
            [table, dt, n_steps, inv_bound, width](double t, int q) {
                if (q < -inv_bound || q > inv_bound)
                    throw DomainError("q", "inventory outside [-Q, Q]");
                long j = std::lround(t / dt);
                if (j < 0) j = 0;
                if (j >= n_steps) j = n_steps - 1;
                return (*table)[static_cast<std::size_t>(j) * width +
                                (q + inv_bound)];
            }};
}

QuotingPolicy tabulated_optimal_policy(std::shared_ptr<const ValueLadder> ladder,
                                       const ModelParams& p, double dt,
                                       int n_steps) {
    if (!(dt > 0.0)) throw DomainError("dt", "must be strictly positive");
    if (n_steps < 1) throw DomainError("n_steps", "must be positive");
    const int inv_bound = ladder->inv_bound();
    const int width = 2 * inv_bound + 1;
    auto table = std::make_shared<std::vector<QuotePair>>(
        static_cast<std::size_t>(n_steps) * width);

    ExceptionSlot errors;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_steps; ++j)
        errors.run([&, j] {
            const auto row = optimal_quote_row(*ladder, p, j * dt);
            std::copy(row.begin(), row.end(),
                      table->begin() + static_cast<std::size_t>(j) * width);
        });
    errors.rethrow();

    return {"optimal", [table, dt, n_steps, inv_bound, width](double t, int q) {
                if (q < -inv_bound || q > inv_bound)
                    throw DomainError("q", "inventory outside [-Q, Q]");
                long j = std::lround(t / dt);
                if (j < 0) j = 0;
                if (j >= n_steps) j = n_steps - 1;
                return (*table)[static_cast<std::size_t>(j) * width +
                                (q + inv_bound)];
            }};
}

}  // namespace mmq
