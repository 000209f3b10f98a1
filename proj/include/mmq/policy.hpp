#pragma once

#include <functional>
#include <memory>
#include <string>

#include "mmq/quotes.hpp"

namespace mmq {

// A quoting policy maps (t, inventory) to quote offsets. Policies never
// return a bid at q = Q nor an ask at q = -Q; factory functions below
// guarantee this. Labels identify the policy in summaries and reports.
struct QuotingPolicy {
    std::string label;
    std::function<QuotePair(double t, int q)> quote;
};

// Finite-horizon optimal quotes. The ladder is shared, not copied.
QuotingPolicy optimal_policy(std::shared_ptr<const ValueLadder> ladder,
                             const ModelParams& p);

QuotingPolicy gaussian_policy(const ModelParams& p, Variant variant);
QuotingPolicy taylor_policy(const ModelParams& p);
QuotingPolicy asymptotic_policy(const AsymptoticSolution& sol);  // t-independent

// Constant two-sided quote at the given half-spread (boundary sides masked).
QuotingPolicy symmetric_policy(double half_spread, int inv_bound);

// Precomputes quotes on the step grid t = j dt, j < n_steps, so per-step
// evaluation in the simulator is a table lookup. Off-grid times snap to the
// nearest step. Tabulation runs in parallel.
QuotingPolicy tabulated(const QuotingPolicy& src, double dt, int n_steps,
                        int inv_bound);

// Table-backed optimal policy built row-wise (one ladder evaluation per time
// step instead of one per (t, q)); equivalent to
// tabulated(optimal_policy(...), ...) but much cheaper to construct.
QuotingPolicy tabulated_optimal_policy(std::shared_ptr<const ValueLadder> ladder,
                                       const ModelParams& p, double dt,
                                       int n_steps);

}  // namespace mmq
