#pragma once

#include <vector>

#include "mmq/ladder.hpp"
#include "mmq/spectral.hpp"

namespace mmq {

// Evaluator for the value ladder v(t) = exp(-M (T - t)) w on t in [0, T],
// computed through the spectral decomposition:
//
//   v_q(t) = sum_i exp(-lambda_i (T-t)) <g_i, w> g_i[q]
//
// Ladder components grow like exp(-lambda_0 (T-t)) and lambda_0 is typically
// negative, so raw values overflow for long horizons; evaluation therefore
// factors out the ground mode and works in logs. Quotes only ever need
// log-ratios, which stay perfectly finite.
//
// Immutable after construction; safe to share across threads. Evaluation is
// lazy -- no time grid is stored.
class ValueLadder {
public:
    ValueLadder(LadderMatrix matrix, SpectralDecomposition eig, double horizon);

    double horizon() const { return horizon_; }
    int inv_bound() const { return matrix_.inv_bound; }
    const LadderMatrix& matrix() const { return matrix_; }
    const SpectralDecomposition& decomposition() const { return eig_; }

    // ln v_q(t). Throws DomainError for t outside [0, T] or |q| > Q, and
    // InvariantError if positivity is lost numerically.
    double log_value(double t, int q) const;
    std::vector<double> log_values(double t) const;  // all q, index q + Q

    // v_q(t); may overflow to +inf for very long horizons. For the base
    // variant the exponential lower bound v_q(t) >= exp(-(alpha Q^2 - eta)(T-t))
    // is enforced as a runtime invariant.
    double value(double t, int q) const;
    std::vector<double> values(double t) const;

private:
    double time_to_go(double t) const;

    LadderMatrix matrix_;
    SpectralDecomposition eig_;
    double horizon_ = 0.0;
    std::vector<double> coef_;  // <g_i, w>
};

// Decomposes and wraps in one step.
ValueLadder value_ladder(const LadderMatrix& m, double horizon);

}  // namespace mmq
