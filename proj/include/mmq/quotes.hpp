#pragma once

#include <optional>
#include <vector>

#include "mmq/params.hpp"
#include "mmq/value_ladder.hpp"

namespace mmq {

// Bid/ask offsets from the reference price and the resulting quoted spread,
// all in Ticks. Quotes depend on (t, q) only, never on the price level. A
// market maker at q = +Q never bids and at q = -Q never asks, so those sides
// are absent (never NaN); the spread is undefined at |q| = Q. Offsets may be
// negative for extreme inventory -- clamping is a simulator/backtest concern.
struct QuotePair {
    std::optional<double> bid;     // delta^b
    std::optional<double> ask;     // delta^a
    std::optional<double> spread;  // psi
};

// (1/gamma) ln(1 + gamma/k): the common offset both quotes collapse to at
// t = T (and the half-spread floor of every variant).
double terminal_offset(const ModelParams& p);

// Finite-horizon optimal quotes:
//   delta^b(t,q) = (1/k) ln(v_q / v_{q+1}) + terminal_offset   [+ xi/2, impact]
//   delta^a(t,q) = (1/k) ln(v_q / v_{q-1}) + terminal_offset   [+ xi/2, impact]
//   psi(t,q)     = -(1/k) ln(v_{q+1} v_{q-1} / v_q^2) + 2 terminal_offset [+ xi]
QuotePair optimal_quotes(const ValueLadder& ladder, const ModelParams& p,
                         double t, int q);

// All inventories at one time, sharing a single ladder evaluation; index
// q + Q. Used by the quote-surface emitter and policy tabulation.
std::vector<QuotePair> optimal_quote_row(const ValueLadder& ladder,
                                         const ModelParams& p, double t);

// T -> infinity limits, determined by the smallest eigenpair (lambda_0, f0):
// the finite-horizon quotes converge to these as the horizon grows.
struct AsymptoticSolution {
    double lambda0 = 0.0;
    std::vector<double> f0;              // positive unit eigenvector, index q + Q
    std::vector<QuotePair> quotes_by_q;  // index q + Q

    const QuotePair& at(int q) const;
    int inv_bound() const { return (static_cast<int>(f0.size()) - 1) / 2; }
};

AsymptoticSolution asymptotic_quotes(const LadderMatrix& m,
                                     const SpectralDecomposition& eig,
                                     const ModelParams& p);
AsymptoticSolution asymptotic_quotes(const LadderMatrix& m, const ModelParams& p);

// Closed-form approximation of the asymptotic quotes obtained from the
// Gaussian relaxation of the ground-state eigenproblem. Exact formulas per
// variant; boundary sides are reported absent for consistency with QuotePair.
QuotePair gaussian_approximation(const ModelParams& p, Variant variant, int q);

// The Gaussian relaxation minimizer itself (positive branch, unit L2 norm):
//   f0~(x) = pi^{-1/4} (alpha/eta)^{1/8} exp(-sqrt(alpha/eta) x^2 / 2)
double gaussian_f0_density(const ModelParams& p, double x);

// Linear-in-(T - t) expansion of the optimal quotes around the terminal time:
//   delta^b ~ terminal_offset + ((1+2q)/2) gamma sigma^2 (T-t)
//   delta^a ~ terminal_offset + ((1-2q)/2) gamma sigma^2 (T-t)
// Requires t <= T.
QuotePair taylor_quotes_near_T(const ModelParams& p, double t, int q);

}  // namespace mmq
