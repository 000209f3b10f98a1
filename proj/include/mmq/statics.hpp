#pragma once

#include <span>
#include <string>
#include <vector>

#include "mmq/params.hpp"

namespace mmq {

// Parameters the comparative-statics suite differentiates against. The
// derivative in sigma is taken with respect to sigma^2 (variance), matching
// how the sensitivity is usually stated.
enum class StaticsParam { sigma2, mu, A, k };

const char* to_string(StaticsParam p);

// Centered-difference sensitivities of the asymptotic quotes at one q.
// Signs are -1/0/+1; claims are the documented qualitative behavior
// (0 = no claim: gamma is excluded entirely as ambiguous, and per-quote
// k-sensitivities are recorded but not asserted).
struct StaticsRow {
    StaticsParam param;
    int q;
    double d_bid, d_ask, d_spread;
    int sign_bid, sign_ask, sign_spread;
    int claim_bid, claim_ask, claim_spread;
    bool agrees;
};

struct StaticsReport {
    std::vector<StaticsRow> rows;
    bool all_claims_hold = true;
};

// Expected sign of d(quantity)/d(param) at inventory q; side is 'b', 'a' or
// 's' (spread). Returns 0 where no sign is claimed.
int expected_statics_sign(StaticsParam p, char side, int q);

// Centered finite differences of delta^b_inf, delta^a_inf and psi_inf with a
// relative step per parameter (absolute fallback of the same size when the
// base value is zero, as for mu = 0). Perturbed parameter sets are
// re-validated; a step that exits the domain raises DomainError.
StaticsReport comparative_statics_report(const ModelParams& base,
                                         std::span<const int> q_values,
                                         double rel_step = 1e-4);

}  // namespace mmq
