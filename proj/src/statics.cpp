#include "mmq/statics.hpp"

#include <cmath>

#include "mmq/errors.hpp"
#include "mmq/quotes.hpp"

namespace mmq {

const char* to_string(StaticsParam p) {
    switch (p) {
        case StaticsParam::sigma2: return "sigma2";
        case StaticsParam::mu: return "mu";
        case StaticsParam::A: return "A";
        case StaticsParam::k: return "k";
    }
    return "?";
}

int expected_statics_sign(StaticsParam p, char side, int q) {
    switch (p) {
        case StaticsParam::sigma2:
            if (side == 's') return +1;
            if (side == 'b') return q < 0 ? -1 : +1;
            return q > 0 ? -1 : +1;
        case StaticsParam::A:  // exact opposite of sigma^2
            if (side == 's') return -1;
            if (side == 'b') return q < 0 ? +1 : -1;
            return q > 0 ? +1 : -1;
        case StaticsParam::mu:
            if (side == 'b') return -1;
            if (side == 'a') return +1;
            return 0;  // no spread claim
        case StaticsParam::k:
            // per-quote behavior has a threshold; only the spread is claimed
            return side == 's' ? -1 : 0;
    }
    return 0;
}

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

struct AsymEval {
    AsymptoticSolution sol;
    double bid(int q) const { return *sol.at(q).bid; }
    double ask(int q) const { return *sol.at(q).ask; }
    double spread(int q) const { return *sol.at(q).spread; }
};

AsymEval evaluate(const ModelParams& p) {
    // the drift-form matrix equals the base one when mu = 0, so it serves
    // every non-impact case; the impact variant keeps its own matrix
    Variant v = p.xi > 0.0 ? Variant::impact : Variant::drift;
    LadderMatrix m = build_matrix(p, v);
    return {asymptotic_quotes(m, p)};
}

}  // namespace

StaticsReport comparative_statics_report(const ModelParams& base,
                                         std::span<const int> q_values,
                                         double rel_step) {
    if (rel_step < 0.0) throw DomainError("rel_step", "must be nonnegative");

    StaticsReport report;
    const StaticsParam all[] = {StaticsParam::sigma2, StaticsParam::mu,
                                StaticsParam::A, StaticsParam::k};
    for (StaticsParam param : all) {
        ModelParams lo = base, hi = base;
        double width = 0.0;  // denominator of the centered difference
        switch (param) {
            case StaticsParam::sigma2: {
                const double s2 = base.sigma * base.sigma;
                const double h = rel_step * s2;
                lo.sigma = std::sqrt(s2 - h);
                hi.sigma = std::sqrt(s2 + h);
                width = 2.0 * h;
                break;
            }
            case StaticsParam::mu: {
                // relative step degenerates at mu = 0; fall back to an
                // absolute step of the same magnitude
                const double h =
                    rel_step * (base.mu != 0.0 ? std::abs(base.mu) : 1.0);
                lo.mu = base.mu - h;
                hi.mu = base.mu + h;
                width = 2.0 * h;
                break;
            }
            case StaticsParam::A: {
                const double h = rel_step * base.A;
                lo.A = base.A - h;
                hi.A = base.A + h;
                width = 2.0 * h;
                break;
            }
            case StaticsParam::k: {
                const double h = rel_step * base.k;
                lo.k = base.k - h;
                hi.k = base.k + h;
                width = 2.0 * h;
                break;
            }
        }
        AsymEval lo_eval = evaluate(validate_params(lo));
        AsymEval hi_eval = evaluate(validate_params(hi));

        for (int q : q_values) {
            if (q <= -base.Q || q >= base.Q)
                throw DomainError("q", "statics need both quote sides: |q| < Q");
            StaticsRow row;
            row.param = param;
            row.q = q;
            if (width > 0.0) {
                row.d_bid = (hi_eval.bid(q) - lo_eval.bid(q)) / width;
                row.d_ask = (hi_eval.ask(q) - lo_eval.ask(q)) / width;
                row.d_spread = (hi_eval.spread(q) - lo_eval.spread(q)) / width;
            } else {
                row.d_bid = row.d_ask = row.d_spread = 0.0;
            }
            row.sign_bid = sign_of(row.d_bid);
            row.sign_ask = sign_of(row.d_ask);
            row.sign_spread = sign_of(row.d_spread);
            row.claim_bid = expected_statics_sign(param, 'b', q);
            row.claim_ask = expected_statics_sign(param, 'a', q);
            row.claim_spread = expected_statics_sign(param, 's', q);
            row.agrees = (row.claim_bid == 0 || row.sign_bid == row.claim_bid) &&
                         (row.claim_ask == 0 || row.sign_ask == row.claim_ask) &&
                         (row.claim_spread == 0 ||
                          row.sign_spread == row.claim_spread);
            report.all_claims_hold = report.all_claims_hold && row.agrees;
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace mmq
