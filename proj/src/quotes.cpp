#include "mmq/quotes.hpp"

#include <cmath>

#include "mmq/errors.hpp"

namespace mmq {

double terminal_offset(const ModelParams& p) {
    return std::log1p(p.gamma / p.k) / p.gamma;
}

QuotePair optimal_quotes(const ValueLadder& ladder, const ModelParams& p,
                         double t, int q) {
    const int Q = ladder.inv_bound();
    if (q < -Q || q > Q) throw DomainError("q", "inventory outside [-Q, Q]");
    const double c = terminal_offset(p);
    const double add = ladder.matrix().variant == Variant::impact ? 0.5 * p.xi : 0.0;

    QuotePair out;
    const double lq = ladder.log_value(t, q);
    if (q < Q) {
        const double lq1 = ladder.log_value(t, q + 1);
        out.bid = (lq - lq1) / p.k + c + add;
    }
    if (q > -Q) {
        const double lq1 = ladder.log_value(t, q - 1);
        out.ask = (lq - lq1) / p.k + c + add;
    }
    if (q > -Q && q < Q) {
        const double up = ladder.log_value(t, q + 1);
        const double dn = ladder.log_value(t, q - 1);
        out.spread = -(up + dn - 2.0 * lq) / p.k + 2.0 * c + 2.0 * add;
    }
    return out;
}

std::vector<QuotePair> optimal_quote_row(const ValueLadder& ladder,
                                         const ModelParams& p, double t) {
    const int Q = ladder.inv_bound();
    const int n = 2 * Q + 1;
    const std::vector<double> lv = ladder.log_values(t);
    const double c = terminal_offset(p);
    const double add = ladder.matrix().variant == Variant::impact ? 0.5 * p.xi : 0.0;

    std::vector<QuotePair> row(n);
    for (int i = 0; i < n; ++i) {
        QuotePair& qp = row[i];
        if (i + 1 < n) qp.bid = (lv[i] - lv[i + 1]) / p.k + c + add;
        if (i > 0) qp.ask = (lv[i] - lv[i - 1]) / p.k + c + add;
        if (i > 0 && i + 1 < n)
            qp.spread = -(lv[i + 1] + lv[i - 1] - 2.0 * lv[i]) / p.k + 2.0 * c +
                        2.0 * add;
    }
    return row;
}

const QuotePair& AsymptoticSolution::at(int q) const {
    const int Q = inv_bound();
    if (q < -Q || q > Q) throw DomainError("q", "inventory outside [-Q, Q]");
    return quotes_by_q[static_cast<std::size_t>(q + Q)];
}

AsymptoticSolution asymptotic_quotes(const LadderMatrix& m,
                                     const SpectralDecomposition& eig,
                                     const ModelParams& p) {
    const int n = m.dim();
    AsymptoticSolution sol;
    sol.lambda0 = eig.eigenvalues[0];
    sol.f0.assign(eig.eigenvector(0).begin(), eig.eigenvector(0).end());

    std::vector<double> lf(n);
    for (int i = 0; i < n; ++i) {
        if (!(sol.f0[i] > 0.0))
            throw InvariantError("ground eigenvector not strictly positive at q = " +
                                 std::to_string(m.inventory_of(i)));
        lf[i] = std::log(sol.f0[i]);
    }

    const double c = terminal_offset(p);
    const double add = m.variant == Variant::impact ? 0.5 * p.xi : 0.0;
    sol.quotes_by_q.resize(n);
    for (int i = 0; i < n; ++i) {
        QuotePair& qp = sol.quotes_by_q[i];
        if (i + 1 < n) qp.bid = (lf[i] - lf[i + 1]) / p.k + c + add;
        if (i > 0) qp.ask = (lf[i] - lf[i - 1]) / p.k + c + add;
        if (i > 0 && i + 1 < n)
            qp.spread = -(lf[i + 1] + lf[i - 1] - 2.0 * lf[i]) / p.k + 2.0 * c +
                        2.0 * add;
    }
    return sol;
}

AsymptoticSolution asymptotic_quotes(const LadderMatrix& m, const ModelParams& p) {
    return asymptotic_quotes(m, decompose(m), p);
}

QuotePair gaussian_approximation(const ModelParams& p, Variant variant, int q) {
    const double c = terminal_offset(p);
    // sqrt(alpha/eta)/k == sqrt(sigma^2 gamma / (2 k A) (1 + gamma/k)^{1+k/gamma})
    const double root = std::sqrt(p.alpha / p.eta) / p.k;

    double bid = 0.0, ask = 0.0, spread = 0.0;
    switch (variant) {
        case Variant::base:
            bid = c + 0.5 * (2.0 * q + 1.0) * root;
            ask = c - 0.5 * (2.0 * q - 1.0) * root;
            spread = 2.0 * c + root;
            break;
        case Variant::drift: {
            const double shift = p.mu / (p.gamma * p.sigma * p.sigma);
            bid = c + (-shift + 0.5 * (2.0 * q + 1.0)) * root;
            ask = c + (shift - 0.5 * (2.0 * q - 1.0)) * root;
            spread = 2.0 * c + root;
            break;
        }
        case Variant::impact: {
            const double widen = std::exp(0.25 * p.k * p.xi);
            bid = c + 0.5 * p.xi + 0.5 * (2.0 * q + 1.0) * widen * root;
            ask = c + 0.5 * p.xi - 0.5 * (2.0 * q - 1.0) * widen * root;
            spread = 2.0 * c + p.xi + widen * root;
            break;
        }
    }
    QuotePair out;
    if (q != p.Q) out.bid = bid;
    if (q != -p.Q) out.ask = ask;
    if (q != p.Q && q != -p.Q) out.spread = spread;
    return out;
}

double gaussian_f0_density(const ModelParams& p, double x) {
    const double ratio = p.alpha / p.eta;
    return std::pow(M_PI, -0.25) * std::pow(ratio, 0.125) *
           std::exp(-0.5 * std::sqrt(ratio) * x * x);
}

QuotePair taylor_quotes_near_T(const ModelParams& p, double t, int q) {
    if (t > p.T) throw DomainError("t", "expansion requires t <= T");
    const double c = terminal_offset(p);
    const double h = p.T - t;
    const double gs2 = p.gamma * p.sigma * p.sigma;
    QuotePair out;
    if (q != p.Q) out.bid = c + 0.5 * (1.0 + 2.0 * q) * gs2 * h;
    if (q != -p.Q) out.ask = c + 0.5 * (1.0 - 2.0 * q) * gs2 * h;
    if (q != p.Q && q != -p.Q) out.spread = 2.0 * c + gs2 * h;
    return out;
}

}  // namespace mmq
