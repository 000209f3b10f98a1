#include "mmq/ladder.hpp"

#include <cmath>

#include "mmq/errors.hpp"

namespace mmq {

double LadderMatrix::inf_norm() const {
    double best = 0.0;
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(offdiag);
        if (i + 1 < n) row += std::abs(offdiag);
        best = std::max(best, row);
    }
    return best;
}

LadderMatrix build_matrix(const ModelParams& p, Variant variant) {
    LadderMatrix m;
    m.inv_bound = p.Q;
    m.variant = variant;
    const int n = m.dim();
    m.diag.resize(n);
    m.terminal.assign(n, 1.0);

    switch (variant) {
        case Variant::base:
            m.offdiag = -p.eta;
            for (int i = 0; i < n; ++i) {
                double q = m.inventory_of(i);
                m.diag[i] = p.alpha * q * q;
            }
            break;
        case Variant::drift:
            m.offdiag = -p.eta;
            for (int i = 0; i < n; ++i) {
                double q = m.inventory_of(i);
                m.diag[i] = p.alpha * q * q - p.beta * q;
            }
            break;
        case Variant::impact:
            m.offdiag = -p.eta * std::exp(-0.5 * p.k * p.xi);
            for (int i = 0; i < n; ++i) {
                double q = m.inventory_of(i);
                m.diag[i] = p.alpha * q * q;
                m.terminal[i] = std::exp(-0.5 * p.k * p.xi * q * q);
            }
            break;
    }
    return m;
}

std::vector<double> multiply(const LadderMatrix& m, std::span<const double> x) {
    const int n = m.dim();
    if (static_cast<int>(x.size()) != n)
        throw DomainError("multiply: dimension mismatch");
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double v = m.diag[i] * x[i];
        if (i > 0) v += m.offdiag * x[i - 1];
        if (i + 1 < n) v += m.offdiag * x[i + 1];
        y[i] = v;
    }
    return y;
}

}  // namespace mmq
