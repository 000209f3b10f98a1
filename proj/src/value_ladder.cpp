#include "mmq/value_ladder.hpp"

#include <cmath>

#include "mmq/errors.hpp"

namespace mmq {

ValueLadder::ValueLadder(LadderMatrix matrix, SpectralDecomposition eig,
                         double horizon)
    : matrix_(std::move(matrix)), eig_(std::move(eig)), horizon_(horizon) {
    if (!(horizon_ > 0.0))
        throw DomainError("T", "horizon must be strictly positive");
    const int n = matrix_.dim();
    coef_.resize(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += eig_.component(i, j) * matrix_.terminal[i];
        coef_[j] = s;
    }
}

double ValueLadder::time_to_go(double t) const {
    const double slack = 1e-9 * std::max(1.0, horizon_);
    if (!(t >= -slack) || !(t <= horizon_ + slack))
        throw DomainError("t", "time outside [0, T]");
    double tau = horizon_ - t;
    if (tau < 0.0) tau = 0.0;
    if (tau > horizon_) tau = horizon_;
    return tau;
}

std::vector<double> ValueLadder::log_values(double t) const {
    const double tau = time_to_go(t);
    const int n = matrix_.dim();
    std::vector<double> out(n);
    if (tau == 0.0) {
        // exact terminal condition, immune to reconstruction noise
        for (int i = 0; i < n; ++i) out[i] = std::log(matrix_.terminal[i]);
        return out;
    }
    const double lambda0 = eig_.eigenvalues[0];
    std::vector<double> a(n);
    for (int j = 0; j < n; ++j)
        a[j] = std::exp(-(eig_.eigenvalues[j] - lambda0) * tau) * coef_[j];
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a[j] * eig_.component(i, j);
        if (!(s > 0.0) || !std::isfinite(s))
            throw InvariantError("value ladder lost positivity at q = " +
                                 std::to_string(matrix_.inventory_of(i)));
        out[i] = -lambda0 * tau + std::log(s);
    }
    return out;
}

double ValueLadder::log_value(double t, int q) const {
    if (q < -matrix_.inv_bound || q > matrix_.inv_bound)
        throw DomainError("q", "inventory outside [-Q, Q]");
    const double tau = time_to_go(t);
    const int i = matrix_.index_of(q);
    if (tau == 0.0) return std::log(matrix_.terminal[i]);
    const double lambda0 = eig_.eigenvalues[0];
    double s = 0.0;
    for (int j = 0; j < matrix_.dim(); ++j)
        s += std::exp(-(eig_.eigenvalues[j] - lambda0) * tau) * coef_[j] *
             eig_.component(i, j);
    if (!(s > 0.0) || !std::isfinite(s))
        throw InvariantError("value ladder lost positivity at q = " +
                             std::to_string(q));
    return -lambda0 * tau + std::log(s);
}

std::vector<double> ValueLadder::values(double t) const {
    std::vector<double> lv = log_values(t);
    const double tau = time_to_go(t);
    std::vector<double> out(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i) out[i] = std::exp(lv[i]);
    if (matrix_.variant == Variant::base) {
        // exponential lower bound, checked as stated (tiny slack for the
        // equality at t = T, where both sides are 1)
        const double aQ2 = matrix_.diag[0];
        const double eta = -matrix_.offdiag;
        const double bound = std::exp(-(aQ2 - eta) * tau);
        for (double v : out)
            if (!(v >= bound * (1.0 - 1e-12)))
                throw InvariantError("value ladder fell below the positivity bound");
    }
    return out;
}

double ValueLadder::value(double t, int q) const {
    double v = std::exp(log_value(t, q));
    if (matrix_.variant == Variant::base) {
        const double tau = time_to_go(t);
        const double bound =
            std::exp(-(matrix_.diag[0] + matrix_.offdiag) * tau);
        if (!(v >= bound * (1.0 - 1e-12)))
            throw InvariantError("value ladder fell below the positivity bound");
    }
    return v;
}

ValueLadder value_ladder(const LadderMatrix& m, double horizon) {
    return ValueLadder(m, decompose(m), horizon);
}

}  // namespace mmq
