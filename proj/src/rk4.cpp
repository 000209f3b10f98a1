#include "mmq/rk4.hpp"

#include <algorithm>
#include <cmath>

#include "mmq/errors.hpp"

namespace mmq {

namespace {

// y' = -M y, one RK4 step of size h, in place
void rk4_step(const LadderMatrix& m, std::vector<double>& y, double h,
              std::vector<double>& k1, std::vector<double>& k2,
              std::vector<double>& k3, std::vector<double>& k4,
              std::vector<double>& tmp) {
    const int n = m.dim();
    auto neg_apply = [&](const std::vector<double>& x, std::vector<double>& out) {
        for (int i = 0; i < n; ++i) {
            double v = m.diag[i] * x[i];
            if (i > 0) v += m.offdiag * x[i - 1];
            if (i + 1 < n) v += m.offdiag * x[i + 1];
            out[i] = -v;
        }
    };
    neg_apply(y, k1);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    neg_apply(tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    neg_apply(tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    neg_apply(tmp, k4);
    for (int i = 0; i < n; ++i)
        y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

LadderGrid integrate_ode_oracle(const LadderMatrix& m, double horizon,
                                double step,
                                std::span<const double> record_times) {
    if (!(step > 0.0)) throw DomainError("step", "must be strictly positive");
    if (!(horizon > 0.0)) throw DomainError("T", "must be strictly positive");

    const int n = m.dim();
    LadderGrid grid;
    grid.horizon = horizon;
    grid.step = step;
    grid.dim = n;
    grid.times.assign(record_times.begin(), record_times.end());
    std::sort(grid.times.begin(), grid.times.end());
    grid.values.assign(grid.times.size() * static_cast<std::size_t>(n), 0.0);

    // map each record time t to its step index along s = T - t
    std::vector<std::pair<long, std::size_t>> targets;  // (step index, row)
    long max_steps = 0;
    for (std::size_t r = 0; r < grid.times.size(); ++r) {
        double t = grid.times[r];
        if (t < 0.0 || t > horizon)
            throw DomainError("t", "record time outside [0, T]");
        double s = horizon - t;
        long idx = std::lround(s / step);
        if (std::abs(idx * step - s) > 1e-9)
            throw DomainError("t", "record time not on the step grid");
        targets.emplace_back(idx, r);
        max_steps = std::max(max_steps, idx);
    }
    std::sort(targets.begin(), targets.end());

    std::vector<double> y = m.terminal;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    std::size_t next = 0;
    for (long s = 0; s <= max_steps; ++s) {
        while (next < targets.size() && targets[next].first == s) {
            std::size_t row = targets[next].second;
            std::copy(y.begin(), y.end(),
                      grid.values.begin() + row * static_cast<std::size_t>(n));
            ++next;
        }
        if (s == max_steps) break;
        rk4_step(m, y, step, k1, k2, k3, k4, tmp);
    }
    return grid;
}

}  // namespace mmq
