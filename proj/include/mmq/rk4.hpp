#pragma once

#include <span>
#include <vector>

#include "mmq/ladder.hpp"

namespace mmq {

// Ladder values on a fixed time grid, produced by direct ODE integration.
struct LadderGrid {
    double horizon = 0.0;
    double step = 0.0;
    std::vector<double> times;   // ascending, within [0, horizon]
    int dim = 0;
    std::vector<double> values;  // times.size() x dim, row-major

    double value(std::size_t time_index, int q_index) const {
        return values[time_index * static_cast<std::size_t>(dim) + q_index];
    }
};

// Classical fixed-step RK4 integration of the ladder system
//
//   dv_q/dt = diag_q v_q + offdiag (v_{q-1} + v_{q+1})     (one neighbor at q = +-Q)
//
// backward from v(horizon) = w, recording the requested times. Each record
// time must sit on the step grid (within 1e-9 s). This integrator exists as
// an independent cross-check of the spectral evaluation path and shares no
// code with it beyond the matrix itself.
LadderGrid integrate_ode_oracle(const LadderMatrix& m, double horizon,
                                double step,
                                std::span<const double> record_times);

}  // namespace mmq
