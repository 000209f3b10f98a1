#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmq/trades.hpp"

namespace mmq {

struct CalibrateConfig {
    std::size_t window = 0;        // trailing record count; 0 = all
    std::size_t min_events = 500;  // below this: InsufficientData
    double tick_size = 1.0;        // price units per Tick
    double bucket_width = 0.25;    // Ticks, survival grid spacing
    std::size_t min_bucket_count = 30;
};

struct CalibrationResult {
    double sigma_hat = 0.0;  // Tick s^-1/2, realized volatility of the mid
    double A_hat = 0.0;      // 1/s
    double k_hat = 0.0;      // 1/Tick
    std::size_t n_events = 0;
    int n_buckets_used = 0;
};

// sigma from the realized variance of the mid over the window. (A, k) from a
// least-squares fit of ln(rate of trades printing at or beyond distance
// delta) = ln A - k delta on a delta grid, per side, pooled: under the
// exponential fill law the survival rate at distance delta is exactly
// A e^{-k delta} on each side. Needs best-quote columns to locate the mid
// (MissingQuotes), >= min_events records (InsufficientData) and >= 3 occupied
// grid points (DegenerateFit).
CalibrationResult calibrate(std::span<const TradeRecord> records,
                            const CalibrateConfig& cfg);

}  // namespace mmq
