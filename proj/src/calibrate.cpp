#include "mmq/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmq/errors.hpp"

namespace mmq {

CalibrationResult calibrate(std::span<const TradeRecord> records,
                            const CalibrateConfig& cfg) {
    if (!(cfg.tick_size > 0.0))
        throw DomainError("tick_size", "must be strictly positive");
    if (!(cfg.bucket_width > 0.0))
        throw DomainError("bucket_width", "must be strictly positive");

    std::span<const TradeRecord> window = records;
    if (cfg.window > 0 && cfg.window < records.size())
        window = records.subspan(records.size() - cfg.window);
    if (window.size() < cfg.min_events)
        throw InsufficientData("need at least " +
                               std::to_string(cfg.min_events) + " records, got " +
                               std::to_string(window.size()));
    for (const auto& r : window)
        if (!r.best_bid || !r.best_ask)
            throw MissingQuotes("calibration needs best_bid/best_ask columns");

    const double duration =
        window.back().timestamp - window.front().timestamp;
    if (!(duration > 0.0))
        throw InsufficientData("window has zero time span");

    // realized volatility of the mid, in Tick units
    double sum_sq = 0.0;
    double prev_mid = 0.0;
    std::vector<double> below, above;  // trade distances from the mid, Ticks
    for (std::size_t i = 0; i < window.size(); ++i) {
        const auto& r = window[i];
        const double mid = 0.5 * (*r.best_bid + *r.best_ask) / cfg.tick_size;
        if (i > 0) {
            const double d = mid - prev_mid;
            sum_sq += d * d;
        }
        prev_mid = mid;
        const double dist = mid - r.price / cfg.tick_size;
        if (dist > 0.0)
            below.push_back(dist);
        else if (dist < 0.0)
            above.push_back(-dist);
    }
    const double sigma_hat = std::sqrt(sum_sq / duration);

    // survival-rate fit: per side, the rate of prints at or beyond distance
    // delta is A e^{-k delta}; pool both sides' (delta, ln rate) points
    std::vector<double> xs, ys;
    int buckets = 0;
    for (auto* side : {&below, &above}) {
        std::sort(side->begin(), side->end());
        for (std::size_t j = 0;; ++j) {
            const double delta = j * cfg.bucket_width;
            const auto it =
                std::lower_bound(side->begin(), side->end(), delta);
            const std::size_t count = side->end() - it;
            if (count < cfg.min_bucket_count) break;
            xs.push_back(delta);
            ys.push_back(std::log(static_cast<double>(count) / duration));
            ++buckets;
        }
    }
    if (buckets < 3)
        throw DegenerateFit("survival grid has " + std::to_string(buckets) +
                            " occupied buckets, need 3");

    // least squares for ln rate = ln A - k delta
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0))
        throw DegenerateFit("survival grid is a single distance");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    CalibrationResult out;
    out.sigma_hat = sigma_hat;
    out.k_hat = -slope;
    out.A_hat = std::exp(intercept);
    out.n_events = window.size();
    out.n_buckets_used = buckets;
    return out;
}

}  // namespace mmq
