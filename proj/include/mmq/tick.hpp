#pragma once

#include <cmath>

namespace mmq {

// Quotes must sit on the tick grid. Rounding is to the nearest tick with
// ties broken away from the reference price: a bid rounds down, an ask up.
// Rounding an on-grid price is the identity. tick <= 0 disables rounding.

inline double round_bid_to_tick(double price, double tick) {
    if (tick <= 0.0) return price;
    return std::ceil(price / tick - 0.5) * tick;
}

inline double round_ask_to_tick(double price, double tick) {
    if (tick <= 0.0) return price;
    return std::floor(price / tick + 0.5) * tick;
}

}  // namespace mmq
