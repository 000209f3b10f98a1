#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmq {

// One row of trade-by-trade market data. Prices are in quote currency; the
// backtest converts to Ticks via its tick_size. Best quotes are optional and
// only needed by the naive baseline, the mid reference rule and calibration.
struct TradeRecord {
    double timestamp = 0.0;  // seconds, nondecreasing
    double price = 0.0;      // > 0
    double size = 0.0;       // > 0, shares
    std::optional<double> best_bid;
    std::optional<double> best_ask;
};

// CSV with header `timestamp,price,size` or
// `timestamp,price,size,best_bid,best_ask` (best-quote cells may be empty).
// Malformed rows raise ParseError with their line number; a timestamp
// regression beyond 1e-9 s raises OrderingError. An empty file yields an
// empty sequence and a warning on stderr.
std::vector<TradeRecord> ingest_trades(std::istream& in);
std::vector<TradeRecord> load_trades(const std::string& path);

void emit_trades(std::ostream& out, std::span<const TradeRecord> records);
void save_trades(const std::string& path, std::span<const TradeRecord> records);

}  // namespace mmq
