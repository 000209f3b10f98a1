#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmq/params.hpp"
#include "mmq/policy.hpp"
#include "mmq/trades.hpp"

namespace mmq {

enum class RefPriceRule { mid, last_trade, ewma };

const char* to_string(RefPriceRule r);
RefPriceRule ref_rule_from_string(const std::string& s);

struct BacktestConfig {
    ModelParams params;          // validated
    double tick_size = 1.0;      // price units per Tick; also the rounding grid
    double requote_dt = 5.0;     // s: max resting time before quotes re-evaluate
    double ats = 1.0;            // shares per order
    RefPriceRule ref_rule = RefPriceRule::mid;
    double ewma_half_life = 10.0;  // s, ewma rule only
    double delta_floor = -10.0;    // Ticks
};

struct QuoteUpdate {
    double t;
    std::optional<double> bid_px, ask_px;  // currency, post-rounding
    char reason;  // 'i' initial, 't' timer expiry, 'f' order completed
};

struct BacktestTrade {
    double t;
    char side;     // 'b' we bought, 'a' we sold
    double price;  // currency (our posted price)
    double size;   // shares
};

struct BacktestEvent {
    double t;
    double ref;               // currency
    double pnl;               // cash + inventory * ref
    double inventory_shares;
};

struct BacktestReport {
    std::string policy_label;
    std::vector<BacktestEvent> series;   // one entry per tape row
    std::vector<BacktestTrade> trades;   // our fills
    std::vector<QuoteUpdate> quote_log;
    double terminal_pnl = 0.0;
    double terminal_cash = 0.0;
    double terminal_inventory_shares = 0.0;
    double final_ref = 0.0;
    std::size_t n_fills_bid = 0, n_fills_ask = 0;
    double max_abs_inventory_ats = 0.0;
};

// Event-driven replay: maintain the reference price per ref_rule (mid when
// best quotes are present, falling back to the last trade), post tick-rounded
// bid/ask of size ats, fill an ask entirely or partially when a trade prints
// at or above it (bid: at or below) at the posted price. Partial fills carry
// their remainder; quotes re-evaluate when an order completes or after
// requote_dt without one. Inventory stays within [-Q, Q] in ats units. The
// policy sees t relative to the first record, capped at params.T.
BacktestReport run_backtest(std::span<const TradeRecord> tape,
                            const BacktestConfig& cfg,
                            const QuotingPolicy& policy);

// Same engine with quotes pinned to the prevailing best bid/ask at each
// re-evaluation. Requires best-quote columns (MissingQuotes otherwise).
BacktestReport naive_baseline(std::span<const TradeRecord> tape,
                              const BacktestConfig& cfg);

// Terminal mark-to-market recomputed from the trade log alone; must agree
// with the streamed terminal_pnl to 1e-9.
double recompute_pnl(const BacktestReport& report);

nlohmann::json report_to_json(const BacktestReport& report);

}  // namespace mmq
