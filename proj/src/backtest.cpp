#include "mmq/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "mmq/errors.hpp"
#include "mmq/tick.hpp"

namespace mmq {

const char* to_string(RefPriceRule r) {
    switch (r) {
        case RefPriceRule::mid: return "mid";
        case RefPriceRule::last_trade: return "last-trade";
        case RefPriceRule::ewma: return "ewma";
    }
    return "?";
}

RefPriceRule ref_rule_from_string(const std::string& s) {
    if (s == "mid") return RefPriceRule::mid;
    if (s == "last-trade") return RefPriceRule::last_trade;
    if (s == "ewma") return RefPriceRule::ewma;
    throw DomainError("reference_price_rule", "unknown rule '" + s + "'");
}

namespace {

void check_config(const BacktestConfig& cfg) {
    if (!(cfg.requote_dt > 0.0))
        throw DomainError("requote_dt", "must be strictly positive");
    if (!(cfg.ats > 0.0)) throw DomainError("ats", "must be strictly positive");
    if (!(cfg.tick_size > 0.0))
        throw DomainError("tick_size", "must be strictly positive");
    if (cfg.ref_rule == RefPriceRule::ewma && !(cfg.ewma_half_life > 0.0))
        throw DomainError("ewma_half_life", "must be strictly positive");
}

struct Order {
    double px = 0.0;         // currency
    double remaining = 0.0;  // shares
};

// Desired posted prices for a requote at tnow, given the prevailing
// reference, the last seen tape row and the current inventory in shares.
// Unset optionals mean "do not post this side".
using QuoteSource =
    std::function<void(double tnow, double ref, const TradeRecord& last_row,
                       double inv, std::optional<double>& bid_px,
                       std::optional<double>& ask_px)>;

// Shared event loop. Quotes rest until a print fills them (ask: trade at or
// above; bid: at or below, executed at the posted price, possibly partially)
// or until requote_dt elapses; partial remainders rest until completion or
// expiry. Requotes happen on order completion and on expiry only. P&L is
// marked at the reference price after every row.
BacktestReport run_event_loop(std::span<const TradeRecord> tape,
                              const BacktestConfig& cfg,
                              const QuoteSource& source,
                              const std::string& label) {
    check_config(cfg);
    BacktestReport rep;
    rep.policy_label = label;
    if (tape.empty()) return rep;

    const double bound_shares = cfg.params.Q * cfg.ats;
    const double eps_shares = 1e-9 * cfg.ats;

    double cash = 0.0, inv = 0.0;
    std::optional<Order> bid, ask;
    std::optional<double> ref;
    const TradeRecord* last_row = nullptr;
    double last_row_t = 0.0;
    double last_quote = 0.0;
    bool quoted = false;

    auto requote = [&](double tnow, char reason) {
        bid.reset();
        ask.reset();
        std::optional<double> bid_px, ask_px;
        source(tnow, *ref, *last_row, inv, bid_px, ask_px);
        if (bid_px && inv + cfg.ats <= bound_shares + eps_shares)
            bid = Order{*bid_px, cfg.ats};
        else
            bid_px.reset();
        if (ask_px && inv - cfg.ats >= -bound_shares - eps_shares)
            ask = Order{*ask_px, cfg.ats};
        else
            ask_px.reset();
        last_quote = tnow;
        quoted = true;
        rep.quote_log.push_back({tnow, bid_px, ask_px, reason});
    };

    for (const auto& row : tape) {
        if (quoted) {
            while (last_quote + cfg.requote_dt <= row.timestamp)
                requote(last_quote + cfg.requote_dt, 't');
        }

        // fills against quotes posted before this print
        bool completed = false;
        if (ask && row.price >= ask->px) {
            const double m = std::min(ask->remaining, row.size);
            cash += ask->px * m;
            inv -= m;
            ask->remaining -= m;
            ++rep.n_fills_ask;
            rep.trades.push_back({row.timestamp, 'a', ask->px, m});
            if (ask->remaining <= eps_shares) {
                ask.reset();
                completed = true;
            }
        } else if (bid && row.price <= bid->px) {
            const double m = std::min(bid->remaining, row.size);
            cash -= bid->px * m;
            inv += m;
            bid->remaining -= m;
            ++rep.n_fills_bid;
            rep.trades.push_back({row.timestamp, 'b', bid->px, m});
            if (bid->remaining <= eps_shares) {
                bid.reset();
                completed = true;
            }
        }

        // reference price
        double target = row.price;
        if (cfg.ref_rule != RefPriceRule::last_trade && row.best_bid &&
            row.best_ask)
            target = 0.5 * (*row.best_bid + *row.best_ask);
        if (cfg.ref_rule == RefPriceRule::ewma && ref) {
            const double w =
                std::exp(-std::numbers::ln2 * (row.timestamp - last_row_t) /
                         cfg.ewma_half_life);
            ref = w * *ref + (1.0 - w) * target;
        } else {
            ref = target;
        }
        last_row = &row;
        last_row_t = row.timestamp;

        if (!quoted)
            requote(row.timestamp, 'i');
        else if (completed)
            requote(row.timestamp, 'f');

        rep.series.push_back({row.timestamp, *ref, cash + inv * *ref, inv});
        rep.max_abs_inventory_ats =
            std::max(rep.max_abs_inventory_ats, std::abs(inv) / cfg.ats);
    }

    rep.terminal_cash = cash;
    rep.terminal_inventory_shares = inv;
    rep.final_ref = *ref;
    rep.terminal_pnl = rep.series.back().pnl;
    return rep;
}

}  // namespace

BacktestReport run_backtest(std::span<const TradeRecord> tape,
                            const BacktestConfig& cfg,
                            const QuotingPolicy& policy) {
    const double t0 = tape.empty() ? 0.0 : tape.front().timestamp;
    auto source = [&cfg, &policy, t0](double tnow, double ref,
                                      const TradeRecord&, double inv,
                                      std::optional<double>& bid_px,
                                      std::optional<double>& ask_px) {
        const double t_rel = std::clamp(tnow - t0, 0.0, cfg.params.T);
        int qpol = static_cast<int>(std::llround(inv / cfg.ats));
        qpol = std::clamp(qpol, -cfg.params.Q, cfg.params.Q);
        QuotePair qp = policy.quote(t_rel, qpol);
        if (qp.bid) {
            const double d = std::max(*qp.bid, cfg.delta_floor);
            bid_px = round_bid_to_tick(ref - d * cfg.tick_size, cfg.tick_size);
        }
        if (qp.ask) {
            const double d = std::max(*qp.ask, cfg.delta_floor);
            ask_px = round_ask_to_tick(ref + d * cfg.tick_size, cfg.tick_size);
        }
    };
    return run_event_loop(tape, cfg, source, policy.label);
}

BacktestReport naive_baseline(std::span<const TradeRecord> tape,
                              const BacktestConfig& cfg) {
    for (const auto& row : tape)
        if (!row.best_bid || !row.best_ask)
            throw MissingQuotes("naive baseline needs best_bid/best_ask columns");

    auto source = [&cfg](double, double, const TradeRecord& last_row, double,
                         std::optional<double>& bid_px,
                         std::optional<double>& ask_px) {
        bid_px = round_bid_to_tick(*last_row.best_bid, cfg.tick_size);
        ask_px = round_ask_to_tick(*last_row.best_ask, cfg.tick_size);
    };
    return run_event_loop(tape, cfg, source, "naive-first-limit");
}

double recompute_pnl(const BacktestReport& rep) {
    double cash = 0.0, inv = 0.0;
    for (const auto& tr : rep.trades) {
        if (tr.side == 'b') {
            cash -= tr.price * tr.size;
            inv += tr.size;
        } else {
            cash += tr.price * tr.size;
            inv -= tr.size;
        }
    }
    return cash + inv * rep.final_ref;
}

nlohmann::json report_to_json(const BacktestReport& rep) {
    return {{"policy", rep.policy_label},
            {"terminal_pnl", rep.terminal_pnl},
            {"terminal_cash", rep.terminal_cash},
            {"terminal_inventory_shares", rep.terminal_inventory_shares},
            {"final_ref", rep.final_ref},
            {"n_fills_bid", rep.n_fills_bid},
            {"n_fills_ask", rep.n_fills_ask},
            {"n_events", rep.series.size()},
            {"n_quote_updates", rep.quote_log.size()},
            {"max_abs_inventory_ats", rep.max_abs_inventory_ats}};
}

}  // namespace mmq
