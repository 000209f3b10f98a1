#include "mmq/csv.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <vector>

#include "mmq/errors.hpp"
#include "parallel_util.hpp"

namespace mmq {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

namespace {

std::string cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

}  // namespace

void write_quote_surface(std::ostream& out, const ValueLadder& ladder,
                         const ModelParams& p, std::span<const double> t_grid) {
    const int Q = ladder.inv_bound();
    const int n_t = static_cast<int>(t_grid.size());
    std::vector<QuotePair> rows(static_cast<std::size_t>(n_t) * (2 * Q + 1));

    detail::ExceptionSlot errors;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_t; ++i) errors.run([&, i] {
        const auto row = optimal_quote_row(ladder, p, t_grid[i]);
        std::copy(row.begin(), row.end(),
                  rows.begin() + static_cast<std::size_t>(i) * (2 * Q + 1));
    });
    errors.rethrow();

    out << "t,q,delta_b,delta_a,psi\n";
    for (int i = 0; i < n_t; ++i)
        for (int q = -Q; q <= Q; ++q) {
            const QuotePair& qp =
                rows[static_cast<std::size_t>(i) * (2 * Q + 1) + (q + Q)];
            out << format_double(t_grid[i]) << ',' << q << ',' << cell(qp.bid)
                << ',' << cell(qp.ask) << ',' << cell(qp.spread) << '\n';
        }
}

void write_asymptotic_table(std::ostream& out, const AsymptoticSolution& sol,
                            const ModelParams& p, Variant variant) {
    const int Q = sol.inv_bound();
    out << "q,f0,delta_b_inf,delta_a_inf,psi_inf,delta_b_gauss,delta_a_gauss,"
           "psi_gauss\n";
    for (int q = -Q; q <= Q; ++q) {
        const QuotePair& asym = sol.at(q);
        const QuotePair gauss = gaussian_approximation(p, variant, q);
        out << q << ',' << format_double(sol.f0[q + Q]) << ','
            << cell(asym.bid) << ',' << cell(asym.ask) << ','
            << cell(asym.spread) << ',' << cell(gauss.bid) << ','
            << cell(gauss.ask) << ',' << cell(gauss.spread) << '\n';
    }
}

void write_statics_table(std::ostream& out, const StaticsReport& report) {
    auto sign_cell = [](int s) { return s > 0 ? "+" : (s < 0 ? "-" : "0"); };
    auto claim_cell = [](int s) {
        return s > 0 ? "+" : (s < 0 ? "-" : "none");
    };
    out << "param,q,d_delta_b,d_delta_a,d_psi,sign_delta_b,sign_delta_a,"
           "sign_psi,claim_delta_b,claim_delta_a,claim_psi,agrees\n";
    for (const auto& r : report.rows) {
        out << to_string(r.param) << ',' << r.q << ','
            << format_double(r.d_bid) << ',' << format_double(r.d_ask) << ','
            << format_double(r.d_spread) << ',' << sign_cell(r.sign_bid) << ','
            << sign_cell(r.sign_ask) << ',' << sign_cell(r.sign_spread) << ','
            << claim_cell(r.claim_bid) << ',' << claim_cell(r.claim_ask) << ','
            << claim_cell(r.claim_spread) << ',' << (r.agrees ? 1 : 0) << '\n';
    }
}

void write_taylor_table(std::ostream& out, const ModelParams& p,
                        std::span<const double> t_grid,
                        std::span<const int> q_values) {
    out << "t,q,delta_b,delta_a,psi\n";
    for (double t : t_grid)
        for (int q : q_values) {
            const QuotePair qp = taylor_quotes_near_T(p, t, q);
            out << format_double(t) << ',' << q << ',' << cell(qp.bid) << ','
                << cell(qp.ask) << ',' << cell(qp.spread) << '\n';
        }
}

void write_f0_density(std::ostream& out, const ModelParams& p,
                      std::span<const double> x_grid) {
    out << "x,f0_tilde\n";
    for (double x : x_grid)
        out << format_double(x) << ',' << format_double(gaussian_f0_density(p, x))
            << '\n';
}

void write_backtest_series(std::ostream& out, const BacktestReport& report) {
    out << "t,ref,pnl,inventory_shares\n";
    for (const auto& e : report.series)
        out << format_double(e.t) << ',' << format_double(e.ref) << ','
            << format_double(e.pnl) << ',' << format_double(e.inventory_shares)
            << '\n';
}

void write_backtest_trades(std::ostream& out, const BacktestReport& report) {
    out << "t,side,price,size\n";
    for (const auto& tr : report.trades)
        out << format_double(tr.t) << ',' << tr.side << ','
            << format_double(tr.price) << ',' << format_double(tr.size) << '\n';
}

}  // namespace mmq
