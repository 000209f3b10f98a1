#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "mmq/backtest.hpp"
#include "mmq/quotes.hpp"
#include "mmq/statics.hpp"

namespace mmq {

// Shortest representation that round-trips exactly.
std::string format_double(double x);

// Column layouts are documented in docs/formats.md. Absent quote sides are
// written as empty cells.

// t,q,delta_b,delta_a,psi -- one row per (t, q); rows computed in parallel.
void write_quote_surface(std::ostream& out, const ValueLadder& ladder,
                         const ModelParams& p, std::span<const double> t_grid);

// q,f0,delta_b_inf,delta_a_inf,psi_inf,delta_b_gauss,delta_a_gauss,psi_gauss
void write_asymptotic_table(std::ostream& out, const AsymptoticSolution& sol,
                            const ModelParams& p, Variant variant);

// param,q,d_delta_b,d_delta_a,d_psi,sign_*,claim_*,agrees
void write_statics_table(std::ostream& out, const StaticsReport& report);

// t,q,delta_b,delta_a,psi (near-terminal expansion)
void write_taylor_table(std::ostream& out, const ModelParams& p,
                        std::span<const double> t_grid,
                        std::span<const int> q_values);

// x,f0_tilde
void write_f0_density(std::ostream& out, const ModelParams& p,
                      std::span<const double> x_grid);

// t,ref,pnl,inventory_shares
void write_backtest_series(std::ostream& out, const BacktestReport& report);
// t,side,price,size
void write_backtest_trades(std::ostream& out, const BacktestReport& report);

}  // namespace mmq
