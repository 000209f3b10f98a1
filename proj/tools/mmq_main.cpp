// mmq -- command-line front end: solve the quote ladder, emit tables, run
// Monte Carlo simulations, replay tick data. See docs/formats.md for the
// file layouts and README.md for examples.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmq/backtest.hpp"
#include "mmq/calibrate.hpp"
#include "mmq/csv.hpp"
#include "mmq/errors.hpp"
#include "mmq/manifest.hpp"
#include "mmq/policy.hpp"
#include "mmq/simulator.hpp"
#include "mmq/statics.hpp"
#include "mmq/trades.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string variant = "auto";
    // per-field overrides; NaN = not set
    std::map<std::string, double> overrides;
    std::vector<std::string> argv;
};

mmq::ModelParams resolve_params(const GlobalOpts& g) {
    json j = json::object();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in)
            throw mmq::DomainError("config", "cannot open '" + g.config_path + "'");
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw mmq::DomainError("config", std::string("invalid JSON: ") + e.what());
        }
        if (j.contains("params")) j = j["params"];  // accept backtest-style files
    }
    for (const auto& [key, value] : g.overrides) {
        if (key == "Q")
            j[key] = static_cast<long long>(value);
        else
            j[key] = value;
    }
    return mmq::params_from_json(j);
}

mmq::Variant resolve_variant(const GlobalOpts& g, const mmq::ModelParams& p) {
    if (g.variant == "auto") {
        if (p.xi > 0.0) return mmq::Variant::impact;
        if (p.mu != 0.0) return mmq::Variant::drift;
        return mmq::Variant::base;
    }
    return mmq::variant_from_string(g.variant);
}

std::vector<double> parse_grid(const std::string& text) {
    // "start:stop:step"
    auto p1 = text.find(':');
    auto p2 = text.find(':', p1 == std::string::npos ? 0 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw mmq::DomainError("grid", "expected start:stop:step, got '" + text + "'");
    const double start = std::stod(text.substr(0, p1));
    const double stop = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
    const double step = std::stod(text.substr(p2 + 1));
    if (!(step > 0.0) || stop < start)
        throw mmq::DomainError("grid", "need step > 0 and stop >= start");
    std::vector<double> g;
    const long n = std::lround((stop - start) / step);
    for (long i = 0; i <= n; ++i) {
        double v = start + i * step;
        if (v > stop) v = stop;
        g.push_back(v);
    }
    if (g.empty() || g.back() < stop) g.push_back(stop);
    return g;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        throw mmq::DomainError("out", "cannot write '" + path.string() + "'");
    return out;
}

void finish(const GlobalOpts& g, const std::string& command, json config,
            std::uint64_t seed, std::vector<std::string> outputs) {
    mmq::RunManifest m;
    m.command = command;
    m.argv = g.argv;
    m.resolved_config = std::move(config);
    m.seed = seed;
    m.outputs = std::move(outputs);
    const fs::path path = fs::path(g.out_dir) / (command + "_manifest.json");
    mmq::write_manifest(path.string(), m);
}

mmq::QuotingPolicy make_policy(const std::string& name,
                               const mmq::ModelParams& p, mmq::Variant variant,
                               double half_spread_override) {
    if (name == "optimal") {
        auto ladder = std::make_shared<mmq::ValueLadder>(
            mmq::value_ladder(mmq::build_matrix(p, variant), p.T));
        return mmq::optimal_policy(ladder, p);
    }
    if (name == "asymptotic") {
        auto sol = mmq::asymptotic_quotes(mmq::build_matrix(p, variant), p);
        return mmq::asymptotic_policy(sol);
    }
    if (name == "gaussian") return mmq::gaussian_policy(p, variant);
    if (name == "taylor") return mmq::taylor_policy(p);
    if (name == "symmetric") {
        double half = half_spread_override;
        if (!(half > 0.0)) {
            const auto qp = mmq::gaussian_approximation(p, variant, 0);
            half = *qp.spread / 2.0;
        }
        return mmq::symmetric_policy(half, p.Q);
    }
    throw mmq::DomainError("policy", "unknown policy '" + name + "'");
}

int dispatch(int argc, char** argv) {
    CLI::App app{"inventory-aware market-making toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    for (int i = 0; i < argc; ++i) g.argv.emplace_back(argv[i]);

    auto add_common = [&](CLI::App* cmd, bool needs_params) {
        cmd->add_option("--config", g.config_path, "JSON parameter file")
            ->envname("MMQ_CONFIG");
        cmd->add_option("--out", g.out_dir, "output directory");
        if (needs_params) {
            cmd->add_option("--variant", g.variant,
                            "base|drift|impact|auto (auto infers from mu, xi)");
            for (const char* key :
                 {"sigma", "mu", "A", "k", "gamma", "xi", "T"})
                cmd->add_option_function<double>(
                    std::string("--") + key,
                    [&g, key](double v) { g.overrides[key] = v; },
                    std::string("override ") + key);
            cmd->add_option_function<double>(
                "--Q", [&g](double v) { g.overrides["Q"] = v; }, "override Q");
        }
    };

    // quotes
    auto* quotes = app.add_subcommand("quotes", "finite-horizon quote surface");
    std::string t_grid_spec;
    quotes->add_option("--t-grid", t_grid_spec, "time grid start:stop:step");
    add_common(quotes, true);

    // asymptotic
    auto* asym = app.add_subcommand(
        "asymptotic", "ground eigenvector, asymptotic and gaussian quotes");
    add_common(asym, true);

    // approx
    auto* approx = app.add_subcommand(
        "approx", "closed-form approximations: gaussian, taylor, f0 density");
    std::string approx_tgrid, approx_xgrid = "-30:30:0.25";
    approx->add_option("--t-grid", approx_tgrid, "taylor time grid");
    approx->add_option("--x-grid", approx_xgrid, "density grid start:stop:step");
    add_common(approx, true);

    // statics
    auto* statics = app.add_subcommand(
        "statics", "comparative-statics sign table for sigma^2, mu, A, k");
    std::vector<int> statics_qs{-5, 0, 5};
    double rel_step = 1e-4;
    statics->add_option("--qs", statics_qs, "inventories to probe");
    statics->add_option("--rel-step", rel_step, "relative perturbation");
    add_common(statics, true);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo P&L simulation");
    std::string policy_name = "optimal";
    mmq::SimConfig sim_cfg;
    sim_cfg.n_paths = 1000;
    double half_spread = 0.0;
    bool serial = false;
    bool emit_tape = false;
    double tape_duration = 0.0;
    std::string tape_out = "tape.csv";
    sim->add_option("--policy", policy_name,
                    "optimal|asymptotic|gaussian|taylor|symmetric");
    sim->add_option("--n-paths", sim_cfg.n_paths, "number of paths");
    sim->add_option("--dt", sim_cfg.dt, "step size, s");
    sim->add_option("--seed", sim_cfg.seed, "RNG seed");
    sim->add_option("--s0", sim_cfg.s0, "initial reference price, Ticks");
    sim->add_option("--q0", sim_cfg.q0, "initial inventory");
    sim->add_option("--x0", sim_cfg.x0, "initial cash");
    sim->add_option("--tick", sim_cfg.tick, "round posted prices to this grid");
    sim->add_option("--delta-floor", sim_cfg.delta_floor,
                    "offset lower bound, Ticks");
    sim->add_option("--record", sim_cfg.record_paths,
                    "dump full trajectories for the first N paths");
    sim->add_option("--half-spread", half_spread,
                    "symmetric policy half-spread (default: gaussian psi/2)");
    sim->add_flag("--serial", serial, "run the serial reference driver");
    sim->add_flag("--emit-tape", emit_tape,
                  "generate a maker-free trade tape instead of simulating");
    sim->add_option("--tape-duration", tape_duration,
                    "tape length, s (default T)");
    sim->add_option("--tape-out", tape_out, "tape file name");
    add_common(sim, true);

    // backtest
    auto* bt = app.add_subcommand("backtest", "event-driven tick-data replay");
    std::string data_path, bt_policy = "asymptotic", ref_rule = "mid";
    mmq::BacktestConfig bt_cfg;
    bool with_naive = false;
    bt->add_option("--data", data_path, "trade CSV")->required();
    bt->add_option("--policy", bt_policy,
                   "optimal|asymptotic|gaussian|taylor|symmetric");
    bt->add_option("--tick-size", bt_cfg.tick_size, "price units per Tick");
    bt->add_option("--requote-dt", bt_cfg.requote_dt, "requote period, s");
    bt->add_option("--ats", bt_cfg.ats, "order size, shares");
    bt->add_option("--ref-rule", ref_rule, "mid|last-trade|ewma");
    bt->add_option("--ewma-half-life", bt_cfg.ewma_half_life, "s");
    bt->add_option("--delta-floor", bt_cfg.delta_floor, "Ticks");
    bt->add_flag("--naive", with_naive, "also run the first-limit baseline");
    add_common(bt, true);

    // calibrate
    auto* cal = app.add_subcommand("calibrate",
                                   "fit sigma, A, k from trade-by-trade data");
    std::string cal_data;
    mmq::CalibrateConfig cal_cfg;
    cal->add_option("--data", cal_data, "trade CSV")->required();
    cal->add_option("--window", cal_cfg.window, "trailing record count (0=all)");
    cal->add_option("--min-events", cal_cfg.min_events, "minimum record count");
    cal->add_option("--tick-size", cal_cfg.tick_size, "price units per Tick");
    cal->add_option("--bucket-width", cal_cfg.bucket_width, "Ticks");
    add_common(cal, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 1;
    }
    fs::create_directories(g.out_dir);

    if (quotes->parsed()) {
        const auto p = resolve_params(g);
        const auto variant = resolve_variant(g, p);
        const auto ladder = mmq::value_ladder(mmq::build_matrix(p, variant), p.T);
        const auto grid = parse_grid(
            t_grid_spec.empty()
                ? "0:" + mmq::format_double(p.T) + ":" + mmq::format_double(p.T / 100.0)
                : t_grid_spec);
        auto out = open_out(fs::path(g.out_dir) / "quote_surface.csv");
        mmq::write_quote_surface(out, ladder, p, grid);
        json cfg = {{"params", mmq::params_to_json(p)},
                    {"variant", mmq::to_string(variant)},
                    {"t_grid", grid}};
        finish(g, "quotes", cfg, 0, {"quote_surface.csv"});
        return 0;
    }

    if (asym->parsed()) {
        const auto p = resolve_params(g);
        const auto variant = resolve_variant(g, p);
        const auto sol = mmq::asymptotic_quotes(mmq::build_matrix(p, variant), p);
        auto out = open_out(fs::path(g.out_dir) / "asymptotic.csv");
        mmq::write_asymptotic_table(out, sol, p, variant);
        json cfg = {{"params", mmq::params_to_json(p)},
                    {"variant", mmq::to_string(variant)}};
        finish(g, "asymptotic", cfg, 0, {"asymptotic.csv"});
        return 0;
    }

    if (approx->parsed()) {
        const auto p = resolve_params(g);
        const auto variant = resolve_variant(g, p);
        const auto t_grid = parse_grid(
            approx_tgrid.empty()
                ? mmq::format_double(std::max(0.0, p.T - 30.0)) + ":" +
                      mmq::format_double(p.T) + ":0.5"
                : approx_tgrid);
        std::vector<int> qs;
        for (int q = -p.Q; q <= p.Q; ++q) qs.push_back(q);

        auto gauss = open_out(fs::path(g.out_dir) / "gaussian_quotes.csv");
        gauss << "q,delta_b,delta_a,psi\n";
        for (int q : qs) {
            const auto qp = mmq::gaussian_approximation(p, variant, q);
            gauss << q << ',' << (qp.bid ? mmq::format_double(*qp.bid) : "")
                  << ',' << (qp.ask ? mmq::format_double(*qp.ask) : "") << ','
                  << (qp.spread ? mmq::format_double(*qp.spread) : "") << '\n';
        }
        auto taylor = open_out(fs::path(g.out_dir) / "taylor_quotes.csv");
        std::vector<int> near{-2, -1, 0, 1, 2};
        mmq::write_taylor_table(taylor, p, t_grid, near);
        auto dens = open_out(fs::path(g.out_dir) / "f0_density.csv");
        mmq::write_f0_density(dens, p, parse_grid(approx_xgrid));
        json cfg = {{"params", mmq::params_to_json(p)},
                    {"variant", mmq::to_string(variant)},
                    {"t_grid", t_grid},
                    {"x_grid", approx_xgrid}};
        finish(g, "approx", cfg, 0,
               {"gaussian_quotes.csv", "taylor_quotes.csv", "f0_density.csv"});
        return 0;
    }

    if (statics->parsed()) {
        const auto p = resolve_params(g);
        const auto report = mmq::comparative_statics_report(p, statics_qs, rel_step);
        auto out = open_out(fs::path(g.out_dir) / "statics.csv");
        mmq::write_statics_table(out, report);
        std::cout << (report.all_claims_hold
                          ? "all documented sign claims hold\n"
                          : "sign table DISAGREES with documented claims\n");
        json cfg = {{"params", mmq::params_to_json(p)},
                    {"qs", statics_qs},
                    {"rel_step", rel_step}};
        finish(g, "statics", cfg, 0, {"statics.csv"});
        return 0;
    }

    if (sim->parsed()) {
        const auto p = resolve_params(g);
        const auto variant = resolve_variant(g, p);

        if (emit_tape) {
            mmq::TapeConfig tc;
            tc.duration = tape_duration > 0.0 ? tape_duration : p.T;
            tc.seed = sim_cfg.seed;
            tc.s0 = sim_cfg.s0;
            const auto tape = mmq::generate_tape(p, tc);
            mmq::save_trades((fs::path(g.out_dir) / tape_out).string(), tape);
            json cfg = {{"params", mmq::params_to_json(p)},
                        {"duration", tc.duration},
                        {"s0", tc.s0},
                        {"half_spread", tc.half_spread}};
            finish(g, "simulate", cfg, tc.seed, {tape_out});
            return 0;
        }

        mmq::QuotingPolicy policy;
        if (policy_name == "optimal") {
            auto ladder = std::make_shared<mmq::ValueLadder>(
                mmq::value_ladder(mmq::build_matrix(p, variant), p.T));
            const int n_steps = static_cast<int>(std::llround(p.T / sim_cfg.dt));
            policy = mmq::tabulated_optimal_policy(ladder, p, sim_cfg.dt, n_steps);
        } else {
            policy = make_policy(policy_name, p, variant, half_spread);
        }
        sim_cfg.parallel = !serial;
        const auto result = mmq::simulate(p, policy, sim_cfg);

        auto out = open_out(fs::path(g.out_dir) / "sim_summary.json");
        out << mmq::summary_to_json(result.summary).dump(2) << '\n';
        std::vector<std::string> outputs{"sim_summary.json"};

        if (!result.recorded.empty()) {
            auto paths = open_out(fs::path(g.out_dir) / "sim_paths.csv");
            paths << "path,t,price,cash,inventory\n";
            for (std::size_t i = 0; i < result.recorded.size(); ++i) {
                const auto& sp = result.recorded[i];
                for (std::size_t j = 0; j < sp.times.size(); ++j)
                    paths << i << ',' << mmq::format_double(sp.times[j]) << ','
                          << mmq::format_double(sp.prices[j]) << ','
                          << mmq::format_double(sp.cash[j]) << ','
                          << sp.inventory[j] << '\n';
            }
            auto fills = open_out(fs::path(g.out_dir) / "sim_fills.csv");
            fills << "path,t,side,price,q_after\n";
            for (std::size_t i = 0; i < result.recorded.size(); ++i)
                for (const auto& f : result.recorded[i].fills)
                    fills << i << ',' << mmq::format_double(f.t) << ','
                          << f.side << ',' << mmq::format_double(f.price)
                          << ',' << f.q_after << '\n';
            outputs.push_back("sim_paths.csv");
            outputs.push_back("sim_fills.csv");
        }
        json cfg = {{"params", mmq::params_to_json(p)},
                    {"variant", mmq::to_string(variant)},
                    {"policy", policy.label},
                    {"n_paths", sim_cfg.n_paths},
                    {"dt", sim_cfg.dt},
                    {"s0", sim_cfg.s0},
                    {"q0", sim_cfg.q0},
                    {"tick", sim_cfg.tick},
                    {"delta_floor", sim_cfg.delta_floor},
                    {"serial", serial}};
        finish(g, "simulate", cfg, sim_cfg.seed, outputs);
        return 0;
    }

    if (bt->parsed()) {
        const auto p = resolve_params(g);
        const auto variant = resolve_variant(g, p);
        bt_cfg.params = p;
        bt_cfg.ref_rule = mmq::ref_rule_from_string(ref_rule);
        const auto tape = mmq::load_trades(data_path);
        const auto policy = make_policy(bt_policy, p, variant, 0.0);
        const auto report = mmq::run_backtest(tape, bt_cfg, policy);

        auto dump = [&](const mmq::BacktestReport& rep, const std::string& stem,
                        std::vector<std::string>& outs) {
            auto j = open_out(fs::path(g.out_dir) / (stem + "_report.json"));
            j << mmq::report_to_json(rep).dump(2) << '\n';
            auto ev = open_out(fs::path(g.out_dir) / (stem + "_events.csv"));
            mmq::write_backtest_series(ev, rep);
            auto tr = open_out(fs::path(g.out_dir) / (stem + "_trades.csv"));
            mmq::write_backtest_trades(tr, rep);
            outs.push_back(stem + "_report.json");
            outs.push_back(stem + "_events.csv");
            outs.push_back(stem + "_trades.csv");
        };
        std::vector<std::string> outputs;
        dump(report, "backtest", outputs);
        if (with_naive)
            dump(mmq::naive_baseline(tape, bt_cfg), "naive", outputs);

        json cfg = {{"params", mmq::params_to_json(p)},
                    {"variant", mmq::to_string(variant)},
                    {"policy", policy.label},
                    {"data", data_path},
                    {"tick_size", bt_cfg.tick_size},
                    {"requote_dt", bt_cfg.requote_dt},
                    {"ats", bt_cfg.ats},
                    {"reference_price_rule", mmq::to_string(bt_cfg.ref_rule)},
                    {"delta_floor", bt_cfg.delta_floor}};
        finish(g, "backtest", cfg, 0, outputs);
        return 0;
    }

    if (cal->parsed()) {
        const auto tape = mmq::load_trades(cal_data);
        const auto result = mmq::calibrate(tape, cal_cfg);
        auto out = open_out(fs::path(g.out_dir) / "calibration.json");
        json j = {{"sigma_hat", result.sigma_hat},
                  {"A_hat", result.A_hat},
                  {"k_hat", result.k_hat},
                  {"n_events", result.n_events},
                  {"n_buckets_used", result.n_buckets_used}};
        out << j.dump(2) << '\n';
        json cfg = {{"data", cal_data},
                    {"window", cal_cfg.window},
                    {"min_events", cal_cfg.min_events},
                    {"tick_size", cal_cfg.tick_size},
                    {"bucket_width", cal_cfg.bucket_width}};
        finish(g, "calibrate", cfg, 0, {"calibration.json"});
        return 0;
    }

    return 1;
}

void emit_error(const char* type, const std::string& message) {
    json j = {{"error", {{"type", type}, {"message", message}}}};
    std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const mmq::ConvergenceError& e) {
        emit_error("ConvergenceError", e.what());
        return 3;
    } catch (const mmq::InvariantError& e) {
        emit_error("InvariantError", e.what());
        return 3;
    } catch (const mmq::OrderingError& e) {
        emit_error("OrderingError", e.what());
        return 2;
    } catch (const mmq::ParseError& e) {
        emit_error("ParseError", e.what());
        return 2;
    } catch (const mmq::DomainError& e) {
        emit_error("DomainError", e.what());
        return 2;
    } catch (const mmq::InsufficientData& e) {
        emit_error("InsufficientData", e.what());
        return 2;
    } catch (const mmq::DegenerateFit& e) {
        emit_error("DegenerateFit", e.what());
        return 2;
    } catch (const mmq::MissingQuotes& e) {
        emit_error("MissingQuotes", e.what());
        return 2;
    } catch (const mmq::Error& e) {
        emit_error("Error", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("InternalError", e.what());
        return 3;
    }
}
