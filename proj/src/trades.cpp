#include "mmq/trades.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "mmq/csv.hpp"
#include "mmq/errors.hpp"

namespace mmq {

namespace {

constexpr double kOrderTolerance = 1e-9;  // s

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& cell, std::size_t line,
                    const char* what) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError(line, std::string("bad ") + what + " '" + cell + "'");
    return v;
}

}  // namespace

std::vector<TradeRecord> ingest_trades(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool with_quotes = false;

    if (!std::getline(in, line)) {
        std::cerr << "warning: empty trade file\n";
        return {};
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "timestamp,price,size")
        with_quotes = false;
    else if (line == "timestamp,price,size,best_bid,best_ask")
        with_quotes = true;
    else
        throw ParseError(line_no, "unrecognized header '" + line + "'");

    std::vector<TradeRecord> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv(line);
        const std::size_t expect = with_quotes ? 5 : 3;
        if (cells.size() != expect)
            throw ParseError(line_no, "expected " + std::to_string(expect) +
                                          " fields, got " +
                                          std::to_string(cells.size()));
        TradeRecord rec;
        rec.timestamp = parse_double(cells[0], line_no, "timestamp");
        rec.price = parse_double(cells[1], line_no, "price");
        rec.size = parse_double(cells[2], line_no, "size");
        if (!(rec.price > 0.0)) throw ParseError(line_no, "price must be > 0");
        if (!(rec.size > 0.0)) throw ParseError(line_no, "size must be > 0");
        if (with_quotes) {
            if (!cells[3].empty())
                rec.best_bid = parse_double(cells[3], line_no, "best_bid");
            if (!cells[4].empty())
                rec.best_ask = parse_double(cells[4], line_no, "best_ask");
        }
        if (!out.empty() &&
            rec.timestamp < out.back().timestamp - kOrderTolerance)
            throw OrderingError(line_no, "timestamp regression");
        // tiny jitter inside tolerance is snapped to keep the sequence sorted
        if (!out.empty() && rec.timestamp < out.back().timestamp)
            rec.timestamp = out.back().timestamp;
        out.push_back(rec);
    }
    if (out.empty()) std::cerr << "warning: trade file has no data rows\n";
    return out;
}

std::vector<TradeRecord> load_trades(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("data", "cannot open '" + path + "'");
    return ingest_trades(in);
}

void emit_trades(std::ostream& out, std::span<const TradeRecord> records) {
    bool with_quotes = false;
    for (const auto& r : records)
        with_quotes = with_quotes || r.best_bid || r.best_ask;
    out << (with_quotes ? "timestamp,price,size,best_bid,best_ask"
                        : "timestamp,price,size")
        << '\n';
    for (const auto& r : records) {
        out << format_double(r.timestamp) << ',' << format_double(r.price)
            << ',' << format_double(r.size);
        if (with_quotes) {
            out << ',' << (r.best_bid ? format_double(*r.best_bid) : "") << ','
                << (r.best_ask ? format_double(*r.best_ask) : "");
        }
        out << '\n';
    }
}

void save_trades(const std::string& path, std::span<const TradeRecord> records) {
    std::ofstream out(path);
    if (!out) throw DomainError("data", "cannot write '" + path + "'");
    emit_trades(out, records);
}

}  // namespace mmq
