#include "laser/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace laser::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

double parse_double(const std::string& token, const std::string& where) {
    if (token.empty()) throw ParseError(where + ": empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
        throw ParseError(where + ": not a number: '" + token + "'");
    return v;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

Table read_csv(std::istream& in, const std::string& name) {
    Table table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && line.empty()) throw ParseError(name + ":1: empty header");
        if (line.empty()) continue;
        std::vector<std::string> fields = split_fields(line);
        if (lineno == 1) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw ParseError(name + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(table.header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
    }
    if (lineno == 0) throw ParseError(name + ":1: empty file");
    return table;
}

FitInput read_fit_input(std::istream& in, const std::string& name) {
    const Table table = read_csv(in, name);
    int y_col = -1, x_col = -1;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == "y") y_col = static_cast<int>(c);
        if (table.header[c] == "x") x_col = static_cast<int>(c);
    }
    if (y_col < 0) throw ParseError(name + ":1: no 'y' column in header");
    if (table.rows.empty()) throw ParseError(name + ": no data rows");

    FitInput input;
    input.y.reserve(table.rows.size());
    if (x_col >= 0) input.x.reserve(table.rows.size());
    for (std::size_t rr = 0; rr < table.rows.size(); ++rr) {
        const std::string where = name + ":" + std::to_string(rr + 2);
        input.y.push_back(parse_double(table.rows[rr][static_cast<std::size_t>(y_col)], where));
        if (x_col >= 0)
            input.x.push_back(
                parse_double(table.rows[rr][static_cast<std::size_t>(x_col)], where));
    }
    return input;
}

void write_simulate_csv(std::ostream& out, std::span<const double> x,
                        std::span<const double> theta, std::span<const double> y) {
    out << "i,x,theta,y\n";
    for (std::size_t i = 0; i < y.size(); ++i)
        out << (i + 1) << ',' << format_double(x[i]) << ',' << format_double(theta[i]) << ','
            << format_double(y[i]) << '\n';
}

void write_fit_csv(std::ostream& out, std::span<const double> x, std::span<const double> y,
                   const FitResult& fit) {
    out << "i,x,y,theta_hat,h_hat\n";
    for (std::size_t i = 0; i < y.size(); ++i)
        out << (i + 1) << ',' << format_double(x[i]) << ',' << format_double(y[i]) << ','
            << format_double(fit.theta_hat[i]) << ',' << fit.h_hat[i] << '\n';
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
    out << "rep,rmse,lambda_used,mean_h,runtime_ms\n";
    for (const MetricsRow& row : rows)
        out << row.rep << ',' << format_double(row.rmse) << ',' << format_double(row.lambda_used)
            << ',' << format_double(row.mean_h) << ',' << format_double(row.runtime_ms) << '\n';
}

}  // namespace laser::io
