// CSV readers/writers for the command-line tools: explicit headers, UTF-8,
// '\n' line endings, '.' decimal separator, 15 significant digits.

#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "laser/experiments.hpp"

namespace laser::io {

/// Malformed input; the message names the offending file and line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// %.15g rendering used for every floating-point CSV/JSON field.
std::string format_double(double v);

/// Strict full-token double parse; throws ParseError mentioning `where`.
double parse_double(const std::string& token, const std::string& where);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Read a whole CSV (comma-separated, first line is the header). Rows with a
/// deviating field count raise ParseError naming the 1-based line.
Table read_csv(std::istream& in, const std::string& name);

struct FitInput {
    std::vector<double> y;
    std::vector<double> x;  // empty when the input had no x column
};

/// Extract the y (required) and x (optional) columns of a fit input CSV.
FitInput read_fit_input(std::istream& in, const std::string& name);

void write_simulate_csv(std::ostream& out, std::span<const double> x,
                        std::span<const double> theta, std::span<const double> y);
void write_fit_csv(std::ostream& out, std::span<const double> x, std::span<const double> y,
                   const FitResult& fit);
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);

}  // namespace laser::io
