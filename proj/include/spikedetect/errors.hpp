#pragma once

#include <stdexcept>
#include <string>

namespace spikedetect {

// Input data that makes a statistic undefined (all-zero snapshots,
// vanishing smallest eigenvalue, ...). Distinct from domain errors on
// parameters so callers can map it to a dedicated exit path.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical routine exceeded its iteration budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; carries 1-based line/column for diagnostics.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, long line, long column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    long line() const { return line_; }
    long column() const { return column_; }

private:
    long line_;
    long column_;
};

// Requested accuracy or range is unreachable with the configured grids.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spikedetect
