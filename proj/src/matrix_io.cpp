#include "spikedetect/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spikedetect/errors.hpp"

namespace spikedetect::io {

namespace {

// Splits a CSV line, reporting the 1-based column (character offset) of a
// field that fails to parse as a finite decimal.
std::vector<double> parse_fields(const std::string& line, long lineno) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        const std::string field = line.substr(pos, comma - pos);
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(field, &consumed);
        } catch (const std::exception&) {
            throw parse_error("field \"" + field + "\" is not a decimal number", lineno,
                              static_cast<long>(pos) + 1);
        }
        if (consumed != field.size() || !std::isfinite(value))
            throw parse_error("field \"" + field + "\" is not a finite decimal", lineno,
                              static_cast<long>(pos) + 1);
        out.push_back(value);
        if (comma == line.size()) break;
        pos = comma + 1;
    }
    return out;
}

long parse_dimension(const std::string& field, long lineno, long column) {
    try {
        std::size_t consumed = 0;
        const long v = std::stol(field, &consumed);
        if (consumed != field.size() || v < 1)
            throw parse_error("dimension must be a positive integer", lineno, column);
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("dimension must be a positive integer", lineno, column);
    }
}

}  // namespace

SnapshotMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("missing \"K,N\" header", 1, 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw parse_error("header must be \"K,N\"", 1, 1);
    const long k = parse_dimension(line.substr(0, comma), 1, 1);
    const long n = parse_dimension(line.substr(comma + 1), 1, static_cast<long>(comma) + 2);

    SnapshotMatrix y(static_cast<int>(k), static_cast<int>(n));
    for (long row = 0; row < k; ++row) {
        const long lineno = row + 2;
        if (!std::getline(in, line))
            throw parse_error("expected " + std::to_string(k) + " data rows, got " +
                                  std::to_string(row),
                              lineno, 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::vector<double> fields = parse_fields(line, lineno);
        if (fields.size() != static_cast<std::size_t>(2 * n))
            throw parse_error("row has " + std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(2 * n),
                              lineno, 1);
        for (long col = 0; col < n; ++col)
            y.at(static_cast<int>(row), static_cast<int>(col)) =
                cplx{fields[2 * col], fields[2 * col + 1]};
    }
    return y;
}

SnapshotMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file " + path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const SnapshotMatrix& y) {
    out << y.sensors() << ',' << y.snapshots() << '\n';
    char buf[64];
    for (int k = 0; k < y.sensors(); ++k) {
        for (int n = 0; n < y.snapshots(); ++n) {
            const cplx v = y.at(k, n);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
            out << (n == 0 ? "" : ",") << buf;
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const SnapshotMatrix& y) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_matrix(out, y);
}

}  // namespace spikedetect::io
