#pragma once

#include <iosfwd>
#include <string>

#include "spikedetect/spectrum.hpp"

namespace spikedetect::io {

// Matrix file grammar: a header line "K,N", then K data lines of 2N
// comma-separated decimal fields (re,im interleaved per snapshot).
// Parse failures throw parse_error with 1-based line/column.
SnapshotMatrix read_matrix(std::istream& in);
SnapshotMatrix read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const SnapshotMatrix& y);
void write_matrix_file(const std::string& path, const SnapshotMatrix& y);

}  // namespace spikedetect::io
