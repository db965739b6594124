#pragma once

#include <stdexcept>
#include <string>

#include "crseig/sparse.hpp"

namespace crseig {

/// Parse failure with the offending file and 1-based line number.
class MatrixMarketError : public std::runtime_error {
public:
    MatrixMarketError(const std::string& path, int line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Read a coordinate real symmetric matrix; the single stored triangle is
/// expanded to the full pattern.
SparseSymMatrix read_matrix_market(const std::string& path);

/// Write the lower triangle in coordinate real symmetric format with 17
/// significant digits, so values round-trip exactly.
void write_matrix_market(const SparseSymMatrix& M, const std::string& path);

}  // namespace crseig
