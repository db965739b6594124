#include "crseig/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace crseig {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

SparseSymMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixMarketError(path, 0, "cannot open file");

    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) throw MatrixMarketError(path, 1, "empty file");
    ++lineno;
    {
        std::istringstream hs(line);
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%MatrixMarket" || lower(object) != "matrix")
            throw MatrixMarketError(path, lineno, "malformed MatrixMarket header");
        if (lower(format) != "coordinate")
            throw MatrixMarketError(path, lineno, "only coordinate format is supported");
        if (lower(field) != "real")
            throw MatrixMarketError(path, lineno, "only real matrices are supported");
        if (lower(symmetry) != "symmetric")
            throw MatrixMarketError(path, lineno,
                                    "matrix must be declared symmetric, got '" + symmetry + "'");
    }

    auto next_data_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line[first] == '%') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line()) throw MatrixMarketError(path, lineno, "missing size line");
    long long rows = 0, cols = 0, entries = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> entries))
            throw MatrixMarketError(path, lineno, "malformed size line");
        if (rows != cols) throw MatrixMarketError(path, lineno, "matrix must be square");
        if (rows < 1) throw MatrixMarketError(path, lineno, "dimension must be >= 1");
        if (entries < 0) throw MatrixMarketError(path, lineno, "negative entry count");
    }

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(entries));
    for (long long k = 0; k < entries; ++k) {
        if (!next_data_line())
            throw MatrixMarketError(path, lineno,
                                    "expected " + std::to_string(entries) + " entries, got " +
                                        std::to_string(k));
        std::istringstream ss(line);
        long long i = 0, j = 0;
        double v = 0.0;
        if (!(ss >> i >> j >> v)) throw MatrixMarketError(path, lineno, "malformed entry line");
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw MatrixMarketError(path, lineno, "index out of range: (" + std::to_string(i) +
                                                      ", " + std::to_string(j) + ")");
        int r = static_cast<int>(i - 1), c = static_cast<int>(j - 1);
        if (r > c) std::swap(r, c);
        triplets.push_back({r, c, v});
    }
    return SparseSymMatrix::from_upper_triplets(static_cast<int>(rows), std::move(triplets));
}

void write_matrix_market(const SparseSymMatrix& M, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MatrixMarketError(path, 0, "cannot open file for writing");

    const auto& rp = M.row_ptr();
    const auto& ci = M.col_idx();
    const auto& va = M.values();
    long long lower_count = 0;
    for (int r = 0; r < M.n(); ++r)
        for (int k = rp[r]; k < rp[r + 1]; ++k)
            if (ci[static_cast<std::size_t>(k)] <= r) ++lower_count;

    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << M.n() << " " << M.n() << " " << lower_count << "\n";
    char buf[64];
    for (int r = 0; r < M.n(); ++r) {
        for (int k = rp[r]; k < rp[r + 1]; ++k) {
            int c = ci[static_cast<std::size_t>(k)];
            if (c > r) continue;
            std::snprintf(buf, sizeof buf, "%d %d %.16e\n", r + 1, c + 1,
                          va[static_cast<std::size_t>(k)]);
            out << buf;
        }
    }
    if (!out) throw MatrixMarketError(path, 0, "write failure");
}

}  // namespace crseig
