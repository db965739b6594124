#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace crseig {

using Vector = std::vector<double>;

inline void check_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

inline double dot(const Vector& u, const Vector& v) {
    check_same_dim(u.size(), v.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

/// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
    check_same_dim(x.size(), y.size(), "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(Vector& v, double alpha) {
    for (double& e : v) e *= alpha;
}

inline Vector scaled(const Vector& v, double alpha) {
    Vector out(v);
    scale(out, alpha);
    return out;
}

}  // namespace crseig
