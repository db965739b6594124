#pragma once

#include <cstdint>
#include <random>

#include "crseig/vector_ops.hpp"

namespace crseig {

/// Deterministic uniform source for initial and replacement vectors. Draws
/// map mt19937_64 words straight to doubles so streams are identical across
/// platforms (std::uniform_real_distribution makes no such promise).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [-1, 1] with 53 significant bits.
    double uniform_pm1() { return static_cast<double>(eng_() >> 11) * 0x1p-52 - 1.0; }

    Vector vector(std::size_t n) {
        Vector v(n);
        for (double& e : v) e = uniform_pm1();
        return v;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace crseig
