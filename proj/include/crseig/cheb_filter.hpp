#pragma once

#include <vector>

#include "crseig/sparse.hpp"
#include "crseig/vector_ops.hpp"

namespace crseig {

// Degree and damping interval of the scaled Chebyshev filter
// p(t) = C_m(1 + 2(t - b)/(b - a)) / C_m(1 + 2(sigma1 - b)/(b - a)),
// normalized so p(sigma1) = 1 and |p| <= 1/|C_m(...)| on [a, b].
struct FilterParams {
    int m = 1;
    double a = 0.0;
    double b = 1.0;
    double sigma1 = -1.0;
};

// C_m(t) through the cos/cosh closed form, valid for all real t.
double cheb_poly_value(int m, double t);

// Scalar filter value p(t) for the given parameters.
double filter_value(const FilterParams& p, double t);

// z = p(C) x via the three-term recurrence; exactly m operator applications.
// Throws on a degenerate interval (b - a < 1e-14 * max(|a|,|b|,1)), on
// sigma1 >= a, and on sigma1 equal to the interval midpoint.
Vector chebyshev_filter(const ShiftedOperator& C, const Vector& x, const FilterParams& p);

// p(t) sampled at ts, for tuning diagnostics.
std::vector<double> filter_gain_profile(const FilterParams& p, const std::vector<double>& ts);

}  // namespace crseig
