#include "crseig/cheb_filter.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crseig {

double cheb_poly_value(int m, double t) {
    if (m < 0) throw std::invalid_argument("cheb_poly_value: negative degree");
    if (std::abs(t) <= 1.0) return std::cos(m * std::acos(t));
    // |C_m(t)| grows as cosh outside [-1,1]; the sign alternates for t < -1.
    double v = std::cosh(m * std::acosh(std::abs(t)));
    return (t < 0.0 && m % 2 != 0) ? -v : v;
}

namespace {

void validate(const FilterParams& p) {
    if (p.m < 1) throw std::invalid_argument("chebyshev filter: degree m must be >= 1");
    double span = p.b - p.a;
    if (!(span >= 1e-14 * std::max({std::abs(p.a), std::abs(p.b), 1.0})))
        throw std::invalid_argument("chebyshev filter: degenerate interval [a, b] = [" +
                                    std::to_string(p.a) + ", " + std::to_string(p.b) +
                                    "]; widen the interval");
    if (!(p.sigma1 < p.a))
        throw std::invalid_argument("chebyshev filter: sigma1 = " + std::to_string(p.sigma1) +
                                    " must lie below a = " + std::to_string(p.a));
}

}  // namespace

double filter_value(const FilterParams& p, double t) {
    validate(p);
    double num = cheb_poly_value(p.m, 1.0 + 2.0 * (t - p.b) / (p.b - p.a));
    double den = cheb_poly_value(p.m, 1.0 + 2.0 * (p.sigma1 - p.b) / (p.b - p.a));
    return num / den;
}

Vector chebyshev_filter(const ShiftedOperator& C, const Vector& x, const FilterParams& p) {
    validate(p);
    double mu = 0.5 * (p.b + p.a);
    double nu = 0.5 * (p.b - p.a);
    if (p.sigma1 == mu)
        throw std::invalid_argument(
            "chebyshev filter: sigma1 coincides with the interval midpoint; widen [a, b]");
    double gamma = nu / (p.sigma1 - mu);

    Vector z_prev = x;
    Vector cz = C.apply(x);
    Vector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (gamma / nu) * (cz[i] - mu * x[i]);

    double gamma1_inv2 = 2.0 / gamma;
    for (int i = 1; i < p.m; ++i) {
        double gamma_next = 1.0 / (gamma1_inv2 - gamma);
        cz = C.apply(z);
        Vector z_next(z.size());
        for (std::size_t j = 0; j < z.size(); ++j)
            z_next[j] = 2.0 * (gamma_next / nu) * (cz[j] - mu * z[j]) - gamma * gamma_next * z_prev[j];
        z_prev = std::move(z);
        z = std::move(z_next);
        gamma = gamma_next;
    }
    return z;
}

std::vector<double> filter_gain_profile(const FilterParams& p, const std::vector<double>& ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(filter_value(p, t));
    return out;
}

}  // namespace crseig
