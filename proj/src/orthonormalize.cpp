#include "crseig/orthonormalize.hpp"

#include <cmath>

namespace crseig {

namespace {

// Shared CGS(2) skeleton. metric(z) returns the image of z under the metric
// matrix (identity or B); coefficients for one pass all come from the same
// image, so a pass costs at most one spmv.
template <typename Metric>
std::optional<Vector> orthonormalize_impl(const Vector& z, std::span<const Vector> basis,
                                          double drop_tol, Metric&& metric) {
    Vector v = z;
    Vector g = metric(v);
    double pre_norm = std::sqrt(dot(v, g));
    if (pre_norm == 0.0) return std::nullopt;

    for (int pass = 0; pass < 2; ++pass) {
        if (basis.empty()) break;
        if (pass > 0) g = metric(v);
        std::vector<double> coeff(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) coeff[j] = dot(basis[j], g);
        for (std::size_t j = 0; j < basis.size(); ++j) axpy(-coeff[j], basis[j], v);
    }

    g = metric(v);
    double post_sq = dot(v, g);
    double post_norm = post_sq > 0.0 ? std::sqrt(post_sq) : 0.0;
    if (post_norm < drop_tol * pre_norm) return std::nullopt;
    scale(v, 1.0 / post_norm);
    return v;
}

}  // namespace

std::optional<Vector> orthonormalize_against(const Vector& z, std::span<const Vector> basis,
                                             double drop_tol) {
    return orthonormalize_impl(z, basis, drop_tol, [](const Vector& v) { return v; });
}

std::optional<Vector> orthonormalize_against(const Vector& z, std::span<const Vector> basis,
                                             const SparseSymMatrix& B, double drop_tol) {
    return orthonormalize_impl(z, basis, drop_tol,
                               [&B](const Vector& v) { return spmv(B, v); });
}

}  // namespace crseig
