#pragma once

#include <optional>
#include <span>

#include "crseig/sparse.hpp"
#include "crseig/vector_ops.hpp"

namespace crseig {

inline constexpr double kOrthDropTol = 1e-10;

/// Classical Gram-Schmidt with one full re-orthogonalization pass against a
/// basis that is orthonormal in the chosen inner product. Returns the
/// orthonormalized vector, or nullopt when the projected remainder falls below
/// drop_tol times the incoming norm (z lies numerically in the span); the
/// caller decides whether to skip or substitute a random vector.
std::optional<Vector> orthonormalize_against(const Vector& z, std::span<const Vector> basis,
                                             double drop_tol = kOrthDropTol);

/// B-weighted variant: orthogonality and the final unit norm are taken in
/// <u,v>_B. Each pass multiplies by B once.
std::optional<Vector> orthonormalize_against(const Vector& z, std::span<const Vector> basis,
                                             const SparseSymMatrix& B,
                                             double drop_tol = kOrthDropTol);

}  // namespace crseig
