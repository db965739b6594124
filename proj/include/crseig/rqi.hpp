#pragma once

#include <utility>

#include "crseig/dense.hpp"
#include "crseig/inner_solve.hpp"
#include "crseig/sparse.hpp"
#include "crseig/vector_ops.hpp"

namespace crseig {

struct RqiConfig {
    int max_outer = 10;
    double eps = 1e-10;
    InnerSolveConfig inner;
};

// Rayleigh quotient iteration with dense direct shifted solves. Testing and
// oracle use only; returns a unit vector v with ||Cv - tau v|| < cfg.eps or
// the iterate after cfg.max_outer steps.
Vector rqi_exact(const DenseSymMatrix& C, const Vector& v0, const RqiConfig& cfg);

// Single inexact RQI step for CRS: t ~= (A - theta*B)^{-1} x via a capped
// Krylov solve from the zero vector. The inexact iterate is the product;
// inner breakdown surfaces only in the report.
std::pair<Vector, InnerSolveReport> irqi_step(const SparseSymMatrix& A, const SparseSymMatrix& B,
                                              double theta, const Vector& x,
                                              const InnerSolveConfig& inner);

}  // namespace crseig
