#pragma once

#include <vector>

#include "crseig/sparse.hpp"

namespace crseig {

/// Uniform Q1 mesh of the cantilever domain [0,10] x [0,2], plane strain.
/// clamp controls the Dirichlet condition on the x = 0 edge; tests disable it
/// to expose the rigid-body null space.
struct BeamSpec {
    int nx = 10;
    int ny = 2;
    double E = 1.0;
    double nu = 0.3;
    double rho = 1.0;
    bool clamp = true;
};

/// A generated pencil: K x = lambda M x. dof_map sends each node-component
/// DOF (2*node + comp) to its row in the reduced system, -1 if eliminated.
struct AssembledPencil {
    SparseSymMatrix K;
    SparseSymMatrix M;
    int n_free = 0;
    std::vector<int> dof_map;
};

/// Plane-strain elasticity on an nx x ny grid of bilinear quadrilaterals with
/// 2x2 Gauss quadrature; Dirichlet DOFs eliminated, so the clamped pencil has
/// n_free = 2*nx*(ny+1) rows and both matrices are positive definite.
AssembledPencil assemble_beam(const BeamSpec& spec);

/// P1 finite elements for -u'' = lambda u on [0,1] with Dirichlet ends:
/// K = tridiag(-1, 2, -1)/h, M = tridiag(1, 4, 1)*h/6, h = 1/(n+1). Smallest
/// eigenvalue approaches pi^2 from above.
AssembledPencil assemble_laplacian_1d(int n);

}  // namespace crseig
