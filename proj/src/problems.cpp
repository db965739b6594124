#include "crseig/problems.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace crseig {

namespace {

void validate(const BeamSpec& s) {
    if (s.nx < 1 || s.ny < 1) throw std::invalid_argument("assemble_beam: nx, ny must be >= 1");
    if (!(s.nu > 0.0 && s.nu < 0.5))
        throw std::invalid_argument("assemble_beam: nu must lie in (0, 0.5)");
    if (!(s.E > 0.0)) throw std::invalid_argument("assemble_beam: E must be positive");
    if (!(s.rho > 0.0)) throw std::invalid_argument("assemble_beam: rho must be positive");
}

using ElemMatrix = std::array<std::array<double, 8>, 8>;

// Q1 element matrices on an hx x hy rectangle. Node order is counterclockwise
// from the lower-left corner; DOFs interleave (ux, uy) per node.
void element_matrices(double hx, double hy, double E, double nu, double rho, ElemMatrix& ke,
                      ElemMatrix& me) {
    const double mu = E / (2.0 * (1.0 + nu));
    const double lam = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    // Plane-strain constitutive matrix over [exx, eyy, gxy].
    const double d00 = lam + 2.0 * mu;
    const double d01 = lam;
    const double d22 = mu;

    for (auto& row : ke) row.fill(0.0);
    for (auto& row : me) row.fill(0.0);

    const double g = 1.0 / std::sqrt(3.0);
    const double xi_a[4] = {-1.0, 1.0, 1.0, -1.0};
    const double eta_a[4] = {-1.0, -1.0, 1.0, 1.0};
    const double det_j = hx * hy / 4.0;

    for (double xi : {-g, g}) {
        for (double eta : {-g, g}) {
            double shape[4], dx[4], dy[4];
            for (int a = 0; a < 4; ++a) {
                shape[a] = 0.25 * (1.0 + xi_a[a] * xi) * (1.0 + eta_a[a] * eta);
                dx[a] = 0.25 * xi_a[a] * (1.0 + eta_a[a] * eta) * (2.0 / hx);
                dy[a] = 0.25 * eta_a[a] * (1.0 + xi_a[a] * xi) * (2.0 / hy);
            }
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    // [B_a^T D B_b] for the 2x2 (ux, uy) block of nodes a, b.
                    double kxx = d00 * dx[a] * dx[b] + d22 * dy[a] * dy[b];
                    double kxy = d01 * dx[a] * dy[b] + d22 * dy[a] * dx[b];
                    double kyx = d01 * dy[a] * dx[b] + d22 * dx[a] * dy[b];
                    double kyy = d00 * dy[a] * dy[b] + d22 * dx[a] * dx[b];
                    ke[2 * a][2 * b] += kxx * det_j;
                    ke[2 * a][2 * b + 1] += kxy * det_j;
                    ke[2 * a + 1][2 * b] += kyx * det_j;
                    ke[2 * a + 1][2 * b + 1] += kyy * det_j;
                    double mass = rho * shape[a] * shape[b] * det_j;
                    me[2 * a][2 * b] += mass;
                    me[2 * a + 1][2 * b + 1] += mass;
                }
            }
        }
    }
    for (int p = 0; p < 8; ++p)
        for (int q = p + 1; q < 8; ++q) {
            double v = 0.5 * (ke[p][q] + ke[q][p]);
            ke[p][q] = ke[q][p] = v;
        }
}

}  // namespace

AssembledPencil assemble_beam(const BeamSpec& spec) {
    validate(spec);
    const int nx = spec.nx, ny = spec.ny;
    const double hx = 10.0 / nx;
    const double hy = 2.0 / ny;
    const int n_nodes = (nx + 1) * (ny + 1);
    auto node = [&](int i, int j) { return j * (nx + 1) + i; };

    AssembledPencil out;
    out.dof_map.assign(static_cast<std::size_t>(2 * n_nodes), -1);
    int next = 0;
    for (int nd = 0; nd < n_nodes; ++nd) {
        bool clamped = spec.clamp && nd % (nx + 1) == 0;
        for (int c = 0; c < 2; ++c)
            out.dof_map[static_cast<std::size_t>(2 * nd + c)] = clamped ? -1 : next++;
    }
    out.n_free = next;

    ElemMatrix ke, me;
    element_matrices(hx, hy, spec.E, spec.nu, spec.rho, ke, me);

    std::vector<Triplet> kt, mt;
    kt.reserve(static_cast<std::size_t>(nx) * ny * 36);
    mt.reserve(static_cast<std::size_t>(nx) * ny * 36);
    for (int ey = 0; ey < ny; ++ey) {
        for (int ex = 0; ex < nx; ++ex) {
            int nodes[4] = {node(ex, ey), node(ex + 1, ey), node(ex + 1, ey + 1),
                            node(ex, ey + 1)};
            int gdof[8];
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 2; ++c)
                    gdof[2 * a + c] = out.dof_map[static_cast<std::size_t>(2 * nodes[a] + c)];
            for (int p = 0; p < 8; ++p) {
                if (gdof[p] < 0) continue;
                for (int q = 0; q < 8; ++q) {
                    if (gdof[q] < 0 || gdof[p] > gdof[q]) continue;
                    kt.push_back({gdof[p], gdof[q], ke[p][q]});
                    mt.push_back({gdof[p], gdof[q], me[p][q]});
                }
            }
        }
    }
    out.K = SparseSymMatrix::from_upper_triplets(out.n_free, std::move(kt));
    out.M = SparseSymMatrix::from_upper_triplets(out.n_free, std::move(mt));
    return out;
}

AssembledPencil assemble_laplacian_1d(int n) {
    if (n < 1) throw std::invalid_argument("assemble_laplacian_1d: n must be >= 1");
    const double h = 1.0 / (n + 1);
    std::vector<Triplet> kt, mt;
    kt.reserve(static_cast<std::size_t>(2 * n));
    mt.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        kt.push_back({i, i, 2.0 / h});
        mt.push_back({i, i, 4.0 * h / 6.0});
        if (i + 1 < n) {
            kt.push_back({i, i + 1, -1.0 / h});
            mt.push_back({i, i + 1, h / 6.0});
        }
    }
    AssembledPencil out;
    out.K = SparseSymMatrix::from_upper_triplets(n, std::move(kt));
    out.M = SparseSymMatrix::from_upper_triplets(n, std::move(mt));
    out.n_free = n;
    out.dof_map.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.dof_map[static_cast<std::size_t>(i)] = i;
    return out;
}

}  // namespace crseig
