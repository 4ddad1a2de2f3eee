#include "niforge/schur.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

#include "niforge/linalg.hpp"

namespace niforge {

namespace {

struct DiagBlock
{
    Index start;
    Index size;
    bool stable;
};

// Largest eigenvalue real part of a 1x1 or 2x2 diagonal block.
double block_max_re(const RealMatrix& t, Index start, Index size)
{
    if (size == 1) return t(start, start);
    const double a = t(start, start);
    const double b = t(start, start + 1);
    const double c = t(start + 1, start);
    const double d = t(start + 1, start + 1);
    const double half_tr = 0.5 * (a + d);
    const double disc = 0.25 * (a - d) * (a - d) + b * c;
    if (disc <= 0.0) return half_tr;  // complex conjugate pair
    return half_tr + std::sqrt(disc);
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b)
{
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Swap the adjacent diagonal blocks at (i, p) and (i+p, q) by an orthogonal
// similarity. With T11 X - X T22 = T12, the columns of [-X; I] span the
// invariant subspace of [T11 T12; 0 T22] belonging to T22; its QR factor
// rotates that subspace to the leading position.
void swap_adjacent_blocks(RealMatrix& t, RealMatrix& u, Index i, Index p, Index q, double swap_tol)
{
    const Index w = p + q;
    const RealMatrix t11 = t.block(i, i, p, p);
    const RealMatrix t12 = t.block(i, i + p, p, q);
    const RealMatrix t22 = t.block(i + p, i + p, q, q);

    // Sylvester solve via Kronecker: (I_q (x) T11 - T22^T (x) I_p) vec(X) = vec(T12).
    const RealMatrix lhs =
        kron(RealMatrix::Identity(q, q), t11) - kron(t22.transpose(), RealMatrix::Identity(p, p));
    Eigen::FullPivLU<RealMatrix> lu(lhs);
    if (!lu.isInvertible())
        throw NumericError("schur reordering failed: adjacent blocks share eigenvalues (defective clustering)");
    const RealVector x_vec = lu.solve(RealVector(Eigen::Map<const RealVector>(t12.data(), p * q)));
    const RealMatrix x = Eigen::Map<const RealMatrix>(x_vec.data(), p, q);

    RealMatrix stacked(w, q);
    stacked.topRows(p) = -x;
    stacked.bottomRows(q) = RealMatrix::Identity(q, q);
    Eigen::HouseholderQR<RealMatrix> qr(stacked);
    const RealMatrix rot = qr.householderQ();

    t.middleCols(i, w) = t.middleCols(i, w) * rot;
    t.middleRows(i, w) = rot.transpose() * t.middleRows(i, w);
    u.middleCols(i, w) = u.middleCols(i, w) * rot;

    const double residual = t.block(i + q, i, p, q).norm();
    if (residual > swap_tol)
        throw NumericError("schur block swap residual " + std::to_string(residual) + " exceeds " +
                           std::to_string(swap_tol));
    t.block(i + q, i, p, q).setZero();
}

}  // namespace

double default_axis_tolerance(const Eigen::Ref<const RealMatrix>& m)
{
    return 1e-9 * (1.0 + m.norm());
}

RealMatrix SchurSplit::quasi_triangular() const
{
    const Index n = order();
    const Index k = stable_dim;
    RealMatrix t = RealMatrix::Zero(n, n);
    t.topLeftCorner(k, k) = A11;
    t.topRightCorner(k, n - k) = A12;
    t.bottomRightCorner(n - k, n - k) = A22;
    return t;
}

SchurSplit ordered_real_schur(const Eigen::Ref<const RealMatrix>& m)
{
    return ordered_real_schur(m, default_axis_tolerance(m));
}

SchurSplit ordered_real_schur(const Eigen::Ref<const RealMatrix>& m, double axis_tolerance)
{
    require_square(m, "ordered_real_schur input");
    require_finite(m, "ordered_real_schur input");
    if (m.rows() == 0) throw DimensionError("ordered_real_schur input is empty");
    if (axis_tolerance < 0.0) throw Error("axis tolerance must be nonnegative");

    const Index n = m.rows();
    Eigen::RealSchur<RealMatrix> schur(m);
    if (schur.info() != Eigen::Success) throw NumericError("real Schur iteration did not converge");
    RealMatrix t = schur.matrixT();
    RealMatrix u = schur.matrixU();

    // Diagonal block map; any nonzero subdiagonal entry marks a 2x2 block.
    std::vector<DiagBlock> blocks;
    for (Index i = 0; i < n;) {
        const Index size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
        blocks.push_back({i, size, block_max_re(t, i, size) <= axis_tolerance});
        i += size;
    }

    // Bubble stable blocks to the top. Swapped blocks never share eigenvalues:
    // their real parts sit on opposite sides of the axis tolerance.
    const double swap_tol = 1e-10 * (1.0 + m.norm());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < blocks.size(); ++k) {
            if (!blocks[k].stable && blocks[k + 1].stable) {
                swap_adjacent_blocks(t, u, blocks[k].start, blocks[k].size, blocks[k + 1].size, swap_tol);
                std::swap(blocks[k], blocks[k + 1]);
                blocks[k].start = blocks[k + 1].start;
                blocks[k + 1].start = blocks[k].start + blocks[k].size;
                changed = true;
            }
        }
    }

    Index stable_dim = 0;
    for (const DiagBlock& b : blocks)
        if (b.stable) stable_dim += b.size;

    SchurSplit split;
    split.U = u;
    split.A11 = t.topLeftCorner(stable_dim, stable_dim);
    split.A12 = t.topRightCorner(stable_dim, n - stable_dim);
    split.A22 = t.bottomRightCorner(n - stable_dim, n - stable_dim);
    split.stable_dim = stable_dim;
    split.axis_tolerance = axis_tolerance;

    const double orth = (u.transpose() * u - RealMatrix::Identity(n, n)).norm();
    if (orth > 1e-10 * static_cast<double>(n))
        throw NumericError("schur U lost orthogonality: " + std::to_string(orth));
    const double recon = (u * split.quasi_triangular() * u.transpose() - m).norm();
    if (recon > 1e-8 * m.norm())
        throw NumericError("schur reconstruction residual " + std::to_string(recon) + " exceeds 1e-8 * ||M||");

    return split;
}

}  // namespace niforge
