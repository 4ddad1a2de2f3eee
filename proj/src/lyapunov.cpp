#include "niforge/lyapunov.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <string>
#include <vector>

#include "niforge/linalg.hpp"

namespace niforge {

namespace {

RealMatrix kron_plus_identity(const RealMatrix& tii, const RealMatrix& tjj)
{
    // I (x) Tii + Tjj (x) I for the small-block Sylvester Tii Y + Y Tjj^T = RHS.
    const Index p = tii.rows();
    const Index q = tjj.rows();
    RealMatrix lhs = RealMatrix::Zero(p * q, p * q);
    for (Index j = 0; j < q; ++j) lhs.block(j * p, j * p, p, p) = tii;
    for (Index i = 0; i < q; ++i)
        for (Index j = 0; j < q; ++j) lhs.block(i * p, j * p, p, p) += tjj(i, j) * RealMatrix::Identity(p, p);
    return lhs;
}

}  // namespace

RealMatrix solve_stable_lyapunov(const Eigen::Ref<const RealMatrix>& f, const Eigen::Ref<const RealMatrix>& q)
{
    require_square(f, "lyapunov F");
    require_square(q, "lyapunov Q");
    require_finite(f, "lyapunov F");
    require_finite(q, "lyapunov Q");
    if (f.rows() != q.rows())
        throw DimensionError("lyapunov dimension mismatch: F is " + std::to_string(f.rows()) + "x" +
                             std::to_string(f.cols()) + ", Q is " + std::to_string(q.rows()) + "x" +
                             std::to_string(q.cols()));
    if ((q - q.transpose()).norm() > 1e-9 * (1.0 + q.norm()))
        throw AssumptionError("Q symmetric", "right-hand side is not symmetric");

    const double max_re = max_real_part(eigenvalues(f));
    if (!(max_re < 0.0))
        throw AssumptionError("F Hurwitz", "F has an eigenvalue with Re = " + std::to_string(max_re));

    const Index n = f.rows();
    Eigen::RealSchur<RealMatrix> schur(f);
    if (schur.info() != Eigen::Success) throw NumericError("lyapunov Schur reduction did not converge");
    const RealMatrix& t = schur.matrixT();
    const RealMatrix& u = schur.matrixU();
    const RealMatrix qt = u.transpose() * q * u;

    std::vector<Index> starts;
    std::vector<Index> sizes;
    for (Index i = 0; i < n;) {
        const Index size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
        starts.push_back(i);
        sizes.push_back(size);
        i += size;
    }
    const Index nb = static_cast<Index>(starts.size());

    // T Y + Y T^T + Q~ = 0, solved block-wise from the bottom-right corner:
    // Tii Yij + Yij Tjj^T = -Q~ij - sum_{k>i} Tik Ykj - sum_{k>j} Yik Tjk^T.
    RealMatrix y = RealMatrix::Zero(n, n);
    for (Index bi = nb - 1; bi >= 0; --bi) {
        const Index i0 = starts[bi];
        const Index p = sizes[bi];
        for (Index bj = nb - 1; bj >= 0; --bj) {
            const Index j0 = starts[bj];
            const Index pq = sizes[bj];
            RealMatrix rhs = -qt.block(i0, j0, p, pq);
            for (Index bk = bi + 1; bk < nb; ++bk)
                rhs -= t.block(i0, starts[bk], p, sizes[bk]) * y.block(starts[bk], j0, sizes[bk], pq);
            for (Index bk = bj + 1; bk < nb; ++bk)
                rhs -= y.block(i0, starts[bk], p, sizes[bk]) * t.block(j0, starts[bk], pq, sizes[bk]).transpose();

            const RealMatrix lhs = kron_plus_identity(t.block(i0, i0, p, p), t.block(j0, j0, pq, pq));
            const RealVector sol = Eigen::PartialPivLU<RealMatrix>(lhs).solve(
                RealVector(Eigen::Map<const RealVector>(rhs.data(), p * pq)));
            y.block(i0, j0, p, pq) = Eigen::Map<const RealMatrix>(sol.data(), p, pq);
        }
    }

    RealMatrix x = u * y * u.transpose();
    x = 0.5 * (x + x.transpose());

    const double residual = (f * x + x * f.transpose() + q).norm();
    if (residual > 1e-10 * (1.0 + q.norm()))
        throw NumericError("lyapunov residual " + std::to_string(residual) + " exceeds tolerance");
    return x;
}

}  // namespace niforge
