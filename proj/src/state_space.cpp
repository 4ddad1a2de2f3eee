#include "niforge/state_space.hpp"

#include <Eigen/Dense>

#include <string>

#include "niforge/linalg.hpp"

namespace niforge {

StateSpace::StateSpace(RealMatrix a, RealMatrix b, RealMatrix c, RealMatrix d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d))
{
    require_square(A, "A");
    const Index n = A.rows();
    const Index m = B.cols();
    if (B.rows() != n) throw DimensionError("B must have as many rows as A");
    if (C.cols() != n) throw DimensionError("C must have as many columns as A");
    if (C.rows() != m || D.rows() != m || D.cols() != m)
        throw DimensionError("C and D must match the input/output count (square D)");
    require_finite(A, "A");
    require_finite(B, "B");
    require_finite(C, "C");
    require_finite(D, "D");
}

UncertainPlant::UncertainPlant(RealMatrix a, RealMatrix b1, RealMatrix b2, RealMatrix c1)
    : A(std::move(a)), B1(std::move(b1)), B2(std::move(b2)), C1(std::move(c1))
{
    require_square(A, "A");
    const Index n = A.rows();
    if (B1.rows() != n || B1.cols() != 1) throw DimensionError("B1 must be n x 1");
    if (B2.rows() != n || B2.cols() != 1) throw DimensionError("B2 must be n x 1 (scalar input channel)");
    if (C1.rows() != 1 || C1.cols() != n) throw DimensionError("C1 must be 1 x n");
    require_finite(A, "A");
    require_finite(B1, "B1");
    require_finite(B2, "B2");
    require_finite(C1, "C1");

    if (r_scalar() <= 0.0)
        throw AssumptionError("R > 0", "C1*B1 + B1'*C1' = " + std::to_string(r_scalar()));
    const double gate = 1e-9 * C1.norm() * B2.norm();
    if (std::abs(coupling()) <= gate)
        throw AssumptionError("C1*B2 not invertible", "C1*B2 = " + std::to_string(coupling()));
}

namespace detail {

ComplexMatrix transfer_at(const StateSpace& sys, Complex s)
{
    const Index n = sys.order();
    ComplexMatrix resolvent = s * ComplexMatrix::Identity(n, n) - sys.A.cast<Complex>();
    const ComplexMatrix x = Eigen::PartialPivLU<ComplexMatrix>(resolvent).solve(sys.B.cast<Complex>());
    return sys.C.cast<Complex>() * x + sys.D.cast<Complex>();
}

}  // namespace detail

ComplexMatrix freq_response(const StateSpace& sys, Complex s)
{
    for (const Complex& pole : eigenvalues(sys.A))
        if (std::abs(s - pole) < 1e-9) throw NearPoleError(pole, s);
    return detail::transfer_at(sys, s);
}

StateSpace shift(const StateSpace& sys, double delta)
{
    return StateSpace(sys.A + delta * RealMatrix::Identity(sys.order(), sys.order()), sys.B, sys.C, sys.D);
}

std::vector<Complex> poles(const StateSpace& sys)
{
    return eigenvalues(sys.A);
}

MinimalityReport is_minimal(const StateSpace& sys)
{
    const Index n = sys.order();
    const Index m = sys.B.cols();

    RealMatrix ctrb(n, n * m);
    RealMatrix obsv(n * m, n);
    RealMatrix bpow = sys.B;
    RealMatrix cpow = sys.C;
    for (Index k = 0; k < n; ++k) {
        ctrb.middleCols(k * m, m) = bpow;
        obsv.middleRows(k * m, m) = cpow;
        bpow = sys.A * bpow;
        cpow = cpow * sys.A;
    }

    auto rank_of = [](const RealMatrix& m_) {
        Eigen::JacobiSVD<RealMatrix> svd(m_);
        const auto& sv = svd.singularValues();
        if (sv.size() == 0) return Index(0);
        const double cutoff = 1e-9 * sv(0);
        Index rank = 0;
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cutoff) ++rank;
        return rank;
    };

    MinimalityReport report;
    report.controllability_rank = rank_of(ctrb);
    report.observability_rank = rank_of(obsv);
    report.minimal = report.controllability_rank == n && report.observability_rank == n;
    return report;
}

StateSpace close_loop(const UncertainPlant& plant, const Eigen::Ref<const RealMatrix>& k)
{
    if (k.rows() != plant.B2.cols() || k.cols() != plant.order())
        throw DimensionError("K must be " + std::to_string(plant.B2.cols()) + " x " + std::to_string(plant.order()));
    return StateSpace(plant.A + plant.B2 * k, plant.B1, plant.C1, RealMatrix::Zero(1, 1));
}

}  // namespace niforge
