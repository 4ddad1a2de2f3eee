#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace niforge {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

class Error : public std::runtime_error
{
 public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error
{
 public:
    using Error::Error;
};

class NumericError : public Error
{
 public:
    using Error::Error;
};

// A model assumption (R > 0, C1*B2 invertible, D = D^T, ...) does not hold.
class AssumptionError : public Error
{
 public:
    AssumptionError(std::string assumption, const std::string& what)
        : Error(assumption + ": " + what), assumption_(std::move(assumption))
    {
    }

    const std::string& assumption() const { return assumption_; }

 private:
    std::string assumption_;
};

class ScopeError : public Error
{
 public:
    using Error::Error;
};

class NearPoleError : public Error
{
 public:
    NearPoleError(Complex pole, Complex point)
        : Error("evaluation point (" + std::to_string(point.real()) + ", " + std::to_string(point.imag()) +
                "j) is within 1e-9 of the pole (" + std::to_string(pole.real()) + ", " + std::to_string(pole.imag()) + "j)"),
          pole_(pole),
          point_(point)
    {
    }

    Complex pole() const { return pole_; }
    Complex point() const { return point_; }

 private:
    Complex pole_;
    Complex point_;
};

class ParseError : public Error
{
 public:
    using Error::Error;
};

void require_finite(const Eigen::Ref<const RealMatrix>& m, const char* name);
void require_square(const Eigen::Ref<const RealMatrix>& m, const char* name);

}  // namespace niforge
