#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>

namespace helmlab {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using VecD = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;
using MatD = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;

// Stack-allocated point; dimensions up to 8 without heap traffic.
using PointD = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 8, 1>;

using ScalarEval = std::function<double(const PointD&)>;
using VectorEval = std::function<PointD(const PointD&)>;
using JacobianEval = std::function<Eigen::MatrixXd(const PointD&)>;

constexpr double kPi = 3.14159265358979323846;

}  // namespace helmlab
