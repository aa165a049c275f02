#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace waltz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846;

/// Kronecker product with the left factor as the most significant index.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Largest entry of |U^dagger U - I|.
template <typename Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& u) {
  if (u.rows() != u.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const auto product = (u.adjoint() * u).eval();
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return (product - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = 1e-12) {
  return unitarity_error(u) < tol;
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Product of the entries of `dims`.
inline std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) {
    p *= static_cast<std::size_t>(d);
  }
  return p;
}

}  // namespace waltz
