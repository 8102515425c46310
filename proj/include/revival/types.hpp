#pragma once

#include <complex>
#include <Eigen/Dense>

namespace revival
{

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Reduced states are plain Hermitian matrices; see check_density_matrix().
using DensityMatrix = CMatrix;

inline constexpr double pi = 3.14159265358979323846;

/// Largest |A(i,j) - conj(A(j,i))| over all entries.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& a)
{
	return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, typename Derived::RealScalar tol)
{
	return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

/// Largest entry of |A B - B A|.
template <typename DerivedA, typename DerivedB>
double commutator_norm(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
	return (a * b - b * a).cwiseAbs().maxCoeff();
}

} // namespace revival
