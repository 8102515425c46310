#pragma once

// SU(2) Wigner function of a big-spin density matrix by multipole expansion.
//
// Convention: W(theta, phi) = sqrt((2j+1)/4pi) sum_{l,m} Tr(rho T_lm^dag) Y_lm(theta, phi)
// with orthonormal tensor operators T_lm, so that the sphere integral of W
// is Tr rho. This is one standard choice of spin Wigner kernel; absolute
// values from other conventions can differ by a j-dependent factor.
//
// Sphere frame: the all-down Dicke state (n = 0) sits at the north pole
// theta = 0. Dicke index n is identified with the standard magnetic number
// mu = j - n, which is the physical frame rotated by pi about x. A spin
// coherent state with parameter z then peaks at theta = 2 atan|z|,
// phi = arg z.
//
// Y_lm uses the Condon-Shortley phase and the normalized associated Legendre
// recurrence
//   P_mm = -sqrt((2m+1)/(2m)) sin(theta) P_{m-1,m-1},  P_00 = 1/sqrt(4pi)
//   P_{m+1,m} = sqrt(2m+3) cos(theta) P_mm
//   P_lm = a_lm (cos(theta) P_{l-1,m} - P_{l-2,m} / a_{l-1,m}),
//   a_lm = sqrt((4l^2 - 1) / (l^2 - m^2)).

#include "revival/dicke.hpp"
#include "revival/types.hpp"

#include <vector>

namespace revival
{

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> (Condon-Shortley) from the
/// Racah sum in log-factorial arithmetic. Arguments are integers or half
/// integers; throws InvalidArgument when they are not, when some |m| > j or
/// when j and m differ by a non-integer. Returns 0 when M != m1 + m2 or J
/// violates the triangle rule.
double clebsch_gordan(double j1, double m1, double j2, double m2, double big_j, double big_m);

/// Tensor operator T_lm for spin j in the standard basis |j, mu>, matrix
/// index mu + j:
///   <j mu'| T_lm |j mu> = sqrt((2l+1)/(2j+1)) <j mu; l m | j mu'>.
/// Throws InvalidArgument unless 0 <= l <= 2j and |m| <= l.
CMatrix multipole_operator(double j, int l, int m);

/// Normalized spherical harmonic Y_lm.
Complex spherical_harmonic(int l, int m, double theta, double phi);

/// Gauss-Legendre nodes in cos(theta) by uniform phi nodes.
class SphereGrid
{
public:
	/// Throws InvalidArgument unless both counts are >= 1.
	SphereGrid(int n_theta, int n_phi);

	[[nodiscard]] int n_theta() const { return static_cast<int>(theta_.size()); }
	[[nodiscard]] int n_phi() const { return static_cast<int>(phi_.size()); }
	[[nodiscard]] const std::vector<double>& theta() const { return theta_; }
	[[nodiscard]] const std::vector<double>& phi() const { return phi_; }
	/// Solid-angle weight of node (i, k); the weights sum to 4 pi.
	[[nodiscard]] double weight(int i, int k) const;

	friend bool operator==(const SphereGrid& a, const SphereGrid& b)
	{
		return a.theta_ == b.theta_ && a.phi_ == b.phi_;
	}

private:
	std::vector<double> theta_;
	std::vector<double> theta_weight_;
	std::vector<double> phi_;
};

/// Coefficients rho_lm = Tr(rho T_lm^dag), l = 0 .. 2j.
class MultipoleDecomposition
{
public:
	/// rho in the Dicke basis; converted to the sphere frame internally.
	explicit MultipoleDecomposition(const DensityMatrix& rho);

	[[nodiscard]] double j() const { return 0.5 * two_j_; }
	[[nodiscard]] int max_l() const { return two_j_; }
	[[nodiscard]] Complex coefficient(int l, int m) const;

	/// W at a single point, imaginary residue included.
	[[nodiscard]] Complex evaluate(double theta, double phi) const;

private:
	int two_j_;
	std::vector<Complex> coeffs_;
};

struct WignerField
{
	SphereGrid grid;
	/// n_theta x n_phi values.
	RMatrix values;
	/// Largest |Im W| seen before the imaginary part was dropped.
	double max_imag = 0.0;

	[[nodiscard]] double integral() const;
};

/// W on the grid. Throws InvalidDensityMatrix if rho is not Hermitian or its
/// trace differs from 1 by more than 1e-8, and Error if the imaginary
/// residue exceeds 1e-10.
WignerField wigner_function(const DensityMatrix& rho, const SphereGrid& grid);
WignerField wigner_function(const BigSpinState& state, const SphereGrid& grid);

/// Quadrature of W1 W2 over the sphere; equals (2j+1)/(4 pi) Tr(rho1 rho2).
/// Throws DimensionMismatch when the grids differ.
double sphere_overlap(const WignerField& w1, const WignerField& w2);

/// (2j+1) / (4 pi).
double overlap_constant(double j);

/// Dicke-basis density matrix of a pure state.
DensityMatrix pure_density(const BigSpinState& state);

} // namespace revival
