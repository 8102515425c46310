#include "revival/wigner.hpp"

#include "revival/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

namespace revival
{

namespace
{

int twice(double x, const char* name)
{
	const double t = 2.0 * x;
	const double r = std::round(t);
	if(std::abs(t - r) > 1e-9)
	{
		throw InvalidArgument(std::string("clebsch_gordan: ") + name + " = " + std::to_string(x) +
		                      " is not an integer or half integer");
	}
	return static_cast<int>(r);
}

void check_pair(int two_j, int two_m, const char* name)
{
	if(two_j < 0 || std::abs(two_m) > two_j || (two_j - two_m) % 2 != 0)
	{
		throw InvalidArgument(std::string("clebsch_gordan: invalid (j, m) pair for ") + name + ": (" +
		                      std::to_string(0.5 * two_j) + ", " + std::to_string(0.5 * two_m) + ")");
	}
}

// CG in twice-units with arguments already validated.
double cg_twice(int j1, int m1, int j2, int m2, int jj, int mm)
{
	if(m1 + m2 != mm || jj < std::abs(j1 - j2) || jj > j1 + j2 || (j1 + j2 + jj) % 2 != 0)
	{
		return 0.0;
	}
	const auto h = [](int twice_value) { return twice_value / 2; };
	const int a = h(j1 + j2 - jj);
	const int b = h(j1 - m1);
	const int c = h(j2 + m2);
	const int d = h(jj - j2 + m1);
	const int e = h(jj - j1 - m2);

	const double log_pref =
	    std::log(jj + 1.0) + log_factorial(h(jj + j1 - j2)) + log_factorial(h(jj - j1 + j2)) + log_factorial(a) -
	    log_factorial(h(j1 + j2 + jj) + 1) + log_factorial(h(jj + mm)) + log_factorial(h(jj - mm)) +
	    log_factorial(b) + log_factorial(h(j1 + m1)) + log_factorial(h(j2 - m2)) + log_factorial(c);

	const int k_min = std::max({0, -d, -e});
	const int k_max = std::min({a, b, c});
	if(k_min > k_max)
	{
		return 0.0;
	}

	std::vector<double> logs;
	logs.reserve(static_cast<std::size_t>(k_max - k_min + 1));
	for(int k = k_min; k <= k_max; ++k)
	{
		logs.push_back(0.5 * log_pref - (log_factorial(k) + log_factorial(a - k) + log_factorial(b - k) +
		                                 log_factorial(c - k) + log_factorial(d + k) + log_factorial(e + k)));
	}
	const double top = *std::max_element(logs.begin(), logs.end());
	double sum = 0.0;
	for(int k = k_min; k <= k_max; ++k)
	{
		const double term = std::exp(logs[static_cast<std::size_t>(k - k_min)] - top);
		sum += (k % 2 == 0) ? term : -term;
	}
	return sum * std::exp(top);
}

// Tensor operators with m = -am for every l at once. Column l - am of the
// result holds <r| T_{l,-am} |r + am>, r = 0 .. 2j - am, in the standard
// basis k = mu + j.
//
// The Racah sum cancels badly once j reaches a few tens, so the columns are
// taken instead as eigenvectors of the Casimir superoperator
// sum_i [J_i, [J_i, T]] = l (l + 1) T restricted to one diagonal, which is
// symmetric tridiagonal. Sign: <j j; l -am | j j - am> > 0 (a single Racah
// term), i.e. the entry at r = 2j - am is positive. That entry can be far
// below rounding noise, so its sign is carried inward by the three-term
// recurrence, stable while the solution grows away from the end, to the
// first entry of the eigenvector that is well above noise.
RMatrix tensor_block(int two_j, int am)
{
	const int n = two_j + 1 - am;
	const int m = -am;
	const double jj = 0.5 * two_j;
	// J_+(k + 1, k) = sqrt((k + 1)(2j - k)); zero outside 0 <= k < 2j.
	const auto raise = [two_j](int k) { return (k < 0 || k >= two_j) ? 0.0 : std::sqrt((k + 1.0) * (two_j - k)); };

	// Diagonal entries indexed by the column k = r + am of T(k + m, k).
	Eigen::VectorXd diag(n);
	Eigen::VectorXd off(std::max(n - 1, 0));
	for(int r = 0; r < n; ++r)
	{
		const int k = r + am;
		diag(r) = 2.0 * jj * (jj + 1.0) - 2.0 * (k + m - jj) * (k - jj);
		if(r + 1 < n)
		{
			off(r) = -raise(k + m) * raise(k);
		}
	}
	Eigen::SelfAdjointEigenSolver<RMatrix> es;
	es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
	RMatrix v = es.eigenvectors();
	for(int c = 0; c < n; ++c)
	{
		const double lambda = (am + c) * (am + c + 1.0);
		const double big = v.col(c).cwiseAbs().maxCoeff();
		// Exact recurrence from r = n - 1 downward, rescaled to stay finite.
		double next = 0.0;
		double here = 1.0;
		for(int r = n - 1; r >= 0; --r)
		{
			if(std::abs(v(r, c)) > 1e-3 * big)
			{
				if((v(r, c) < 0.0) != (here < 0.0))
				{
					v.col(c) = -v.col(c);
				}
				break;
			}
			const double up = r + 1 < n ? off(r) * next : 0.0;
			const double prev = -((diag(r) - lambda) * here + up) / off(r - 1);
			const double scale = std::max(std::abs(prev), std::abs(here));
			next = here / scale;
			here = prev / scale;
		}
	}
	return v;
}

// Normalized associated Legendre values P_l^m(cos theta), m >= 0, with the
// Condon-Shortley phase, packed at l (l+1)/2 + m.
std::vector<double> legendre_table(int max_l, double cos_t, double sin_t)
{
	std::vector<double> p(static_cast<std::size_t>((max_l + 1) * (max_l + 2) / 2), 0.0);
	const auto at = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };

	double pmm = 1.0 / std::sqrt(4.0 * pi);
	for(int m = 0; m <= max_l; ++m)
	{
		if(m > 0)
		{
			pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_t;
		}
		p[at(m, m)] = pmm;
		if(m + 1 <= max_l)
		{
			p[at(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * cos_t * pmm;
		}
		for(int l = m + 2; l <= max_l; ++l)
		{
			const double a_l = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
			const double a_prev = std::sqrt((4.0 * (l - 1.0) * (l - 1.0) - 1.0) /
			                                ((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m));
			p[at(l, m)] = a_l * (cos_t * p[at(l - 1, m)] - p[at(l - 2, m)] / a_prev);
		}
	}
	return p;
}

std::size_t coeff_index(int l, int m)
{
	return static_cast<std::size_t>(l * l + (m + l));
}

constexpr double hermitian_tol = 1e-8;
constexpr double imag_tol = 1e-10;

} // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double big_j, double big_m)
{
	const int tj1 = twice(j1, "j1");
	const int tm1 = twice(m1, "m1");
	const int tj2 = twice(j2, "j2");
	const int tm2 = twice(m2, "m2");
	const int tjj = twice(big_j, "J");
	const int tmm = twice(big_m, "M");
	check_pair(tj1, tm1, "(j1, m1)");
	check_pair(tj2, tm2, "(j2, m2)");
	check_pair(tjj, tmm, "(J, M)");
	return cg_twice(tj1, tm1, tj2, tm2, tjj, tmm);
}

CMatrix multipole_operator(double j, int l, int m)
{
	const int two_j = twice(j, "j");
	if(two_j < 0 || l < 0 || l > two_j || std::abs(m) > l)
	{
		throw InvalidArgument("multipole_operator: (l, m) = (" + std::to_string(l) + ", " + std::to_string(m) +
		                      ") outside 0 <= l <= 2j, |m| <= l for j = " + std::to_string(j));
	}
	const Eigen::Index dim = two_j + 1;
	const int am = std::abs(m);
	const RMatrix v = tensor_block(two_j, am);
	// T_{l,m} = (-1)^m T_{l,-m}^dag for m > 0.
	const double sign = (m > 0 && am % 2 != 0) ? -1.0 : 1.0;
	CMatrix t = CMatrix::Zero(dim, dim);
	for(Eigen::Index r = 0; r < v.rows(); ++r)
	{
		if(m <= 0)
		{
			t(r, r + am) = v(r, l - am);
		}
		else
		{
			t(r + am, r) = sign * v(r, l - am);
		}
	}
	return t;
}

Complex spherical_harmonic(int l, int m, double theta, double phi)
{
	if(l < 0 || std::abs(m) > l)
	{
		throw InvalidArgument("spherical_harmonic: invalid (l, m)");
	}
	const std::vector<double> p = legendre_table(l, std::cos(theta), std::sin(theta));
	const int am = std::abs(m);
	double value = p[static_cast<std::size_t>(l * (l + 1) / 2 + am)];
	if(m < 0 && am % 2 != 0)
	{
		value = -value;
	}
	return std::polar(value, m * phi);
}

SphereGrid::SphereGrid(int n_theta, int n_phi)
{
	if(n_theta < 1 || n_phi < 1)
	{
		throw InvalidArgument("sphere grid needs n_theta, n_phi >= 1");
	}
	// Golub-Welsch: nodes are eigenvalues of the Legendre Jacobi matrix,
	// weights 2 v_0^2.
	RMatrix jacobi = RMatrix::Zero(n_theta, n_theta);
	for(int k = 1; k < n_theta; ++k)
	{
		const double beta = k / std::sqrt(4.0 * k * k - 1.0);
		jacobi(k, k - 1) = jacobi(k - 1, k) = beta;
	}
	const Eigen::SelfAdjointEigenSolver<RMatrix> es(jacobi);

	std::vector<std::pair<double, double>> nodes;
	for(int k = 0; k < n_theta; ++k)
	{
		const double x = std::clamp(es.eigenvalues()(k), -1.0, 1.0);
		const double v0 = es.eigenvectors()(0, k);
		nodes.emplace_back(std::acos(x), 2.0 * v0 * v0);
	}
	std::sort(nodes.begin(), nodes.end());
	for(const auto& [t, w] : nodes)
	{
		theta_.push_back(t);
		theta_weight_.push_back(w);
	}
	for(int k = 0; k < n_phi; ++k)
	{
		phi_.push_back(2.0 * pi * k / n_phi);
	}
}

double SphereGrid::weight(int i, int k) const
{
	(void)k;
	return theta_weight_[static_cast<std::size_t>(i)] * 2.0 * pi / n_phi();
}

MultipoleDecomposition::MultipoleDecomposition(const DensityMatrix& rho)
    : two_j_{static_cast<int>(rho.rows()) - 1}
{
	if(rho.rows() != rho.cols() || rho.rows() < 1)
	{
		throw DimensionMismatch("multipole decomposition needs a square density matrix");
	}
	const int two_j = two_j_;
	coeffs_.assign(static_cast<std::size_t>((two_j + 1) * (two_j + 1)), Complex{0.0, 0.0});

	// Sphere-frame index k = mu + j = 2j - n.
	const auto rho_std = [&](int kp, int k) { return rho(two_j - kp, two_j - k); };
	for(int am = 0; am <= two_j; ++am)
	{
		const RMatrix v = tensor_block(two_j, am);
		const double sign = am % 2 != 0 ? -1.0 : 1.0;
		for(int l = am; l <= two_j; ++l)
		{
			Complex minus{0.0, 0.0};
			Complex plus{0.0, 0.0};
			for(Eigen::Index r = 0; r < v.rows(); ++r)
			{
				const int k = static_cast<int>(r);
				minus += rho_std(k, k + am) * v(r, l - am);
				plus += rho_std(k + am, k) * v(r, l - am);
			}
			coeffs_[coeff_index(l, -am)] = minus;
			coeffs_[coeff_index(l, am)] = sign * plus;
		}
	}
}

Complex MultipoleDecomposition::coefficient(int l, int m) const
{
	if(l < 0 || l > two_j_ || std::abs(m) > l)
	{
		throw InvalidArgument("multipole coefficient (l, m) out of range");
	}
	return coeffs_[coeff_index(l, m)];
}

Complex MultipoleDecomposition::evaluate(double theta, double phi) const
{
	const std::vector<double> p = legendre_table(two_j_, std::cos(theta), std::sin(theta));
	const double norm = std::sqrt((two_j_ + 1.0) / (4.0 * pi));
	Complex w{0.0, 0.0};
	for(int l = 0; l <= two_j_; ++l)
	{
		for(int m = -l; m <= l; ++m)
		{
			const int am = std::abs(m);
			double plm = p[static_cast<std::size_t>(l * (l + 1) / 2 + am)];
			if(m < 0 && am % 2 != 0)
			{
				plm = -plm;
			}
			w += coeffs_[coeff_index(l, m)] * std::polar(plm, m * phi);
		}
	}
	return norm * w;
}

double WignerField::integral() const
{
	double s = 0.0;
	for(int i = 0; i < grid.n_theta(); ++i)
	{
		for(int k = 0; k < grid.n_phi(); ++k)
		{
			s += grid.weight(i, k) * values(i, k);
		}
	}
	return s;
}

WignerField wigner_function(const DensityMatrix& rho, const SphereGrid& grid)
{
	if(rho.rows() != rho.cols() || rho.rows() < 2)
	{
		throw InvalidDensityMatrix("wigner_function: density matrix must be square with dimension >= 2");
	}
	if(hermiticity_defect(rho) > hermitian_tol)
	{
		throw InvalidDensityMatrix("wigner_function: density matrix is not Hermitian");
	}
	if(std::abs(rho.trace() - 1.0) > hermitian_tol)
	{
		throw InvalidDensityMatrix("wigner_function: trace " + std::to_string(rho.trace().real()) + " is not 1");
	}

	const MultipoleDecomposition dec{rho};
	const int max_l = dec.max_l();
	const double norm = std::sqrt((max_l + 1.0) / (4.0 * pi));

	WignerField field{grid, RMatrix(grid.n_theta(), grid.n_phi()), 0.0};
	std::vector<Complex> by_m(static_cast<std::size_t>(2 * max_l + 1));
	for(int i = 0; i < grid.n_theta(); ++i)
	{
		const double theta = grid.theta()[static_cast<std::size_t>(i)];
		const std::vector<double> p = legendre_table(max_l, std::cos(theta), std::sin(theta));
		// S_m(theta) = sum_l rho_lm P_l^m, so W = norm sum_m S_m e^{i m phi}.
		for(int m = -max_l; m <= max_l; ++m)
		{
			const int am = std::abs(m);
			const double sign = (m < 0 && am % 2 != 0) ? -1.0 : 1.0;
			Complex s{0.0, 0.0};
			for(int l = am; l <= max_l; ++l)
			{
				s += dec.coefficient(l, m) * (sign * p[static_cast<std::size_t>(l * (l + 1) / 2 + am)]);
			}
			by_m[static_cast<std::size_t>(m + max_l)] = s;
		}
		for(int k = 0; k < grid.n_phi(); ++k)
		{
			const double phi = grid.phi()[static_cast<std::size_t>(k)];
			Complex w{0.0, 0.0};
			for(int m = -max_l; m <= max_l; ++m)
			{
				w += by_m[static_cast<std::size_t>(m + max_l)] * std::polar(1.0, m * phi);
			}
			w *= norm;
			field.values(i, k) = w.real();
			field.max_imag = std::max(field.max_imag, std::abs(w.imag()));
		}
	}
	if(field.max_imag > imag_tol)
	{
		std::ostringstream msg;
		msg << "wigner_function: imaginary residue " << field.max_imag << " exceeds " << imag_tol;
		throw Error(msg.str());
	}
	return field;
}

DensityMatrix pure_density(const BigSpinState& state)
{
	return state.amplitudes() * state.amplitudes().adjoint();
}

WignerField wigner_function(const BigSpinState& state, const SphereGrid& grid)
{
	return wigner_function(pure_density(state), grid);
}

double sphere_overlap(const WignerField& w1, const WignerField& w2)
{
	if(!(w1.grid == w2.grid) || w1.values.rows() != w2.values.rows() || w1.values.cols() != w2.values.cols())
	{
		throw DimensionMismatch("sphere_overlap: fields live on different grids");
	}
	double s = 0.0;
	for(int i = 0; i < w1.grid.n_theta(); ++i)
	{
		for(int k = 0; k < w1.grid.n_phi(); ++k)
		{
			s += w1.grid.weight(i, k) * w1.values(i, k) * w2.values(i, k);
		}
	}
	return s;
}

double overlap_constant(double j)
{
	return (2.0 * j + 1.0) / (4.0 * pi);
}

} // namespace revival
