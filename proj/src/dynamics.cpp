#include "revival/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace revival
{

namespace
{

constexpr double norm_tol = 1e-10;

void require_normalized(double norm, const char* what)
{
	if(std::abs(norm - 1.0) > norm_tol)
	{
		throw NotNormalized(std::string(what) + ": state norm " + std::to_string(norm) + " is not 1");
	}
}

// e^{-i h t} for a Hermitian 2x2 h:
//   e^{-i c t} [cos(r t) I - i sin(r t)/r (h - c I)],
// c the mean of the diagonal, r half the eigenvalue gap.
Eigen::Matrix2cd block_exponential(const Eigen::Matrix2cd& h, double t)
{
	const double centre = 0.5 * (h(0, 0).real() + h(1, 1).real());
	const double half_gap = 0.5 * (h(0, 0).real() - h(1, 1).real());
	const double radius = std::hypot(half_gap, std::abs(h(0, 1)));

	Eigen::Matrix2cd shifted = h;
	shifted(0, 0) -= centre;
	shifted(1, 1) -= centre;

	const double c = std::cos(radius * t);
	// sin(r t) / r, with the r -> 0 limit t.
	const double s = radius > 0.0 ? std::sin(radius * t) / radius : t;
	Eigen::Matrix2cd u = c * Eigen::Matrix2cd::Identity() - Complex{0.0, s} * shifted;
	return std::polar(1.0, -centre * t) * u;
}

template <typename Propagator>
Trajectory run(const Propagator& prop, const CompositeState& psi0, const TimeGrid& grid,
               const EvolveOptions& options)
{
	grid.validate();
	require_normalized(psi0.norm(), "evolve");
	if(options.target && options.target->size() != psi0.other_dim())
	{
		throw DimensionMismatch("evolve: fidelity target has " + std::to_string(options.target->size()) +
		                        " amplitudes, big spin has " + std::to_string(psi0.other_dim()));
	}

	Trajectory traj;
	const auto n = static_cast<std::size_t>(grid.samples);
	traj.times = grid.times();
	traj.sigma_z.reserve(n);
	traj.qubit_linear_entropy.reserve(n);
	traj.energy.reserve(n);
	traj.norm.reserve(n);
	if(options.keep_states)
	{
		traj.states.reserve(n);
	}

	for(const double t : traj.times)
	{
		CompositeState psi = prop.apply(psi0, t);
		traj.sigma_z.push_back(sigma_z_expectation(psi));
		traj.qubit_linear_entropy.push_back(linear_entropy(reduce_qubit(psi)));
		traj.energy.push_back(prop.energy(psi));
		traj.norm.push_back(psi.norm());
		if(options.target)
		{
			traj.fidelity_to_target.push_back(reduced_fidelity(*options.target, psi));
		}
		if(options.keep_states)
		{
			traj.states.push_back(std::move(psi));
		}
	}
	return traj;
}

void require_same_space(Eigen::Index dim, const CompositeState& psi)
{
	if(dim != psi.amplitudes().size())
	{
		throw DimensionMismatch("evolve: Hamiltonian dimension " + std::to_string(dim) +
		                        " does not match state dimension " +
		                        std::to_string(psi.amplitudes().size()));
	}
}

} // namespace

void TimeGrid::validate() const
{
	if(samples < 2)
	{
		throw InvalidArgument("time grid needs at least 2 samples, got " + std::to_string(samples));
	}
	if(!(t_end > t_start))
	{
		throw InvalidArgument("time grid must be increasing: t_start = " + std::to_string(t_start) +
		                      ", t_end = " + std::to_string(t_end));
	}
}

double TimeGrid::at(int i) const
{
	if(i == samples - 1)
	{
		return t_end;
	}
	return t_start + i * step();
}

std::vector<double> TimeGrid::times() const
{
	std::vector<double> ts(static_cast<std::size_t>(samples));
	for(int i = 0; i < samples; ++i)
	{
		ts[static_cast<std::size_t>(i)] = at(i);
	}
	return ts;
}

BlockPropagator::BlockPropagator(BlockDecomposition blocks) : blocks_{std::move(blocks)} {}

CompositeState BlockPropagator::apply(const CompositeState& psi, double t) const
{
	require_same_space(blocks_.dim(), psi);
	if(t == 0.0)
	{
		return psi;
	}
	const CVector& in = psi.amplitudes();
	CVector out(in.size());
	for(const Block& b : blocks_.blocks)
	{
		if(b.dim == 1)
		{
			out(b.indices[0]) = std::polar(1.0, -b.h(0, 0).real() * t) * in(b.indices[0]);
			continue;
		}
		const Eigen::Matrix2cd u = block_exponential(b.h, t);
		const Complex a = in(b.indices[0]);
		const Complex c = in(b.indices[1]);
		out(b.indices[0]) = u(0, 0) * a + u(0, 1) * c;
		out(b.indices[1]) = u(1, 0) * a + u(1, 1) * c;
	}
	return {psi.size(), std::move(out)};
}

double BlockPropagator::energy(const CompositeState& psi) const
{
	const CVector& v = psi.amplitudes();
	double e = 0.0;
	for(const Block& b : blocks_.blocks)
	{
		if(b.dim == 1)
		{
			e += b.h(0, 0).real() * std::norm(v(b.indices[0]));
			continue;
		}
		const Eigen::Vector2cd x{v(b.indices[0]), v(b.indices[1])};
		e += x.dot(b.h * x).real();
	}
	return e;
}

DensePropagator::DensePropagator(const CMatrix& h) : h_{h}
{
	const Eigen::SelfAdjointEigenSolver<CMatrix> es(h_);
	evals_ = es.eigenvalues();
	evecs_ = es.eigenvectors();
}

CompositeState DensePropagator::apply(const CompositeState& psi, double t) const
{
	require_same_space(h_.rows(), psi);
	if(t == 0.0)
	{
		return psi;
	}
	CVector coeffs = evecs_.adjoint() * psi.amplitudes();
	for(Eigen::Index k = 0; k < coeffs.size(); ++k)
	{
		coeffs(k) *= std::polar(1.0, -evals_(k) * t);
	}
	return {psi.size(), evecs_ * coeffs};
}

double DensePropagator::energy(const CompositeState& psi) const
{
	return expectation(h_, psi.amplitudes()).real();
}

Trajectory evolve(const BlockDecomposition& blocks, const CompositeState& psi0, const TimeGrid& grid,
                  const EvolveOptions& options)
{
	require_same_space(blocks.dim(), psi0);
	if(options.method == EvolutionMethod::Dense)
	{
		return run(DensePropagator{reassemble(blocks)}, psi0, grid, options);
	}
	return run(BlockPropagator{blocks}, psi0, grid, options);
}

Trajectory evolve(const CMatrix& h, const CompositeState& psi0, const TimeGrid& grid,
                  const EvolveOptions& options)
{
	require_same_space(h.rows(), psi0);
	if(options.method == EvolutionMethod::Dense)
	{
		return run(DensePropagator{h}, psi0, grid, options);
	}
	return run(BlockPropagator{block_decompose(h, psi0.size())}, psi0, grid, options);
}

CompositeState evolve_to(const BlockDecomposition& blocks, const CompositeState& psi0, double t)
{
	require_normalized(psi0.norm(), "evolve_to");
	return BlockPropagator{blocks}.apply(psi0, t);
}

double sigma_z_expectation(const CompositeState& psi)
{
	const Eigen::Index other = psi.other_dim();
	return psi.amplitudes().head(other).squaredNorm() - psi.amplitudes().tail(other).squaredNorm();
}

DensityMatrix reduce_qubit(const CompositeState& psi)
{
	const CMatrix m = psi.as_matrix();
	return m * m.adjoint();
}

DensityMatrix reduce_bigspin(const CompositeState& psi)
{
	const CMatrix m = psi.as_matrix();
	return m.transpose() * m.conjugate();
}

void check_density_matrix(const DensityMatrix& rho, double tol)
{
	if(rho.rows() != rho.cols())
	{
		throw InvalidDensityMatrix("density matrix is not square");
	}
	if(hermiticity_defect(rho) > tol)
	{
		throw InvalidDensityMatrix("density matrix is not Hermitian");
	}
	const Complex tr = rho.trace();
	if(std::abs(tr - 1.0) > tol)
	{
		throw InvalidDensityMatrix("density matrix trace is " + std::to_string(tr.real()) + ", not 1");
	}
	const Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
	if(es.eigenvalues().minCoeff() < -tol)
	{
		throw InvalidDensityMatrix("density matrix has a negative eigenvalue " +
		                           std::to_string(es.eigenvalues().minCoeff()));
	}
}

double fidelity(const CVector& target, const DensityMatrix& rho)
{
	if(rho.rows() != target.size() || rho.cols() != target.size())
	{
		throw DimensionMismatch("fidelity: target has " + std::to_string(target.size()) +
		                        " amplitudes, density matrix is " + std::to_string(rho.rows()) + "x" +
		                        std::to_string(rho.cols()));
	}
	require_normalized(target.norm(), "fidelity target");
	return std::sqrt(std::max(0.0, target.dot(rho * target).real()));
}

double fidelity(const BigSpinState& target, const DensityMatrix& rho)
{
	return fidelity(target.amplitudes(), rho);
}

double reduced_fidelity(const CVector& target, const CompositeState& psi)
{
	const Eigen::Index other = psi.other_dim();
	if(target.size() != other)
	{
		throw DimensionMismatch("reduced_fidelity: target has " + std::to_string(target.size()) +
		                        " amplitudes, big spin has " + std::to_string(other));
	}
	// <t|rho_BS|t> = sum_q |<t|psi_q>|^2 with psi_q the qubit-q slice.
	const double upper = std::norm(target.dot(psi.amplitudes().head(other)));
	const double lower = std::norm(target.dot(psi.amplitudes().tail(other)));
	return std::sqrt(upper + lower);
}

double attractor_time(std::optional<int> num_spins, Complex zeta, double lambda)
{
	if(!(lambda > 0.0))
	{
		throw InvalidArgument("attractor_time: lambda must be positive, got " + std::to_string(lambda));
	}
	const double r = std::abs(zeta);
	if(!num_spins)
	{
		return pi * r / lambda;
	}
	if(*num_spins < 1)
	{
		throw InvalidBasis("attractor_time: N must be >= 1");
	}
	return pi * r / (lambda * std::sqrt(1.0 + r * r / *num_spins));
}

double rabi_period(double mean_excitation, double lambda)
{
	return 2.0 * pi / (2.0 * lambda * std::sqrt(mean_excitation));
}

std::vector<double> sliding_max_envelope(const std::vector<double>& values, int window)
{
	const auto n = static_cast<std::ptrdiff_t>(values.size());
	const std::ptrdiff_t half = std::max(0, window / 2);
	std::vector<double> env(values.size());
	for(std::ptrdiff_t i = 0; i < n; ++i)
	{
		const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
		const std::ptrdiff_t hi = std::min(n - 1, i + half);
		double m = 0.0;
		for(std::ptrdiff_t k = lo; k <= hi; ++k)
		{
			m = std::max(m, std::abs(values[static_cast<std::size_t>(k)]));
		}
		env[static_cast<std::size_t>(i)] = m;
	}
	return env;
}

std::vector<std::size_t> local_minima(const std::vector<double>& values)
{
	std::vector<std::size_t> out;
	for(std::size_t i = 1; i + 1 < values.size(); ++i)
	{
		if(values[i] < values[i - 1] && values[i] < values[i + 1])
		{
			out.push_back(i);
		}
	}
	return out;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& values)
{
	std::vector<std::size_t> out;
	for(std::size_t i = 1; i + 1 < values.size(); ++i)
	{
		if(values[i] > values[i - 1] && values[i] > values[i + 1])
		{
			out.push_back(i);
		}
	}
	return out;
}

} // namespace revival
