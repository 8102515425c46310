#include "revival/cat.hpp"

#include <cmath>
#include <string>

namespace revival
{

namespace
{

constexpr double min_normalization = 1e-12;

BigSpinState initial_spin(const CatSpec& spec)
{
	return spin_coherent({spec.num_spins, spec.zeta, true});
}

double attractor_time(const CatSpec& spec)
{
	return revival::attractor_time(spec.num_spins, spec.zeta, spec.lambda);
}

} // namespace

void CatSpec::validate() const
{
	if(num_spins < 1)
	{
		throw InvalidBasis("cat spec needs N >= 1, got " + std::to_string(num_spins));
	}
	if(!(lambda > 0.0))
	{
		throw InvalidArgument("cat spec needs lambda > 0, got " + std::to_string(lambda));
	}
}

std::pair<QubitState, QubitState> attractor_qubit_states(double phi)
{
	const double s = 1.0 / std::sqrt(2.0);
	const Complex rotated = std::polar(s, -phi);
	return {QubitState{s, rotated}, QubitState{s, -rotated}};
}

BigSpinState conditional_evolution(Branch branch, double t, const BigSpinState& state, double lambda)
{
	const int num = state.num_spins();
	const double sign = branch == Branch::Plus ? -1.0 : 1.0;
	CVector amps = state.amplitudes();
	for(int n = 0; n <= num; ++n)
	{
		const double rate = std::sqrt((n + 1.0) * (1.0 - static_cast<double>(n) / num));
		amps(n) *= std::polar(1.0, sign * lambda * t * rate);
	}
	return {state.basis(), std::move(amps)};
}

ModelParams interaction_frame_model(int num_spins, double lambda)
{
	ModelParams p;
	p.omega = 0.0;
	p.qubit_omega = 0.0;
	p.lambda = lambda;
	p.size = num_spins;
	return p;
}

CompositeState cat_initial_state(const CatSpec& spec)
{
	spec.validate();
	return CompositeState::product(QubitState{1.0, 0.0}, initial_spin(spec));
}

double cat_normalization(const CatSpec& spec)
{
	spec.validate();
	const BigSpinState start = initial_spin(spec);
	const double t0 = attractor_time(spec);
	const BigSpinState plus = conditional_evolution(Branch::Plus, t0, start, spec.lambda);
	const BigSpinState minus = conditional_evolution(Branch::Minus, t0, start, spec.lambda);
	return 1.0 + plus.amplitudes().dot(minus.amplitudes()).real();
}

BigSpinState cat_state(const CatSpec& spec)
{
	spec.validate();
	const BigSpinState start = initial_spin(spec);
	const double t0 = attractor_time(spec);
	const BigSpinState plus = conditional_evolution(Branch::Plus, t0, start, spec.lambda);
	const BigSpinState minus = conditional_evolution(Branch::Minus, t0, start, spec.lambda);
	const double m = 1.0 + plus.amplitudes().dot(minus.amplitudes()).real();
	if(m < min_normalization)
	{
		throw DegenerateNormalization("cat normalization M = " + std::to_string(m) +
		                              " is near zero: the two branches cancel");
	}
	CVector amps = (plus.amplitudes() + minus.amplitudes()) / std::sqrt(2.0 * m);
	// M only fixes the norm up to rounding; pin it exactly.
	amps /= amps.norm();
	return {start.basis(), std::move(amps)};
}

CompositeState exact_state(const CatSpec& spec, double t)
{
	const CompositeState psi0 = cat_initial_state(spec);
	const BlockDecomposition blocks =
	    block_decompose(build_spin_hamiltonian(interaction_frame_model(spec.num_spins, spec.lambda)), spec.num_spins);
	return evolve_to(blocks, psi0, t);
}

double cat_fidelity(const CatSpec& spec)
{
	return cat_fidelity(spec, attractor_time(spec));
}

double cat_fidelity(const CatSpec& spec, double t)
{
	const BigSpinState cat = cat_state(spec);
	return reduced_fidelity(cat.amplitudes(), exact_state(spec, t));
}

SweepGrid fidelity_surface(const std::vector<int>& num_spins, const std::vector<double>& x_grid, double lambda,
                           int workers)
{
	SweepGrid grid{num_spins, x_grid, "fidelity"};
	grid.fill(workers, [lambda](int n, double x) {
		if(x < 0.0)
		{
			throw InvalidArgument("|zeta|^2/N must be non-negative, got " + std::to_string(x));
		}
		return cat_fidelity(CatSpec{n, Complex{std::sqrt(x * n), 0.0}, lambda});
	});
	return grid;
}

FidelitySeries fidelity_vs_time(int num_spins, Complex zeta, const TimeGrid& grid, double lambda)
{
	const CatSpec spec{num_spins, zeta, lambda};
	const BigSpinState cat = cat_state(spec);
	const BlockDecomposition blocks =
	    block_decompose(build_spin_hamiltonian(interaction_frame_model(num_spins, lambda)), num_spins);

	EvolveOptions options;
	options.target = cat.amplitudes();
	Trajectory traj = evolve(blocks, cat_initial_state(spec), grid, options);

	FidelitySeries series;
	series.times = std::move(traj.times);
	series.fidelity = std::move(traj.fidelity_to_target);
	series.t0 = attractor_time(spec);
	return series;
}

} // namespace revival
