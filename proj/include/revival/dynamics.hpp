#pragma once

// Unitary evolution of composite states and the time-series observables
// built on it: <sigma_z>, qubit linear entropy, reduced states and fidelity.

#include "revival/dicke.hpp"
#include "revival/hamiltonian.hpp"
#include "revival/types.hpp"

#include <optional>
#include <vector>

namespace revival
{

/// Uniform grid of `samples` times from t_start to t_end inclusive, in
/// units of 1/lambda.
struct TimeGrid
{
	double t_start = 0.0;
	double t_end = 1.0;
	int samples = 2;

	/// Throws InvalidArgument unless samples >= 2 and t_end > t_start.
	void validate() const;
	[[nodiscard]] double step() const { return (t_end - t_start) / (samples - 1); }
	[[nodiscard]] double at(int i) const;
	[[nodiscard]] std::vector<double> times() const;
};

/// Exact propagator e^{-iHt} applied block by block with the closed-form
/// 2x2 exponential.
class BlockPropagator
{
public:
	explicit BlockPropagator(BlockDecomposition blocks);

	[[nodiscard]] CompositeState apply(const CompositeState& psi, double t) const;
	[[nodiscard]] double energy(const CompositeState& psi) const;
	[[nodiscard]] const BlockDecomposition& blocks() const { return blocks_; }

private:
	BlockDecomposition blocks_;
};

/// Reference propagator from a dense Hermitian eigendecomposition.
class DensePropagator
{
public:
	explicit DensePropagator(const CMatrix& h);

	[[nodiscard]] CompositeState apply(const CompositeState& psi, double t) const;
	[[nodiscard]] double energy(const CompositeState& psi) const;

private:
	CMatrix h_;
	RVector evals_;
	CMatrix evecs_;
};

enum class EvolutionMethod
{
	Block,
	Dense,
};

struct EvolveOptions
{
	EvolutionMethod method = EvolutionMethod::Block;
	/// Keep every state; otherwise only the observables are stored.
	bool keep_states = false;
	/// Big-spin pure state to compare the reduced big-spin state against.
	std::optional<CVector> target;
};

struct Trajectory
{
	std::vector<double> times;
	std::vector<CompositeState> states;
	std::vector<double> sigma_z;
	std::vector<double> qubit_linear_entropy;
	std::vector<double> fidelity_to_target;
	std::vector<double> energy;
	std::vector<double> norm;
};

/// Evolves psi0 over the grid. Throws DimensionMismatch when psi0 does not
/// live on the same space as H and NotNormalized when |psi0| deviates from 1
/// by more than 1e-10.
Trajectory evolve(const BlockDecomposition& blocks, const CompositeState& psi0, const TimeGrid& grid,
                  const EvolveOptions& options = {});
Trajectory evolve(const CMatrix& h, const CompositeState& psi0, const TimeGrid& grid,
                  const EvolveOptions& options = {});

/// Single-time state; the t = 0 case returns psi0 unchanged.
CompositeState evolve_to(const BlockDecomposition& blocks, const CompositeState& psi0, double t);

double sigma_z_expectation(const CompositeState& psi);

/// Partial trace over the big spin (or field).
DensityMatrix reduce_qubit(const CompositeState& psi);

/// Partial trace over the qubit.
DensityMatrix reduce_bigspin(const CompositeState& psi);

/// Throws InvalidDensityMatrix unless rho is Hermitian with unit trace and no
/// eigenvalue below -tol.
void check_density_matrix(const DensityMatrix& rho, double tol = 1e-10);

/// 2 (1 - Tr rho^2): 0 for pure qubit states, 1 for I/2.
template <typename Derived>
double linear_entropy(const Eigen::MatrixBase<Derived>& rho)
{
	return 2.0 * (1.0 - (rho * rho).trace().real());
}

/// sqrt(<psi|rho|psi>). Throws DimensionMismatch on size disagreement and
/// NotNormalized if the target is not a unit vector.
double fidelity(const CVector& target, const DensityMatrix& rho);
double fidelity(const BigSpinState& target, const DensityMatrix& rho);

/// fidelity(target, reduce_bigspin(psi)) without forming the reduced matrix.
double reduced_fidelity(const CVector& target, const CompositeState& psi);

/// t0 = pi |zeta| / (lambda sqrt(1 + |zeta|^2 / N)); an empty N gives the
/// field-mode value pi |zeta| / lambda. Throws InvalidArgument for lambda <= 0.
double attractor_time(std::optional<int> num_spins, Complex zeta, double lambda);

/// Rabi period 2 pi / (2 lambda sqrt(mean_excitation)).
double rabi_period(double mean_excitation, double lambda);

/// Centred sliding-window maximum of |values| over `window` samples.
std::vector<double> sliding_max_envelope(const std::vector<double>& values, int window);

/// Indices of strict interior local minima / maxima.
std::vector<std::size_t> local_minima(const std::vector<double>& values);
std::vector<std::size_t> local_maxima(const std::vector<double>& values);

} // namespace revival
