#pragma once

// Spin cat states grown from the qubit-big spin collapse and revival.
//
// The qubit starts in |0> = (D+ + D-)/sqrt(2) and the big spin in the scaled
// coherent state |N, zeta/sqrt(N)>. Each D branch drives the big spin with
// exp(-/+ i lambda t sqrt(J_- J_+ / N)); at the attractor time t0 the big spin
// is close to the normalized sum of the two branches.
//
// All evolution here runs in the resonant interaction frame (omega = Omega =
// 0). The free term commutes with H at resonance and only rotates the big
// spin about z, which the branch states do not include.

#include "revival/dicke.hpp"
#include "revival/dynamics.hpp"
#include "revival/hamiltonian.hpp"
#include "revival/sweep.hpp"

#include <utility>
#include <vector>

namespace revival
{

using QubitState = Eigen::Vector2cd;

enum class Branch
{
	Plus,   ///< exp(-i lambda t sqrt(J_- J_+ / N))
	Minus,  ///< exp(+i lambda t sqrt(J_- J_+ / N))
};

struct CatSpec
{
	int num_spins = 1;
	Complex zeta{0.0, 0.0};
	double lambda = 1.0;

	/// phi = arg(zeta).
	[[nodiscard]] double phi() const { return std::arg(zeta); }
	/// Throws InvalidBasis / InvalidArgument on N < 1 or lambda <= 0.
	void validate() const;
};

/// D+-(0) = (|0> +- e^{-i phi} |1>) / sqrt(2).
std::pair<QubitState, QubitState> attractor_qubit_states(double phi);

/// Applies the diagonal branch propagator: Dicke amplitude n picks up
/// exp(-/+ i lambda t sqrt((n+1)(1 - n/N))).
BigSpinState conditional_evolution(Branch branch, double t, const BigSpinState& state, double lambda);

/// Interaction-frame model used for every cat calculation.
ModelParams interaction_frame_model(int num_spins, double lambda);

/// Initial composite state |0> (x) |N, zeta/sqrt(N)>.
CompositeState cat_initial_state(const CatSpec& spec);

/// M = 1 + Re<chi+|chi-> for the two branches at t0; lies in (0, 2].
double cat_normalization(const CatSpec& spec);

/// (chi+ + chi-) / sqrt(2M) at t0. Throws DegenerateNormalization when M
/// drops below 1e-12.
BigSpinState cat_state(const CatSpec& spec);

/// Exact composite state at time t from cat_initial_state.
CompositeState exact_state(const CatSpec& spec, double t);

/// fidelity(cat_state, reduce_bigspin(exact_state(t))); t defaults to t0.
double cat_fidelity(const CatSpec& spec);
double cat_fidelity(const CatSpec& spec, double t);

/// F at t0 for every (N, x) with zeta = sqrt(x N) real.
SweepGrid fidelity_surface(const std::vector<int>& num_spins, const std::vector<double>& x_grid, double lambda,
                           int workers = 1);

struct FidelitySeries
{
	std::vector<double> times;
	std::vector<double> fidelity;
	double t0 = 0.0;
};

FidelitySeries fidelity_vs_time(int num_spins, Complex zeta, const TimeGrid& grid, double lambda);

} // namespace revival
