#pragma once

// Phase sensing with cat states: rotations e^{i theta J_y}, the pure-state
// quantum Fisher information 4 (Delta J_y)^2 and the precision N / F.

#include "revival/cat.hpp"
#include "revival/dicke.hpp"
#include "revival/sweep.hpp"

#include <string>
#include <vector>

namespace revival
{

/// theta = gamma t B_y; gamma, t and B_y are carried for bookkeeping only.
struct PhaseParams
{
	double gamma = 1.0;
	double time = 1.0;
	double field = 0.0;

	[[nodiscard]] double theta() const { return gamma * time * field; }
};

/// e^{i theta J_y} |psi> via the eigendecomposition of the unscaled J_y.
BigSpinState rotate_about_y(const BigSpinState& state, double theta);

/// F = 4 (<J_y^2> - <J_y>^2), evaluated from the tridiagonal J_y action.
/// Throws NotNormalized if |psi| differs from 1 by more than 1e-10.
double qfi_jy(const BigSpinState& state);

/// N / F of the cat state built from (N, zeta).
double precision(const CatSpec& spec);

/// N / F for every (N, x) with zeta = sqrt(x N); carries the Heisenberg
/// reference 1/N as a row column "heisenberg_limit".
SweepGrid precision_surface(const std::vector<int>& num_spins, const std::vector<double>& x_grid, double lambda,
                            int workers = 1);

struct CrossSection
{
	double x = 0.5;
	std::vector<int> num_spins;
	std::vector<double> zeta_sq;
	std::vector<double> fidelity;
	std::vector<double> n_over_f;
	/// Per-N error text, empty when the entry succeeded.
	std::vector<std::string> errors;
	/// How |zeta|^2 was obtained from x and N.
	std::string zeta_rounding = "zeta_sq = x * N exactly, zeta real positive (no rounding)";
};

/// Fidelity at t0 and N / F along N = n_min .. n_max at fixed x.
CrossSection cross_section(int n_min, int n_max, double x, double lambda, int workers = 1);

} // namespace revival
