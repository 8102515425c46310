#include "revival/metrology.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace revival
{

BigSpinState rotate_about_y(const BigSpinState& state, double theta)
{
	if(theta == 0.0)
	{
		return state;
	}
	const CMatrix jy = collective_operator(CollectiveOp::Jy, state.basis());
	const Eigen::SelfAdjointEigenSolver<CMatrix> es(jy);
	CVector coeffs = es.eigenvectors().adjoint() * state.amplitudes();
	for(Eigen::Index k = 0; k < coeffs.size(); ++k)
	{
		coeffs(k) *= std::polar(1.0, theta * es.eigenvalues()(k));
	}
	return {state.basis(), es.eigenvectors() * coeffs};
}

double qfi_jy(const BigSpinState& state)
{
	const CVector& psi = state.amplitudes();
	if(std::abs(psi.norm() - 1.0) > 1e-10)
	{
		throw NotNormalized("qfi_jy: state norm " + std::to_string(psi.norm()) + " is not 1");
	}
	const int num = state.num_spins();

	// (J_y psi)_n = [e_{n-1} psi_{n-1} - e_n psi_{n+1}] / 2i, e_n = <n+1|J_+|n>.
	CVector jy_psi(psi.size());
	for(int n = 0; n <= num; ++n)
	{
		Complex v{0.0, 0.0};
		if(n > 0)
		{
			v += jplus_element(num, n - 1) * psi(n - 1);
		}
		if(n < num)
		{
			v -= jplus_element(num, n) * psi(n + 1);
		}
		jy_psi(n) = v / Complex{0.0, 2.0};
	}
	const double second = jy_psi.squaredNorm();
	const double first = psi.dot(jy_psi).real();
	return 4.0 * (second - first * first);
}

double precision(const CatSpec& spec)
{
	return spec.num_spins / qfi_jy(cat_state(spec));
}

SweepGrid precision_surface(const std::vector<int>& num_spins, const std::vector<double>& x_grid, double lambda,
                            int workers)
{
	SweepGrid grid{num_spins, x_grid, "N_over_F"};
	grid.fill(workers, [lambda](int n, double x) {
		if(x < 0.0)
		{
			throw InvalidArgument("|zeta|^2/N must be non-negative, got " + std::to_string(x));
		}
		return precision(CatSpec{n, Complex{std::sqrt(x * n), 0.0}, lambda});
	});
	std::vector<double> heisenberg;
	heisenberg.reserve(grid.rows().size());
	for(const int n : grid.rows())
	{
		heisenberg.push_back(1.0 / n);
	}
	grid.add_row_column("heisenberg_limit", std::move(heisenberg));
	return grid;
}

CrossSection cross_section(int n_min, int n_max, double x, double lambda, int workers)
{
	if(n_min < 1 || n_max < n_min)
	{
		throw InvalidArgument("cross_section needs 1 <= n_min <= n_max, got " + std::to_string(n_min) + ".." +
		                      std::to_string(n_max));
	}
	if(x < 0.0)
	{
		throw InvalidArgument("cross_section needs x >= 0");
	}
	CrossSection out;
	out.x = x;
	for(int n = n_min; n <= n_max; ++n)
	{
		out.num_spins.push_back(n);
		out.zeta_sq.push_back(x * n);
	}

	const std::size_t count = out.num_spins.size();
	// Cells 0..count-1 are fidelities, count..2count-1 precisions.
	const auto cells = run_cells(2 * count, workers, [&](std::size_t i) {
		const int n = out.num_spins[i % count];
		const CatSpec spec{n, Complex{std::sqrt(x * n), 0.0}, lambda};
		return i < count ? cat_fidelity(spec) : precision(spec);
	});

	for(std::size_t k = 0; k < count; ++k)
	{
		out.fidelity.push_back(cells[k].value);
		out.n_over_f.push_back(cells[count + k].value);
		std::string err = cells[k].error;
		if(!cells[count + k].ok())
		{
			err += (err.empty() ? "" : "; ") + cells[count + k].error;
		}
		out.errors.push_back(std::move(err));
	}
	return out;
}

} // namespace revival
