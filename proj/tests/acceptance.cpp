// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
//
//   acceptance [--list] [--revival PATH] [ID ...]
//
// Exit status is 0 when every selected criterion passes, 1 otherwise.

#include "revival/cat.hpp"
#include "revival/dicke.hpp"
#include "revival/dynamics.hpp"
#include "revival/hamiltonian.hpp"
#include "revival/metrology.hpp"
#include "revival/sweep.hpp"
#include "revival/wigner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#ifndef REVIVAL_EXE
#define REVIVAL_EXE "revival"
#endif

using namespace revival;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
	bool pass = true;
	std::vector<std::string> details;

	// Records one sub-check; the criterion passes only if all of them do.
	void check(bool ok, const std::string& what)
	{
		pass = pass && ok;
		details.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
	}
};

struct Criterion
{
	std::string id;
	std::string title;
	std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 4)
{
	std::ostringstream s;
	s.precision(digits);
	s << v;
	return s.str();
}

std::string list_text(const std::vector<double>& values, int digits = 4)
{
	std::string out;
	for(const double v : values)
	{
		out += (out.empty() ? "" : ", ") + fmt(v, digits);
	}
	return out;
}

std::string list_text(const std::vector<int>& values)
{
	std::string out;
	for(const int v : values)
	{
		out += (out.empty() ? "" : " ") + std::to_string(v);
	}
	return out;
}

bool strictly_decreasing(const std::vector<double>& v)
{
	for(std::size_t i = 1; i < v.size(); ++i)
	{
		if(!(v[i] < v[i - 1]))
		{
			return false;
		}
	}
	return true;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Complex real_zeta(double zeta_sq) { return {std::sqrt(zeta_sq), 0.0}; }

// ------------------------------------------------------------ cat fidelity

Outcome cat_fidelity_regression()
{
	constexpr double tol = 0.02;
	constexpr double zeta_sq = 6.0;
	constexpr double max_seconds = 30.0;
	const std::vector<std::pair<int, double>> expected{{100, 0.96}, {40, 0.93}, {12, 0.91}};

	Outcome out;
	const auto start = std::chrono::steady_clock::now();
	for(const auto& [num, want] : expected)
	{
		const double f = cat_fidelity({num, real_zeta(zeta_sq), 1.0});
		out.check(std::abs(f - want) <= tol,
		          "N=" + std::to_string(num) + " F(t0)=" + fmt(f, 5) + " expected " + fmt(want) + " +- " + fmt(tol));
	}
	// The figure series: the same four N over [0, 2 t0].
	for(const int num : {12, 40, 70, 100})
	{
		const double t0 = attractor_time(num, real_zeta(zeta_sq), 1.0);
		fidelity_vs_time(num, real_zeta(zeta_sq), {0.0, 2.0 * t0, 2001}, 1.0);
	}
	const double elapsed = seconds_since(start);
	out.check(elapsed < max_seconds, "runtime " + fmt(elapsed, 3) + " s < " + fmt(max_seconds) + " s");
	return out;
}

// ------------------------------------------------------------- metrology

std::vector<int> int_range(int first, int last, int step)
{
	std::vector<int> v;
	for(int n = first; n <= last; n += step)
	{
		v.push_back(n);
	}
	return v;
}

std::vector<double> x_range(int count, double step)
{
	std::vector<double> v;
	for(int i = 0; i < count; ++i)
	{
		v.push_back(std::round(i * step * 1e12) / 1e12);
	}
	return v;
}

Outcome sql_anchor()
{
	constexpr double anchor_tol = 1e-12;
	constexpr double bound_slack = 1e-12;

	Outcome out;
	double worst_anchor = 0.0;
	for(int num = 5; num <= 100; ++num)
	{
		worst_anchor = std::max(worst_anchor, std::abs(precision({num, Complex{0.0, 0.0}, 1.0}) - 1.0));
	}
	out.check(worst_anchor <= anchor_tol,
	          "max |N/F - 1| at zeta=0 over N=5..100: " + fmt(worst_anchor, 3) + " <= " + fmt(anchor_tol));

	const SweepGrid grid = precision_surface(int_range(5, 100, 5), x_range(101, 0.01), 1.0);
	double worst_margin = 1e300;
	std::size_t failed = 0;
	for(std::size_t r = 0; r < grid.rows().size(); ++r)
	{
		for(std::size_t c = 0; c < grid.cols().size(); ++c)
		{
			if(!grid.cell(r, c).ok())
			{
				++failed;
				continue;
			}
			worst_margin = std::min(worst_margin, grid.value(r, c) - 1.0 / grid.rows()[r]);
		}
	}
	out.check(failed == 0, std::to_string(grid.cell_count()) + " surface cells, " + std::to_string(failed) + " failed");
	out.check(worst_margin >= -bound_slack, "min (N/F - 1/N) over the surface: " + fmt(worst_margin, 4));
	return out;
}

Outcome heisenberg_approach()
{
	constexpr double limit = 0.1;

	Outcome out;
	const SweepGrid grid = precision_surface({100}, x_range(101, 0.01), 1.0);
	double best = 1e300;
	double best_x = 0.0;
	for(std::size_t c = 0; c < grid.cols().size(); ++c)
	{
		if(grid.cell(0, c).ok() && grid.value(0, c) < best)
		{
			best = grid.value(0, c);
			best_x = grid.cols()[c];
		}
	}
	out.check(best < limit, "N=100 min N/F = " + fmt(best) + " at x=" + fmt(best_x) + " < " + fmt(limit));
	return out;
}

Outcome fig6_correlation()
{
	constexpr int window = 1;
	constexpr int n_lo = 5;
	constexpr int n_hi = 30;

	Outcome out;
	// One extra N on each side so that 5 and 30 can be extrema.
	const CrossSection cs = cross_section(n_lo - 1, n_hi + 1, 0.5, 1.0);
	bool all_ok = true;
	for(const std::string& e : cs.errors)
	{
		all_ok = all_ok && e.empty();
	}
	out.check(all_ok, "cross section N=" + std::to_string(n_lo - 1) + ".." + std::to_string(n_hi + 1) + " computed");

	std::vector<int> peaks;
	std::vector<int> troughs;
	for(const std::size_t i : local_maxima(cs.fidelity))
	{
		if(cs.num_spins[i] >= n_lo && cs.num_spins[i] <= n_hi)
		{
			peaks.push_back(cs.num_spins[i]);
		}
	}
	for(const std::size_t i : local_minima(cs.n_over_f))
	{
		troughs.push_back(cs.num_spins[i]);
	}
	std::vector<int> unmatched;
	for(const int p : peaks)
	{
		const bool hit = std::any_of(troughs.begin(), troughs.end(), [&](int t) { return std::abs(t - p) <= window; });
		if(!hit)
		{
			unmatched.push_back(p);
		}
	}
	out.details.push_back("        fidelity peaks N: " + list_text(peaks));
	out.details.push_back("        N/F troughs N:    " + list_text(troughs));
	out.check(!peaks.empty() && unmatched.empty(),
	          std::to_string(peaks.size()) + " peaks, unmatched within +-" + std::to_string(window) + ": [" +
	              list_text(unmatched) + "]");
	return out;
}

// -------------------------------------------------------------- dynamics

Outcome collapse_revival()
{
	constexpr int num = 170;
	constexpr double zeta_sq = 16.0;
	constexpr int samples = 4001;
	constexpr double collapse_max = 0.1;
	constexpr double revival_min = 0.4;
	constexpr double revival_centre_tol = 0.10;
	constexpr double entropy_tol = 0.05;

	Outcome out;
	const Complex zeta = real_zeta(zeta_sq);
	const double t0 = attractor_time(num, zeta, 1.0);
	ModelParams model;
	model.size = num;
	const CompositeState psi0 = CompositeState::product(Eigen::Vector2cd{1.0, 0.0}, spin_coherent({num, zeta, true}));
	const Trajectory tr = evolve(block_decompose(build_spin_hamiltonian(model), num), psi0, {0.0, 2.5 * t0, samples});

	// Envelope: sliding max of |<sigma_z>| over one Rabi period.
	const double dt = 2.5 * t0 / (samples - 1);
	const int window = static_cast<int>(std::lround(rabi_period(mean_excitation(num, zeta), 1.0) / dt));
	const std::vector<double> env = sliding_max_envelope(tr.sigma_z, window);

	double collapsed = 0.0;
	double revived = 0.0;
	double revived_at = 0.0;
	for(std::size_t i = 0; i < tr.times.size(); ++i)
	{
		const double s = tr.times[i] / t0;
		if(s >= 0.5 && s <= 0.9)
		{
			collapsed = std::max(collapsed, env[i]);
		}
		if(s >= 2.0 * (1.0 - revival_centre_tol) && s <= 2.0 * (1.0 + revival_centre_tol) && env[i] > revived)
		{
			revived = env[i];
			revived_at = s;
		}
	}
	out.check(collapsed < collapse_max,
	          "collapse: max envelope over [0.5, 0.9] t0 = " + fmt(collapsed, 3) + " < " + fmt(collapse_max));
	out.check(revived > revival_min, "revival: envelope " + fmt(revived, 3) + " at " + fmt(revived_at, 4) +
	                                     " t0 (window centres 2 t0 +- 10%) > " + fmt(revival_min));

	std::vector<double> in_window;
	for(const std::size_t i : local_minima(tr.qubit_linear_entropy))
	{
		const double s = tr.times[i] / t0;
		if(std::abs(s - 1.0) <= entropy_tol)
		{
			in_window.push_back(s);
		}
	}
	// Where the dip actually is, for the report.
	std::size_t dip = 0;
	for(std::size_t i = 0; i < tr.times.size(); ++i)
	{
		const double s = tr.times[i] / t0;
		if(s > 0.5 && s < 1.5 && (dip == 0 || tr.qubit_linear_entropy[i] < tr.qubit_linear_entropy[dip]))
		{
			dip = i;
		}
	}
	out.check(!in_window.empty(), "entropy local minima within t0 +- 5%: [" + list_text(in_window) +
	                                  "]; dip of [0.5, 1.5] t0 at " + fmt(tr.times[dip] / t0, 4) +
	                                  " t0, entropy " + fmt(tr.qubit_linear_entropy[dip], 3));
	return out;
}

Outcome jc_correspondence()
{
	constexpr double zeta_sq = 4.0;
	constexpr int samples = 4001;
	constexpr int cutoff = 120;

	Outcome out;
	const Complex zeta = real_zeta(zeta_sq);
	// Common window [0, 2 t0] with the field-mode t0 = pi |zeta| / lambda.
	const double t0 = attractor_time(std::nullopt, zeta, 1.0);
	const TimeGrid grid{0.0, 2.0 * t0, samples};

	ModelParams jc_model;
	jc_model.size = cutoff;
	const Trajectory jc = evolve(block_decompose(build_jc_hamiltonian(jc_model), cutoff),
	                             CompositeState::product(Eigen::Vector2cd{1.0, 0.0}, fock_coherent(zeta, cutoff)), grid);

	std::vector<double> diffs;
	for(const int num : {50, 100, 200, 400})
	{
		ModelParams model;
		model.size = num;
		const Trajectory spin = evolve(block_decompose(build_spin_hamiltonian(model), num),
		                               CompositeState::product(Eigen::Vector2cd{1.0, 0.0}, spin_coherent({num, zeta, true})),
		                               grid);
		double worst = 0.0;
		for(std::size_t i = 0; i < spin.sigma_z.size(); ++i)
		{
			worst = std::max(worst, std::abs(spin.sigma_z[i] - jc.sigma_z[i]));
		}
		diffs.push_back(worst);
	}
	out.check(strictly_decreasing(diffs),
	          "max |sigma_z spin - JC| over [0, 2 t0] for N=50,100,200,400: " + list_text(diffs) + " strictly decreasing");
	return out;
}

Outcome poisson_limit()
{
	constexpr double large_n_max = 1e-3;

	Outcome out;
	const Complex zeta = real_zeta(4.0);
	std::vector<double> d;
	for(const int num : {50, 100, 200, 400, 800})
	{
		d.push_back(poisson_convergence(num, zeta));
	}
	out.check(strictly_decreasing(d), "1 - overlap for N=50..800: " + list_text(d, 3) + " strictly decreasing");
	const double big = poisson_convergence(10000, zeta);
	out.check(big < large_n_max, "N=10000: " + fmt(big, 3) + " < " + fmt(large_n_max));
	return out;
}

// ---------------------------------------------------------------- oracles

Outcome oracle_equivalence()
{
	constexpr int instances = 100;
	constexpr int max_n = 60;
	constexpr double evolve_tol = 1e-10;
	constexpr double qfi_tol = 1e-10;
	constexpr double cg_tol = 1e-12;

	Outcome out;
	std::mt19937 rng(20240611);
	std::uniform_int_distribution<int> pick_n(1, max_n);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	std::normal_distribution<double> g;

	double worst_state = 0.0;
	double worst_qfi = 0.0;
	for(int k = 0; k < instances; ++k)
	{
		const int num = pick_n(rng);
		ModelParams model;
		model.size = num;
		model.omega = 2.0 * u(rng);
		model.qubit_omega = k % 2 == 0 ? model.omega : 2.0 * u(rng);
		model.lambda = 0.2 + 2.0 * u(rng);

		CVector amps(2 * (num + 1));
		for(Eigen::Index i = 0; i < amps.size(); ++i)
		{
			amps(i) = Complex{g(rng), g(rng)};
		}
		const CompositeState psi0{num, amps.normalized()};
		const CMatrix h = build_spin_hamiltonian(model);
		const BlockPropagator block{block_decompose(h, num)};
		const DensePropagator dense{h};
		for(int s = 0; s < 3; ++s)
		{
			const double t = 20.0 * u(rng);
			worst_state = std::max(worst_state, (block.apply(psi0, t).amplitudes() - dense.apply(psi0, t).amplitudes()).norm());
		}

		CVector spin_amps(num + 1);
		for(Eigen::Index i = 0; i < spin_amps.size(); ++i)
		{
			spin_amps(i) = Complex{g(rng), g(rng)};
		}
		const BigSpinState spin{DickeBasis{num}, spin_amps.normalized()};
		const CMatrix jy = collective_operator(CollectiveOp::Jy, spin.basis());
		const CVector& v = spin.amplitudes();
		const double mean = v.dot(jy * v).real();
		const double dense_qfi = 4.0 * (v.dot(jy * (jy * v)).real() - mean * mean);
		const double tri_qfi = qfi_jy(spin);
		worst_qfi = std::max(worst_qfi, std::abs(dense_qfi - tri_qfi) / std::max(1.0, std::abs(dense_qfi)));
	}
	out.check(worst_state <= evolve_tol, std::to_string(instances) + " random instances, N <= " +
	                                         std::to_string(max_n) + ": max block-dense state distance " +
	                                         fmt(worst_state, 3) + " <= " + fmt(evolve_tol));
	out.check(worst_qfi <= qfi_tol, "tridiagonal vs dense QFI, max relative difference " + fmt(worst_qfi, 3) +
	                                    " <= " + fmt(qfi_tol));

	// sum_{m1 m2} <j1 m1 j2 m2|J M><j1 m1 j2 m2|J' M'> = delta_JJ' delta_MM'
	double worst_cg = 0.0;
	for(int a = 0; a <= 4; ++a)
	{
		for(int b = 0; b <= 4; ++b)
		{
			const double j1 = 0.5 * a;
			const double j2 = 0.5 * b;
			for(double big_j = std::abs(j1 - j2); big_j <= j1 + j2 + 1e-9; big_j += 1.0)
			{
				for(double big_j2 = std::abs(j1 - j2); big_j2 <= j1 + j2 + 1e-9; big_j2 += 1.0)
				{
					for(double big_m = -std::min(big_j, big_j2); big_m <= std::min(big_j, big_j2) + 1e-9; big_m += 1.0)
					{
						double sum = 0.0;
						for(double m1 = -j1; m1 <= j1 + 1e-9; m1 += 1.0)
						{
							const double m2 = big_m - m1;
							if(std::abs(m2) > j2 + 1e-9)
							{
								continue;
							}
							sum += clebsch_gordan(j1, m1, j2, m2, big_j, big_m) *
							       clebsch_gordan(j1, m1, j2, m2, big_j2, big_m);
						}
						const double want = std::abs(big_j - big_j2) < 1e-9 ? 1.0 : 0.0;
						worst_cg = std::max(worst_cg, std::abs(sum - want));
					}
				}
			}
		}
	}
	out.check(worst_cg <= cg_tol, "Clebsch-Gordan orthogonality for j1, j2 <= 2: max error " + fmt(worst_cg, 3) +
	                                  " <= " + fmt(cg_tol));
	return out;
}

// ----------------------------------------------------------------- Wigner

// Reduced big-spin state at t0 of the resonant evolution from |0>|N, zeta/sqrt(N)>.
DensityMatrix reduced_at_t0(int num, double zeta_sq)
{
	const CatSpec spec{num, real_zeta(zeta_sq), 1.0};
	const BlockDecomposition blocks = block_decompose(build_spin_hamiltonian(interaction_frame_model(num, 1.0)), num);
	return reduce_bigspin(evolve_to(blocks, cat_initial_state(spec), attractor_time(num, spec.zeta, 1.0)));
}

double wrap(double phi) { return std::remainder(phi, 2.0 * pi); }

// Point at fraction s along the great circle from (th1, ph1) to (th2, ph2).
void slerp(double th1, double ph1, double th2, double ph2, double s, double& th, double& ph)
{
	const Eigen::Vector3d a{std::sin(th1) * std::cos(ph1), std::sin(th1) * std::sin(ph1), std::cos(th1)};
	const Eigen::Vector3d b{std::sin(th2) * std::cos(ph2), std::sin(th2) * std::sin(ph2), std::cos(th2)};
	const double omega = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
	const Eigen::Vector3d p = (std::sin((1.0 - s) * omega) * a + std::sin(s * omega) * b) / std::sin(omega);
	th = std::acos(std::clamp(p.z(), -1.0, 1.0));
	ph = std::atan2(p.y(), p.x());
}

Outcome wigner_invariants()
{
	constexpr double integral_tol = 1e-6;
	constexpr double phi_independence_tol = 1e-10;
	constexpr int min_sign_changes = 3;
	constexpr int arc_samples = 2001;

	Outcome out;

	double worst_integral = 0.0;
	for(const auto& [num, zeta_sq] : std::vector<std::pair<int, double>>{{12, 6.0}, {20, 3.2}, {40, 6.4}})
	{
		const WignerField w = wigner_function(reduced_at_t0(num, zeta_sq), SphereGrid{2 * num + 2, 2 * num + 2});
		worst_integral = std::max(worst_integral, std::abs(w.integral() - 1.0));
	}
	out.check(worst_integral <= integral_tol,
	          "reduced states at t0 (N=12, 20, 40): max |integral - 1| = " + fmt(worst_integral, 3) + " <= " +
	              fmt(integral_tol));

	double worst_spread = 0.0;
	for(const int num : {5, 20, 40})
	{
		const SphereGrid grid{2 * num + 2, 2 * num + 3};
		for(int n = 0; n <= num; ++n)
		{
			const WignerField w = wigner_function(BigSpinState::dicke(DickeBasis{num}, n), grid);
			for(int i = 0; i < grid.n_theta(); ++i)
			{
				worst_spread = std::max(worst_spread, w.values.row(i).maxCoeff() - w.values.row(i).minCoeff());
			}
		}
	}
	out.check(worst_spread < phi_independence_tol,
	          "Dicke states N=5, 20, 40: max phi spread " + fmt(worst_spread, 3) + " < " + fmt(phi_independence_tol));

	// Coherent lobe: grid argmax within one cell of (2 atan|z|, arg z).
	bool lobes_ok = true;
	std::string lobe_report;
	for(const auto& [num, zeta] : std::vector<std::pair<int, Complex>>{
	        {20, Complex{2.0, 0.0}}, {40, std::polar(3.0, 0.7)}, {40, std::polar(5.0, -2.2)}, {60, std::polar(4.0, 2.9)}})
	{
		const SphereGrid grid{2 * num + 2, 2 * num + 2};
		const WignerField w = wigner_function(spin_coherent({num, zeta, true}), grid);
		Eigen::Index r = 0;
		Eigen::Index c = 0;
		w.values.maxCoeff(&r, &c);
		const Complex z = zeta / std::sqrt(double(num));
		const double theta = 2.0 * std::atan(std::abs(z));
		const auto& th = grid.theta();
		const std::size_t ri = static_cast<std::size_t>(r);
		double cell_theta = 0.0;
		if(ri > 0)
		{
			cell_theta = std::max(cell_theta, th[ri] - th[ri - 1]);
		}
		if(ri + 1 < th.size())
		{
			cell_theta = std::max(cell_theta, th[ri + 1] - th[ri]);
		}
		const double cell_phi = 2.0 * pi / grid.n_phi();
		const double d_theta = std::abs(th[ri] - theta);
		const double d_phi = std::abs(wrap(grid.phi()[static_cast<std::size_t>(c)] - std::arg(z)));
		lobes_ok = lobes_ok && d_theta <= cell_theta && d_phi <= cell_phi;
		lobe_report += (lobe_report.empty() ? "" : "; ") + std::string("N=") + std::to_string(num) + " dtheta " +
		               fmt(d_theta, 2) + "/" + fmt(cell_theta, 2) + " dphi " + fmt(d_phi, 2) + "/" + fmt(cell_phi, 2);
	}
	out.check(lobes_ok, "coherent lobe within one grid cell: " + lobe_report);

	// N = 40 cat field at t0: lobes located from the two branch states.
	const int num = 40;
	const double zeta_sq = 6.4;
	const MultipoleDecomposition cat{reduced_at_t0(num, zeta_sq)};
	const BigSpinState start = spin_coherent({num, real_zeta(zeta_sq), true});
	const double t0 = attractor_time(num, real_zeta(zeta_sq), 1.0);
	const SphereGrid fine{121, 360};
	std::vector<std::pair<double, double>> centres;
	for(const Branch b : {Branch::Plus, Branch::Minus})
	{
		const WignerField w = wigner_function(conditional_evolution(b, t0, start, 1.0), fine);
		Eigen::Index r = 0;
		Eigen::Index c = 0;
		w.values.maxCoeff(&r, &c);
		centres.emplace_back(fine.theta()[static_cast<std::size_t>(r)], fine.phi()[static_cast<std::size_t>(c)]);
	}
	const auto [th1, ph1] = centres[0];
	const auto [th2, ph2] = centres[1];
	const double w1 = cat.evaluate(th1, ph1).real();
	const double w2 = cat.evaluate(th2, ph2).real();

	int sign_changes = 0;
	double arc_min = 1e300;
	double prev = w1;
	for(int k = 1; k < arc_samples; ++k)
	{
		double th = 0.0;
		double ph = 0.0;
		slerp(th1, ph1, th2, ph2, double(k) / (arc_samples - 1), th, ph);
		const double v = cat.evaluate(th, ph).real();
		arc_min = std::min(arc_min, v);
		if((v < 0.0) != (prev < 0.0))
		{
			++sign_changes;
		}
		prev = v;
	}
	out.check(w1 > 0.0 && w2 > 0.0 && arc_min < 0.0,
	          "N=40 cat: lobes at (theta, phi) = (" + fmt(th1, 3) + ", " + fmt(wrap(ph1), 3) + ") and (" + fmt(th2, 3) +
	              ", " + fmt(wrap(ph2), 3) + "), W = " + fmt(w1, 3) + ", " + fmt(w2, 3) +
	              ", separated by W < 0 (arc min " + fmt(arc_min, 3) + ")");
	out.check(sign_changes >= min_sign_changes, "sign changes along the connecting great-circle arc: " +
	                                               std::to_string(sign_changes) + " >= " +
	                                               std::to_string(min_sign_changes));
	return out;
}

// ------------------------------------------------------------ determinism

std::string slurp(const fs::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

Outcome determinism(const std::string& exe)
{
	const std::vector<std::pair<int, int>> worker_pairs{{1, 4}, {2, 3}};
	const std::vector<std::string> presets{"--fig1", "--fig2", "--fig3", "--fig4", "--fig5", "--fig6"};

	Outcome out;
	const fs::path root = fs::temp_directory_path() / ("revival_acceptance_" + std::to_string(::getpid()));
	fs::remove_all(root);
	for(std::size_t p = 0; p < presets.size(); ++p)
	{
		const auto [wa, wb] = worker_pairs[p % worker_pairs.size()];
		std::vector<fs::path> dirs;
		bool ran = true;
		for(const int w : {wa, wb})
		{
			const fs::path dir = root / (presets[p].substr(2) + "_w" + std::to_string(w));
			const std::string cmd = "\"" + exe + "\" " + presets[p] + " --workers " + std::to_string(w) + " --out \"" +
			                        dir.string() + "\" 2>/dev/null";
			ran = ran && std::system(cmd.c_str()) == 0;
			dirs.push_back(dir);
		}
		std::size_t files = 0;
		std::vector<std::string> differing;
		if(ran)
		{
			for(const auto& entry : fs::directory_iterator(dirs[0]))
			{
				if(entry.path().extension() != ".csv")
				{
					continue;
				}
				++files;
				const fs::path other = dirs[1] / entry.path().filename();
				if(!fs::exists(other) || slurp(entry.path()) != slurp(other))
				{
					differing.push_back(entry.path().filename().string());
				}
			}
		}
		std::string diff_text;
		for(const std::string& d : differing)
		{
			diff_text += " " + d;
		}
		out.check(ran && files > 0 && differing.empty(),
		          presets[p] + " workers " + std::to_string(wa) + " vs " + std::to_string(wb) + ": " +
		              (ran ? std::to_string(files) + " CSV files, " + std::to_string(differing.size()) + " differ" +
		                         diff_text
		                   : std::string("run failed")));
	}
	fs::remove_all(root);
	return out;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Acceptance criteria: one PASS/FAIL line each"};
	std::vector<std::string> selected;
	std::string exe = REVIVAL_EXE;
	bool list = false;
	app.add_option("ids", selected, "criteria to run (default: all)");
	app.add_option("--revival", exe, "path of the revival executable")->capture_default_str();
	app.add_flag("--list", list, "list criterion ids and exit");
	CLI11_PARSE(app, argc, argv);

	const std::vector<Criterion> criteria{
	    {"cat-fidelity", "cat-state fidelity regression at |zeta|^2 = 6", cat_fidelity_regression},
	    {"sql-anchor", "standard quantum limit anchor and Heisenberg bound", sql_anchor},
	    {"heisenberg-approach", "N/F < 0.1 at N = 100", heisenberg_approach},
	    {"fig6-correlation", "fidelity peaks meet N/F troughs at x = 0.5", fig6_correlation},
	    {"collapse-revival", "collapse, revival and entropy dip at N = 170, |zeta|^2 = 16", collapse_revival},
	    {"jc-correspondence", "spin model approaches Jaynes-Cummings as N grows", jc_correspondence},
	    {"poisson-limit", "binomial amplitudes approach the Poisson profile", poisson_limit},
	    {"oracle-equivalence", "fast paths agree with independent references", oracle_equivalence},
	    {"wigner-invariants", "spin Wigner function invariants", wigner_invariants},
	    {"determinism", "CSV bytes independent of the worker count", [&exe] { return determinism(exe); }},
	};

	if(list)
	{
		for(const Criterion& c : criteria)
		{
			std::cout << c.id << "  " << c.title << '\n';
		}
		return 0;
	}
	for(const std::string& id : selected)
	{
		if(std::none_of(criteria.begin(), criteria.end(), [&](const Criterion& c) { return c.id == id; }))
		{
			std::cerr << "unknown criterion '" << id << "' (see --list)\n";
			return 2;
		}
	}

	int failed = 0;
	int ran = 0;
	for(const Criterion& c : criteria)
	{
		if(!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
		{
			continue;
		}
		const auto start = std::chrono::steady_clock::now();
		Outcome o;
		try
		{
			o = c.run();
		}
		catch(const std::exception& e)
		{
			o.check(false, std::string("exception: ") + e.what());
		}
		++ran;
		failed += o.pass ? 0 : 1;
		std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << ": " << c.title << " (" << fmt(seconds_since(start), 3)
		          << " s)\n";
		for(const std::string& d : o.details)
		{
			std::cout << "    " << d << '\n';
		}
		std::cout.flush();
	}
	std::cout << ran - failed << " of " << ran << " criteria passed\n";
	return failed == 0 ? 0 : 1;
}
