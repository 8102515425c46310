#include "doctest.h"

#include "revival/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace revival;

namespace
{

// exp(i theta Jy) by scaling and squaring of a truncated Taylor series.
CMatrix oracle_rotation(int num, double theta)
{
	const CMatrix a = Complex{0.0, theta} * collective_operator(CollectiveOp::Jy, DickeBasis{num});
	int squarings = 0;
	double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
	while(norm > 0.25)
	{
		norm /= 2.0;
		++squarings;
	}
	const CMatrix b = a / std::pow(2.0, squarings);
	CMatrix term = CMatrix::Identity(num + 1, num + 1);
	CMatrix sum = term;
	for(int k = 1; k < 30; ++k)
	{
		term = term * b / double(k);
		sum += term;
	}
	for(int s = 0; s < squarings; ++s)
	{
		sum = sum * sum;
	}
	return sum;
}

double oracle_qfi(const BigSpinState& s)
{
	const CMatrix jy = collective_operator(CollectiveOp::Jy, s.basis());
	const CVector& v = s.amplitudes();
	const double first = v.dot(jy * v).real();
	const double second = v.dot(jy * jy * v).real();
	return 4.0 * (second - first * first);
}

BigSpinState random_spin(int num, std::mt19937& rng)
{
	std::normal_distribution<double> g;
	CVector v(num + 1);
	for(Eigen::Index i = 0; i < v.size(); ++i)
	{
		v(i) = Complex{g(rng), g(rng)};
	}
	return {DickeBasis{num}, v.normalized()};
}

} // namespace

TEST_CASE("phase parameters")
{
	CHECK(PhaseParams{2.0, 0.5, 0.3}.theta() == doctest::Approx(0.3));
	CHECK(PhaseParams{}.theta() == 0.0);
}

TEST_CASE("rotation about y")
{
	std::mt19937 rng(5);
	for(const int num : {1, 2, 9, 30})
	{
		const BigSpinState s = random_spin(num, rng);
		for(const double theta : {0.0, 0.01, 1.2, -2.9})
		{
			const CVector got = rotate_about_y(s, theta).amplitudes();
			CHECK((got - oracle_rotation(num, theta) * s.amplitudes()).cwiseAbs().maxCoeff() < 1e-11);
			CHECK(got.norm() == doctest::Approx(1.0).epsilon(1e-13));
		}
	}
	// A pi rotation swaps the all-down and all-up Dicke states.
	const CVector flipped = rotate_about_y(BigSpinState::dicke(DickeBasis{6}, 0), pi).amplitudes();
	CHECK(std::abs(flipped(6)) == doctest::Approx(1.0));
}

TEST_CASE("QFI hand values")
{
	// Dicke |n>: 4 <Jy^2> = 2 (j(j+1) - m^2), m = n - N/2.
	for(const int num : {1, 4, 11})
	{
		const double j = 0.5 * num;
		for(int n = 0; n <= num; ++n)
		{
			const double m = n - j;
			CHECK(qfi_jy(BigSpinState::dicke(DickeBasis{num}, n)) == doctest::Approx(2.0 * (j * (j + 1) - m * m)));
		}
	}
	// zeta = 0 gives F = N and N / F = 1.
	CHECK(precision({50, 0.0, 1.0}) == doctest::Approx(1.0));
	CHECK(precision({7, 0.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("QFI agrees with dense variance and with the overlap expansion")
{
	std::mt19937 rng(9);
	for(const int num : {2, 13, 40})
	{
		const BigSpinState s = random_spin(num, rng);
		const double f = qfi_jy(s);
		CHECK(f == doctest::Approx(oracle_qfi(s)).epsilon(1e-12));
		// |<psi| e^{i theta Jy} |psi>|^2 = 1 - theta^2 F / 4 + O(theta^4).
		const double theta = 1e-4;
		const double overlap = std::norm(s.amplitudes().dot(rotate_about_y(s, theta).amplitudes()));
		CHECK(4.0 * (1.0 - overlap) / (theta * theta) == doctest::Approx(f).epsilon(1e-5));
	}
	const BigSpinState cat = cat_state({40, std::sqrt(6.0), 1.0});
	CHECK(qfi_jy(cat) == doctest::Approx(oracle_qfi(cat)).epsilon(1e-12));
	CHECK_THROWS_AS(qfi_jy(BigSpinState{DickeBasis{3}, CVector::Ones(4)}), NotNormalized);
}

TEST_CASE("precision is bounded by the Heisenberg reference")
{
	for(const int num : {1, 3, 10, 35, 80})
	{
		for(const double x : {0.0, 0.05, 0.3, 0.5, 1.5})
		{
			const double p = precision({num, std::sqrt(x * num), 1.0});
			CHECK(p >= 1.0 / num - 1e-12);
		}
	}
}

TEST_CASE("precision surface")
{
	std::vector<double> xs;
	for(int k = 0; k <= 40; ++k)
	{
		xs.push_back(0.025 * k);
	}
	const SweepGrid g = precision_surface({5, 100}, xs, 1.0, 2);
	REQUIRE(g.failed_cells() == 0);
	CHECK(g.row_columns().at(0).first == "heisenberg_limit");
	CHECK(g.row_columns().at(0).second == std::vector<double>{0.2, 0.01});
	CHECK(g.value(0, 0) == doctest::Approx(1.0));
	CHECK(g.value(1, 0) == doctest::Approx(1.0));

	double best = 1e9;
	double best_x = 0.0;
	for(std::size_t c = 0; c < xs.size(); ++c)
	{
		if(g.value(1, c) < best)
		{
			best = g.value(1, c);
			best_x = g.cols()[c];
		}
	}
	// Prototype: minimum 0.0223 near x = 0.27 at N = 100.
	CHECK(best < 0.1);
	CHECK(best == doctest::Approx(0.0223).epsilon(0.05));
	CHECK(best_x == doctest::Approx(0.27).epsilon(0.1));
}

TEST_CASE("cross section")
{
	const CrossSection cs = cross_section(4, 31, 0.5, 1.0, 2);
	REQUIRE(cs.num_spins.size() == 28);
	CHECK(std::all_of(cs.errors.begin(), cs.errors.end(), [](const std::string& e) { return e.empty(); }));
	CHECK(cs.zeta_sq[1] == doctest::Approx(2.5));
	CHECK(cs.n_over_f[1] == doctest::Approx(0.2843).epsilon(1e-3));
	CHECK(cs.n_over_f[2] == doctest::Approx(0.4853).epsilon(1e-3));
	CHECK(cs.fidelity[8] == doctest::Approx(cat_fidelity({12, std::sqrt(6.0), 1.0})).epsilon(1e-12));

	// Interior extrema: fidelity peaks sit one N above the N/F troughs.
	std::vector<int> peaks;
	std::vector<int> troughs;
	for(const auto i : local_maxima(cs.fidelity))
	{
		peaks.push_back(cs.num_spins[i]);
	}
	for(const auto i : local_minima(cs.n_over_f))
	{
		troughs.push_back(cs.num_spins[i]);
	}
	CHECK(peaks == std::vector<int>{6, 9, 13, 16, 20, 23, 27, 30});
	CHECK(troughs == std::vector<int>{5, 8, 12, 15, 19, 22, 26, 29});

	CHECK_THROWS_AS(cross_section(0, 4, 0.5, 1.0), InvalidArgument);
	CHECK_THROWS_AS(cross_section(5, 4, 0.5, 1.0), InvalidArgument);
	CHECK_THROWS_AS(cross_section(4, 5, -0.5, 1.0), InvalidArgument);
}
