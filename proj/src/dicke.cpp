#include "revival/dicke.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace revival
{

namespace
{

constexpr int factorial_table_size = 1 << 15;

const std::vector<double>& log_factorial_table()
{
	static const std::vector<double> table = [] {
		std::vector<double> t(factorial_table_size);
		t[0] = 0.0;
		for(int k = 1; k < factorial_table_size; ++k)
		{
			t[k] = t[k - 1] + std::log(static_cast<double>(k));
		}
		return t;
	}();
	return table;
}

// ln of the Poisson weight e^{-mu} mu^n / n!.
double log_poisson(double mu, int n)
{
	if(mu == 0.0)
	{
		return n == 0 ? 0.0 : -INFINITY;
	}
	return -mu + n * std::log(mu) - log_factorial(n);
}

// Probability of a Poisson(mu) variable exceeding cutoff, summed directly so
// tiny tails are not lost to cancellation against 1.
double poisson_tail(double mu, int cutoff)
{
	double tail = 0.0;
	for(int n = cutoff + 1;; ++n)
	{
		const double p = std::exp(log_poisson(mu, n));
		tail += p;
		if(n > mu && p <= 1e-18 * tail)
		{
			break;
		}
		if(p == 0.0 && n > mu)
		{
			break;
		}
	}
	return tail;
}

constexpr double max_leakage = 1e-10;

} // namespace

DickeBasis::DickeBasis(int num_spins) : n_{num_spins}
{
	if(num_spins < 1)
	{
		throw InvalidBasis("Dicke basis needs N >= 1, got N = " + std::to_string(num_spins));
	}
}

BigSpinState::BigSpinState(DickeBasis basis, CVector amplitudes)
    : basis_{basis}, amps_{std::move(amplitudes)}
{
	if(amps_.size() != basis_.dim())
	{
		throw DimensionMismatch("big spin state for N = " + std::to_string(basis_.num_spins()) +
		                        " needs " + std::to_string(basis_.dim()) + " amplitudes, got " +
		                        std::to_string(amps_.size()));
	}
}

BigSpinState BigSpinState::dicke(DickeBasis basis, int n)
{
	if(n < 0 || n > basis.num_spins())
	{
		throw InvalidArgument("Dicke index " + std::to_string(n) + " outside 0.." +
		                      std::to_string(basis.num_spins()));
	}
	CVector amps = CVector::Zero(basis.dim());
	amps(n) = 1.0;
	return {basis, std::move(amps)};
}

BigSpinState BigSpinState::normalized() const
{
	return {basis_, amps_ / amps_.norm()};
}

FockState::FockState(CVector amplitudes) : amps_{std::move(amplitudes)}
{
	if(amps_.size() < 1)
	{
		throw InvalidArgument("Fock state needs at least one amplitude");
	}
}

double FockState::mean_number() const
{
	double mean = 0.0;
	for(Eigen::Index n = 0; n < amps_.size(); ++n)
	{
		mean += static_cast<double>(n) * std::norm(amps_(n));
	}
	return mean;
}

double log_factorial(int n)
{
	if(n < 0)
	{
		throw InvalidArgument("log_factorial of negative integer " + std::to_string(n));
	}
	if(n < factorial_table_size)
	{
		return log_factorial_table()[static_cast<std::size_t>(n)];
	}
	return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int total, int n)
{
	return log_factorial(total) - log_factorial(total - n) - log_factorial(n);
}

BigSpinState spin_coherent(const SpinCoherentParams& params)
{
	const DickeBasis basis{params.num_spins};
	const int num = params.num_spins;
	const Complex z = params.scaled ? params.zeta / std::sqrt(static_cast<double>(num)) : params.zeta;
	const double r = std::abs(z);

	CVector amps = CVector::Zero(basis.dim());
	if(r == 0.0)
	{
		amps(0) = 1.0;
		return {basis, std::move(amps)};
	}

	const double phase = std::arg(z);
	const double log_prefactor = -0.5 * num * std::log1p(r * r);
	for(int n = 0; n <= num; ++n)
	{
		const double log_mag = log_prefactor + 0.5 * log_binomial(num, n) + n * std::log(r);
		amps(n) = std::polar(std::exp(log_mag), n * phase);
	}
	amps /= amps.norm();
	return {basis, std::move(amps)};
}

CollectiveOp parse_collective_op(std::string_view name)
{
	struct Entry
	{
		std::string_view name;
		CollectiveOp kind;
	};
	static constexpr std::array<Entry, 8> entries{{
	    {"Jz_shifted", CollectiveOp::JzShifted},
	    {"Jplus_scaled", CollectiveOp::JplusScaled},
	    {"Jminus_scaled", CollectiveOp::JminusScaled},
	    {"JminusJplus_over_N", CollectiveOp::JminusJplusOverN},
	    {"Jx", CollectiveOp::Jx},
	    {"Jy", CollectiveOp::Jy},
	    {"Jz", CollectiveOp::Jz},
	    {"Jsquared", CollectiveOp::Jsquared},
	}};
	for(const auto& e : entries)
	{
		if(e.name == name)
		{
			return e.kind;
		}
	}
	throw InvalidArgument("unknown collective operator '" + std::string(name) + "'");
}

double jplus_element(int num_spins, int n)
{
	return std::sqrt(static_cast<double>(n + 1) * static_cast<double>(num_spins - n));
}

CMatrix collective_operator(CollectiveOp kind, const DickeBasis& basis)
{
	const int num = basis.num_spins();
	const Eigen::Index dim = basis.dim();
	CMatrix op = CMatrix::Zero(dim, dim);

	switch(kind)
	{
	case CollectiveOp::JzShifted:
		for(int n = 0; n <= num; ++n)
		{
			op(n, n) = static_cast<double>(n);
		}
		break;
	case CollectiveOp::Jz:
		for(int n = 0; n <= num; ++n)
		{
			op(n, n) = n - 0.5 * num;
		}
		break;
	case CollectiveOp::JplusScaled:
		for(int n = 0; n < num; ++n)
		{
			op(n + 1, n) = std::sqrt((n + 1.0) * (1.0 - static_cast<double>(n) / num));
		}
		break;
	case CollectiveOp::JminusScaled:
		for(int n = 0; n < num; ++n)
		{
			op(n, n + 1) = std::sqrt((n + 1.0) * (1.0 - static_cast<double>(n) / num));
		}
		break;
	case CollectiveOp::JminusJplusOverN:
		for(int n = 0; n <= num; ++n)
		{
			op(n, n) = (n + 1.0) * (1.0 - static_cast<double>(n) / num);
		}
		break;
	case CollectiveOp::Jx:
		for(int n = 0; n < num; ++n)
		{
			op(n + 1, n) = op(n, n + 1) = 0.5 * jplus_element(num, n);
		}
		break;
	case CollectiveOp::Jy:
		// (J_+ - J_-) / 2i
		for(int n = 0; n < num; ++n)
		{
			const double e = 0.5 * jplus_element(num, n);
			op(n + 1, n) = Complex{0.0, -e};
			op(n, n + 1) = Complex{0.0, e};
		}
		break;
	case CollectiveOp::Jsquared:
		op.diagonal().setConstant(basis.j() * (basis.j() + 1.0));
		break;
	default:
		throw InvalidArgument("unknown collective operator kind");
	}
	return op;
}

Complex expectation(const CMatrix& op, const BigSpinState& state)
{
	return expectation(op, state.amplitudes());
}

double mean_excitation(int num_spins, Complex zeta)
{
	const double zsq = std::norm(zeta);
	return zsq / (1.0 + zsq / num_spins);
}

double commutator_defect(int num_spins, Complex zeta)
{
	// [J_-, J_+] / N is diagonal: (n+1)(1 - n/N) - n(1 - (n-1)/N).
	const BigSpinState psi = spin_coherent({num_spins, zeta, true});
	const double num = num_spins;
	double value = 0.0;
	for(int n = 0; n <= num_spins; ++n)
	{
		const double lower_raise = (n + 1.0) * (1.0 - n / num);
		const double raise_lower = n * (1.0 - (n - 1.0) / num);
		value += std::norm(psi.amplitudes()(n)) * (lower_raise - raise_lower);
	}
	return value;
}

FockState embed_to_fock(const BigSpinState& state)
{
	return FockState{state.amplitudes()};
}

int minimum_fock_cutoff(Complex zeta)
{
	const double r = std::abs(zeta);
	const double mu = r * r;
	int cutoff = std::max(1, static_cast<int>(std::ceil(mu + 10.0 * r)));
	while(poisson_tail(mu, cutoff) >= max_leakage)
	{
		++cutoff;
	}
	return cutoff;
}

FockState fock_coherent(Complex zeta, int cutoff)
{
	const double r = std::abs(zeta);
	const double mu = r * r;
	if(cutoff < 1 || cutoff < mu + 10.0 * r)
	{
		throw TruncationLeakage("Fock cutoff " + std::to_string(cutoff) +
		                        " is below |zeta|^2 + 10|zeta| = " + std::to_string(mu + 10.0 * r));
	}
	const double leak = poisson_tail(mu, cutoff);
	if(leak >= max_leakage)
	{
		throw TruncationLeakage("Fock cutoff " + std::to_string(cutoff) + " discards probability " +
		                        std::to_string(leak) + " of the coherent state");
	}

	CVector amps = CVector::Zero(cutoff + 1);
	if(r == 0.0)
	{
		amps(0) = 1.0;
		return FockState{std::move(amps)};
	}
	const double phase = std::arg(zeta);
	for(int n = 0; n <= cutoff; ++n)
	{
		amps(n) = std::polar(std::exp(0.5 * log_poisson(mu, n)), n * phase);
	}
	amps /= amps.norm();
	return FockState{std::move(amps)};
}

double fock_overlap_sq(const FockState& a, const FockState& b)
{
	const Eigen::Index common = std::min(a.amplitudes().size(), b.amplitudes().size());
	return std::norm(a.amplitudes().head(common).dot(b.amplitudes().head(common)));
}

double poisson_convergence(int num_spins, Complex zeta)
{
	const FockState embedded = embed_to_fock(spin_coherent({num_spins, zeta, true}));
	const int cutoff = std::max(num_spins, minimum_fock_cutoff(zeta));
	const FockState field = fock_coherent(zeta, cutoff);
	return std::max(0.0, 1.0 - fock_overlap_sq(field, embedded));
}

} // namespace revival
