#pragma once

// Dicke basis of the symmetric j = N/2 subspace, collective spin operators,
// spin coherent states and the embedding of the big spin into a truncated
// Fock space.
//
// Index n in {0, ..., N} counts up-spins: n = 0 is the all-down state and
// (J_z + N/2) = diag(n).

#include "revival/errors.hpp"
#include "revival/types.hpp"

#include <string>
#include <string_view>

namespace revival
{

class DickeBasis
{
public:
	/// Throws InvalidBasis for N < 1.
	explicit DickeBasis(int num_spins);

	[[nodiscard]] int num_spins() const { return n_; }
	[[nodiscard]] Eigen::Index dim() const { return n_ + 1; }
	/// Total spin j = N/2.
	[[nodiscard]] double j() const { return 0.5 * n_; }

	friend bool operator==(const DickeBasis&, const DickeBasis&) = default;

private:
	int n_;
};

/// Pure state of the big spin, N+1 amplitudes over the Dicke basis.
class BigSpinState
{
public:
	/// Throws DimensionMismatch if the vector length is not N+1.
	BigSpinState(DickeBasis basis, CVector amplitudes);

	/// Dicke state with n up-spins.
	static BigSpinState dicke(DickeBasis basis, int n);

	[[nodiscard]] const DickeBasis& basis() const { return basis_; }
	[[nodiscard]] int num_spins() const { return basis_.num_spins(); }
	[[nodiscard]] const CVector& amplitudes() const { return amps_; }
	[[nodiscard]] double norm() const { return amps_.norm(); }

	/// Copy scaled to unit norm.
	[[nodiscard]] BigSpinState normalized() const;

private:
	DickeBasis basis_;
	CVector amps_;
};

/// Truncated single-mode Fock state, amplitudes for |0> ... |cutoff>.
class FockState
{
public:
	explicit FockState(CVector amplitudes);

	[[nodiscard]] int cutoff() const { return static_cast<int>(amps_.size()) - 1; }
	[[nodiscard]] const CVector& amplitudes() const { return amps_; }
	[[nodiscard]] double norm() const { return amps_.norm(); }
	[[nodiscard]] double mean_number() const;

private:
	CVector amps_;
};

struct SpinCoherentParams
{
	int num_spins = 1;
	Complex zeta{0.0, 0.0};
	/// Use zeta / sqrt(N) in place of zeta, giving |N, zeta/sqrt(N)>.
	bool scaled = true;
};

/// ln(n!) from a cumulative table of ln k; exact sums up to the table
/// size and lgamma beyond.
double log_factorial(int n);

/// ln of the binomial coefficient N choose n.
double log_binomial(int total, int n);

/// Spin coherent state in Dicke form,
///   C_n = (1+|z|^2)^(-N/2) sqrt(N choose n) z^n,
/// evaluated in log space so N ~ 1e4 does not overflow.
BigSpinState spin_coherent(const SpinCoherentParams& params);

enum class CollectiveOp
{
	JzShifted,          ///< J_z + N/2 = diag(n)
	JplusScaled,        ///< J_+ / sqrt(N)
	JminusScaled,       ///< J_- / sqrt(N)
	JminusJplusOverN,   ///< J_- J_+ / N = diag((n+1)(1 - n/N))
	Jx,                 ///< unscaled
	Jy,                 ///< unscaled
	Jz,                 ///< unscaled, diag(n - N/2)
	Jsquared,           ///< j(j+1) I
};

/// Parse "Jz_shifted", "Jplus_scaled", ... Throws InvalidArgument on an
/// unknown name.
CollectiveOp parse_collective_op(std::string_view name);

/// Dense matrix of a collective operator in the Dicke basis.
CMatrix collective_operator(CollectiveOp kind, const DickeBasis& basis);

/// <n+1| J_+ |n> for the unscaled operator, sqrt((n+1)(N-n)).
double jplus_element(int num_spins, int n);

/// <psi|A|psi>. Throws DimensionMismatch when sizes disagree.
template <typename DerivedOp, typename DerivedVec>
Complex expectation(const Eigen::MatrixBase<DerivedOp>& op, const Eigen::MatrixBase<DerivedVec>& psi);

Complex expectation(const CMatrix& op, const BigSpinState& state);

/// <N, zeta/sqrt(N)| (J_z + N/2) |N, zeta/sqrt(N)> in closed form.
double mean_excitation(int num_spins, Complex zeta);

/// <[J_-/sqrt(N), J_+/sqrt(N)]> on the scaled spin coherent state, summed
/// from the Dicke-basis matrix elements.
double commutator_defect(int num_spins, Complex zeta);

/// Maps Dicke state n to Fock state n, cutoff = N.
FockState embed_to_fock(const BigSpinState& state);

/// Field coherent state e^{-|zeta|^2/2} zeta^n / sqrt(n!) truncated at
/// cutoff and renormalized. Throws TruncationLeakage if the cutoff is below
/// |zeta|^2 + 10|zeta| or the discarded probability reaches 1e-10.
FockState fock_coherent(Complex zeta, int cutoff);

/// Smallest cutoff accepted by fock_coherent for this zeta.
int minimum_fock_cutoff(Complex zeta);

/// 1 - |<zeta| f |N, zeta/sqrt(N)>|^2 between the Poisson and binomial
/// amplitude profiles.
double poisson_convergence(int num_spins, Complex zeta);

/// |<a|b>|^2 after zero-padding the shorter state.
double fock_overlap_sq(const FockState& a, const FockState& b);

template <typename DerivedOp, typename DerivedVec>
Complex expectation(const Eigen::MatrixBase<DerivedOp>& op, const Eigen::MatrixBase<DerivedVec>& psi)
{
	if(op.rows() != op.cols() || op.cols() != psi.size())
	{
		throw DimensionMismatch("expectation: operator is " + std::to_string(op.rows()) + "x" +
		                        std::to_string(op.cols()) + ", state has " +
		                        std::to_string(psi.size()) + " amplitudes");
	}
	return psi.dot(op * psi);
}

} // namespace revival

