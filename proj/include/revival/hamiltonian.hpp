#pragma once

// Qubit + big spin and qubit + field (Jaynes-Cummings) Hamiltonians on the
// composite space. Basis states are (q, n) with q in {0, 1} the qubit
// (sigma_z = |0><0| - |1><1|) and n the Dicke or Fock index; the layout is
// qubit-major, index = q * (size + 1) + n.

#include "revival/dicke.hpp"
#include "revival/types.hpp"

#include <array>
#include <vector>

namespace revival
{

struct ModelParams
{
	double omega = 1.0;        ///< big spin / field splitting
	double qubit_omega = 1.0;  ///< qubit splitting
	double lambda = 1.0;       ///< coupling
	int size = 1;              ///< N for the spin model, Fock cutoff for JC

	[[nodiscard]] bool resonant() const { return omega == qubit_omega; }
};

/// Throws InvalidArgument unless lambda > 0 and size >= 1.
void validate(const ModelParams& params);

class CompositeState
{
public:
	/// Throws DimensionMismatch unless amplitudes has 2 (size+1) entries.
	CompositeState(int size, CVector amplitudes);

	/// qubit (x) other, with qubit amplitudes (c0, c1).
	static CompositeState product(const Eigen::Vector2cd& qubit, const CVector& other);
	static CompositeState product(const Eigen::Vector2cd& qubit, const BigSpinState& spin);
	static CompositeState product(const Eigen::Vector2cd& qubit, const FockState& field);

	[[nodiscard]] int size() const { return size_; }
	[[nodiscard]] Eigen::Index other_dim() const { return size_ + 1; }
	[[nodiscard]] const CVector& amplitudes() const { return amps_; }
	[[nodiscard]] double norm() const { return amps_.norm(); }

	[[nodiscard]] Eigen::Index index(int qubit, int n) const { return qubit * (size_ + 1) + n; }

	/// Amplitudes arranged as a 2 x (size+1) matrix, row = qubit.
	[[nodiscard]] CMatrix as_matrix() const;

private:
	int size_;
	CVector amps_;
};

/// H = omega (J_z + N/2) + (Omega/2) sigma_z + (lambda/sqrt(N)) (J_+ sigma_- + J_- sigma_+).
CMatrix build_spin_hamiltonian(const ModelParams& params);

/// H = omega a^dag a + (Omega/2) sigma_z + lambda (a^dag sigma_- + a sigma_+), truncated at
/// params.size photons.
CMatrix build_jc_hamiltonian(const ModelParams& params);

/// Diagonal operator counting excitations, (J_z + N/2) + (sigma_z + 1)/2.
CMatrix total_excitation_operator(int size);

/// sigma_z (x) I on the composite space.
CMatrix composite_sigma_z(int size);

/// One excitation-conserving block of H.
struct Block
{
	/// Composite indices; the second is unused for singletons.
	std::array<Eigen::Index, 2> indices{};
	int dim = 1;
	Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
};

/// Pairs {(0, n), (1, n+1)} for n = 0 .. size-1 followed by the singletons
/// (1, 0) and (0, size).
struct BlockDecomposition
{
	int size = 0;
	std::vector<Block> blocks;

	[[nodiscard]] Eigen::Index dim() const { return 2 * (static_cast<Eigen::Index>(size) + 1); }
};

/// Splits H into its 2x2 excitation blocks. Throws StructureViolation if an
/// entry outside the blocks exceeds 1e-14 in magnitude or a block is not
/// Hermitian.
BlockDecomposition block_decompose(const CMatrix& h, int size);

/// Dense matrix assembled from the blocks.
CMatrix reassemble(const BlockDecomposition& blocks);

/// Eigenvalues of all blocks, sorted ascending.
RVector block_eigenvalues(const BlockDecomposition& blocks);

} // namespace revival
