#include "revival/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace revival
{

namespace
{

constexpr double structure_tol = 1e-14;

// Fills the diagonal shared by both models and the coupling between
// (0, n) and (1, n+1) given by coupling(n).
template <typename Coupling>
CMatrix excitation_hamiltonian(const ModelParams& params, Coupling coupling)
{
	const int size = params.size;
	const Eigen::Index other = size + 1;
	CMatrix h = CMatrix::Zero(2 * other, 2 * other);
	for(int n = 0; n <= size; ++n)
	{
		h(n, n) = params.omega * n + 0.5 * params.qubit_omega;
		h(other + n, other + n) = params.omega * n - 0.5 * params.qubit_omega;
	}
	for(int n = 0; n < size; ++n)
	{
		const double g = coupling(n);
		h(n, other + n + 1) = g;
		h(other + n + 1, n) = g;
	}
	return h;
}

} // namespace

void validate(const ModelParams& params)
{
	if(!(params.lambda > 0.0))
	{
		throw InvalidArgument("coupling lambda must be positive, got " + std::to_string(params.lambda));
	}
	if(params.size < 1)
	{
		throw InvalidBasis("model size must be >= 1, got " + std::to_string(params.size));
	}
}

CompositeState::CompositeState(int size, CVector amplitudes) : size_{size}, amps_{std::move(amplitudes)}
{
	if(size_ < 1)
	{
		throw InvalidBasis("composite state needs size >= 1");
	}
	if(amps_.size() != 2 * (static_cast<Eigen::Index>(size_) + 1))
	{
		throw DimensionMismatch("composite state of size " + std::to_string(size_) + " needs " +
		                        std::to_string(2 * (size_ + 1)) + " amplitudes, got " +
		                        std::to_string(amps_.size()));
	}
}

CompositeState CompositeState::product(const Eigen::Vector2cd& qubit, const CVector& other)
{
	const Eigen::Index dim = other.size();
	CVector amps(2 * dim);
	amps.head(dim) = qubit(0) * other;
	amps.tail(dim) = qubit(1) * other;
	return {static_cast<int>(dim) - 1, std::move(amps)};
}

CompositeState CompositeState::product(const Eigen::Vector2cd& qubit, const BigSpinState& spin)
{
	return product(qubit, spin.amplitudes());
}

CompositeState CompositeState::product(const Eigen::Vector2cd& qubit, const FockState& field)
{
	return product(qubit, field.amplitudes());
}

CMatrix CompositeState::as_matrix() const
{
	const Eigen::Index other = size_ + 1;
	CMatrix m(2, other);
	m.row(0) = amps_.head(other).transpose();
	m.row(1) = amps_.tail(other).transpose();
	return m;
}

CMatrix build_spin_hamiltonian(const ModelParams& params)
{
	validate(params);
	const double num = params.size;
	return excitation_hamiltonian(params, [&](int n) {
		return params.lambda * std::sqrt((n + 1.0) * (1.0 - n / num));
	});
}

CMatrix build_jc_hamiltonian(const ModelParams& params)
{
	validate(params);
	return excitation_hamiltonian(params, [&](int n) { return params.lambda * std::sqrt(n + 1.0); });
}

CMatrix total_excitation_operator(int size)
{
	const Eigen::Index other = size + 1;
	CMatrix x = CMatrix::Zero(2 * other, 2 * other);
	for(int n = 0; n <= size; ++n)
	{
		x(n, n) = n + 1.0;
		x(other + n, other + n) = static_cast<double>(n);
	}
	return x;
}

CMatrix composite_sigma_z(int size)
{
	const Eigen::Index other = size + 1;
	CMatrix s = CMatrix::Zero(2 * other, 2 * other);
	s.diagonal().head(other).setConstant(1.0);
	s.diagonal().tail(other).setConstant(-1.0);
	return s;
}

BlockDecomposition block_decompose(const CMatrix& h, int size)
{
	const Eigen::Index other = size + 1;
	const Eigen::Index dim = 2 * other;
	if(size < 1 || h.rows() != dim || h.cols() != dim)
	{
		throw DimensionMismatch("block_decompose: matrix is " + std::to_string(h.rows()) + "x" +
		                        std::to_string(h.cols()) + ", expected " + std::to_string(dim));
	}

	BlockDecomposition out;
	out.size = size;
	out.blocks.reserve(static_cast<std::size_t>(size) + 2);

	// Block id per composite index; everything outside a block must vanish.
	std::vector<int> owner(static_cast<std::size_t>(dim), -1);
	for(int n = 0; n < size; ++n)
	{
		Block b;
		b.dim = 2;
		b.indices = {n, other + n + 1};
		for(int r = 0; r < 2; ++r)
		{
			for(int c = 0; c < 2; ++c)
			{
				b.h(r, c) = h(b.indices[r], b.indices[c]);
			}
		}
		owner[static_cast<std::size_t>(n)] = n;
		owner[static_cast<std::size_t>(other + n + 1)] = n;
		out.blocks.push_back(b);
	}
	for(const Eigen::Index idx : {other, static_cast<Eigen::Index>(size)})
	{
		Block b;
		b.dim = 1;
		b.indices = {idx, idx};
		b.h(0, 0) = h(idx, idx);
		owner[static_cast<std::size_t>(idx)] = static_cast<int>(out.blocks.size());
		out.blocks.push_back(b);
	}

	for(Eigen::Index c = 0; c < dim; ++c)
	{
		for(Eigen::Index r = 0; r < dim; ++r)
		{
			if(owner[static_cast<std::size_t>(r)] != owner[static_cast<std::size_t>(c)] &&
			   std::abs(h(r, c)) > structure_tol)
			{
				throw StructureViolation("entry (" + std::to_string(r) + ", " + std::to_string(c) +
				                         ") couples different excitation blocks");
			}
		}
	}
	for(const Block& b : out.blocks)
	{
		if(hermiticity_defect(b.h.topLeftCorner(b.dim, b.dim)) > structure_tol)
		{
			throw StructureViolation("excitation block at index " + std::to_string(b.indices[0]) +
			                         " is not Hermitian");
		}
	}
	return out;
}

CMatrix reassemble(const BlockDecomposition& blocks)
{
	CMatrix h = CMatrix::Zero(blocks.dim(), blocks.dim());
	for(const Block& b : blocks.blocks)
	{
		for(int r = 0; r < b.dim; ++r)
		{
			for(int c = 0; c < b.dim; ++c)
			{
				h(b.indices[r], b.indices[c]) = b.h(r, c);
			}
		}
	}
	return h;
}

RVector block_eigenvalues(const BlockDecomposition& blocks)
{
	std::vector<double> values;
	values.reserve(static_cast<std::size_t>(blocks.dim()));
	for(const Block& b : blocks.blocks)
	{
		if(b.dim == 1)
		{
			values.push_back(b.h(0, 0).real());
			continue;
		}
		const double centre = 0.5 * (b.h(0, 0).real() + b.h(1, 1).real());
		const double half_gap = 0.5 * (b.h(0, 0).real() - b.h(1, 1).real());
		const double radius = std::hypot(half_gap, std::abs(b.h(0, 1)));
		values.push_back(centre - radius);
		values.push_back(centre + radius);
	}
	std::sort(values.begin(), values.end());
	return Eigen::Map<const RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

} // namespace revival
