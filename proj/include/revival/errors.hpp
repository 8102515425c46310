#pragma once

#include <stdexcept>
#include <string>

namespace revival
{

/// Base for every error raised by the library.
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

class InvalidBasis : public Error
{
public:
	using Error::Error;
};

class InvalidArgument : public Error
{
public:
	using Error::Error;
};

class DimensionMismatch : public Error
{
public:
	using Error::Error;
};

class NotNormalized : public Error
{
public:
	using Error::Error;
};

/// A truncated Fock expansion loses more probability than allowed.
class TruncationLeakage : public Error
{
public:
	using Error::Error;
};

/// A matrix does not have the excitation-conserving block structure.
class StructureViolation : public Error
{
public:
	using Error::Error;
};

/// The cat-state normalization constant vanished.
class DegenerateNormalization : public Error
{
public:
	using Error::Error;
};

class InvalidDensityMatrix : public Error
{
public:
	using Error::Error;
};

} // namespace revival
