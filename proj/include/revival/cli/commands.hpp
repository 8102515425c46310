#pragma once

// Subcommands of the revival driver. Each resolves its parameters, computes,
// stages its CSV files and writes manifest_<command>.json next to them.
//
// Output files
//   dynamics       dynamics_spin.csv, dynamics_jc.csv (with --jc or --fig1)
//                  columns t, sigma_z, qubit_linear_entropy
//   fidelity-scan  fidelity_surface.csv (fig2): N, x, zeta_sq, fidelity, status
//                  fidelity_vs_time_N<N>.csv (fig3): t, t_over_t0, fidelity
//   wigner         wigner_N<N>.csv (fig4): theta, phi, W
//   metrology      metrology_surface.csv (fig5): N, x, zeta_sq, N_over_F,
//                  heisenberg_limit, status
//                  cross_section.csv (fig6): N, zeta_sq, fidelity, N_over_F, status

#include "revival/cli/config.hpp"
#include "revival/cli/manifest.hpp"

#include <filesystem>
#include <iosfwd>

namespace revival::cli
{

enum ExitCode : int
{
	exit_ok = 0,
	exit_failure = 1,
	exit_config = 2,
	exit_partial = 3,
	exit_invariant = 4,
};

class InvariantViolation : public Error
{
public:
	using Error::Error;
};

/// run.out, else $REVIVAL_OUT, else "revival_out".
std::filesystem::path output_dir(const RunConfig& config);

/// Library version string.
std::string_view version();

/// Runs the configured command and returns its exit code. Progress goes to
/// `log`, errors to `err`. Never throws.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

} // namespace revival::cli
