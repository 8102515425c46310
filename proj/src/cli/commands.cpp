#include "revival/cli/commands.hpp"

#include "revival/cat.hpp"
#include "revival/dynamics.hpp"
#include "revival/metrology.hpp"
#include "revival/sweep.hpp"
#include "revival/wigner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef REVIVAL_VERSION
#define REVIVAL_VERSION "unknown"
#endif

namespace revival::cli
{

namespace
{

using Metadata = std::vector<std::pair<std::string, std::string>>;

constexpr double norm_drift_tol = 1e-10;
constexpr double energy_drift_tol = 1e-9;
constexpr double oracle_tol = 1e-9;
constexpr double wigner_integral_tol = 1e-6;
constexpr double fidelity_excess_tol = 1e-9;
constexpr double sql_anchor_tol = 1e-12;
constexpr int oracle_max_size = 400;

std::string join(const std::vector<int>& v, const char* sep = ",")
{
	std::string out;
	for(std::size_t i = 0; i < v.size(); ++i)
	{
		out += (i ? sep : "") + std::to_string(v[i]);
	}
	return out;
}

std::string join(const std::vector<double>& v)
{
	std::string out;
	for(std::size_t i = 0; i < v.size(); ++i)
	{
		out += (i ? "," : "") + format_number(v[i]);
	}
	return out;
}

class Job
{
public:
	Job(const RunConfig& config, std::ostream& log)
	    : config_(config), log_(log), start_(std::chrono::steady_clock::now())
	{
		const std::vector<int> allowed = figures_for(config.command());
		std::vector<int> figs = config.figures;
		std::sort(figs.begin(), figs.end());
		figs.erase(std::unique(figs.begin(), figs.end()), figs.end());
		for(const int f : figs)
		{
			if(std::find(allowed.begin(), allowed.end(), f) == allowed.end())
			{
				throw ConfigError("--fig" + std::to_string(f) + " does not belong to " +
				                  std::string(command_name(config.command())));
			}
			presets_.push_back(f);
		}
		workers_ = config.get_int("run.workers", 1);
		if(workers_ < 1)
		{
			throw ConfigError("run.workers must be >= 1");
		}
		oracle_ = config.get_bool("run.oracle", false);
		manifest_.command = std::string(command_name(config.command()));
		for(const int f : presets_)
		{
			manifest_.presets.push_back("fig" + std::to_string(f));
		}
		manifest_.version = std::string(version());
		manifest_.workers = workers_;
	}

	[[nodiscard]] const RunConfig& config() const { return config_; }
	[[nodiscard]] int workers() const { return workers_; }
	[[nodiscard]] bool oracle() const { return oracle_; }
	[[nodiscard]] bool preset(int fig) const
	{
		return std::find(presets_.begin(), presets_.end(), fig) != presets_.end();
	}
	/// True when `fig` was requested or no preset was given at all.
	[[nodiscard]] bool wants(int fig) const { return presets_.empty() || preset(fig); }

	void param(const std::string& key, const std::string& value) { manifest_.parameters.emplace_back(key, value); }
	void param(const std::string& key, double value) { param(key, format_number(value)); }
	void param(const std::string& key, int value) { param(key, std::to_string(value)); }

	/// Freezes the parameters, hashes them and opens the output directory.
	void seal()
	{
		std::ostringstream canon;
		canon << "command=" << manifest_.command << '\n';
		for(const std::string& p : manifest_.presets)
		{
			canon << "preset=" << p << '\n';
		}
		for(const auto& [k, v] : manifest_.parameters)
		{
			canon << k << '=' << v << '\n';
		}
		manifest_.config_hash = sha256_hex(canon.str());
		outputs_.emplace(output_dir(config_));
	}

	[[nodiscard]] Metadata metadata(const Metadata& extra) const
	{
		Metadata md{{"command", manifest_.command}, {"version", manifest_.version},
		            {"config_hash", manifest_.config_hash}};
		if(!manifest_.presets.empty())
		{
			std::string p;
			for(const std::string& s : manifest_.presets)
			{
				p += (p.empty() ? "" : ",") + s;
			}
			md.emplace_back("presets", p);
		}
		md.emplace_back("units", "time in units of 1/lambda; angles in radians; x = |zeta|^2/N");
		md.insert(md.end(), manifest_.parameters.begin(), manifest_.parameters.end());
		md.insert(md.end(), extra.begin(), extra.end());
		return md;
	}

	std::ostream& open(const std::string& name) { return outputs_->open(name); }

	void add_cells(std::size_t count) { manifest_.cells_total += count; }

	void record_failures(const std::string& file, const SweepGrid& grid)
	{
		add_cells(grid.cell_count());
		for(std::size_t r = 0; r < grid.rows().size(); ++r)
		{
			for(std::size_t c = 0; c < grid.cols().size(); ++c)
			{
				if(!grid.cell(r, c).ok())
				{
					manifest_.failures.push_back({file, grid.rows()[r], grid.cols()[c], grid.cell(r, c).error});
				}
			}
		}
	}

	void record_failure(const std::string& file, int num_spins, double x, const std::string& error)
	{
		manifest_.failures.push_back({file, num_spins, x, error});
	}

	/// Records an invariant that holds when value <= tolerance.
	void check(const std::string& name, double value, double tolerance)
	{
		manifest_.invariants.push_back({name, value, tolerance, value <= tolerance});
	}

	int finish(std::ostream& err)
	{
		bool violated = false;
		for(const InvariantCheck& c : manifest_.invariants)
		{
			if(!c.ok)
			{
				violated = true;
				err << "invariant violated: " << c.name << " = " << format_number(c.value) << " > "
				    << format_number(c.tolerance) << '\n';
			}
		}
		if(violated)
		{
			outputs_->discard();
			manifest_.exit_code = exit_invariant;
		}
		else
		{
			outputs_->commit();
			manifest_.exit_code = manifest_.failures.empty() ? exit_ok : exit_partial;
		}
		manifest_.files = outputs_->files();
		manifest_.wall_time_seconds =
		    std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
		const auto path = write_manifest(outputs_->dir(), manifest_);
		for(const FileRecord& f : manifest_.files)
		{
			log_ << "wrote " << (outputs_->dir() / f.name).string() << '\n';
		}
		log_ << "wrote " << path.string() << '\n';
		if(!manifest_.failures.empty())
		{
			err << manifest_.failures.size() << " of " << manifest_.cells_total
			    << " sweep cells failed; see the manifest\n";
		}
		return manifest_.exit_code;
	}

private:
	const RunConfig& config_;
	std::ostream& log_;
	std::chrono::steady_clock::time_point start_;
	std::vector<int> presets_;
	int workers_ = 1;
	bool oracle_ = false;
	Manifest manifest_;
	std::optional<OutputSet> outputs_;
};

int int_at_least(const RunConfig& cfg, const std::string& key, int fallback, int minimum)
{
	const int v = cfg.get_int(key, fallback);
	if(v < minimum)
	{
		throw ConfigError(key + " must be >= " + std::to_string(minimum) + ", got " + std::to_string(v));
	}
	return v;
}

double coupling(const RunConfig& cfg)
{
	const double lambda = cfg.get_real("model.lambda", 1.0);
	if(!(lambda > 0.0))
	{
		throw ConfigError("model.lambda must be > 0");
	}
	return lambda;
}

std::vector<int> spin_list(const RunConfig& cfg, const std::string& key, const std::vector<int>& fallback)
{
	const std::vector<int> v = cfg.get_int_list(key, fallback);
	if(v.empty() || *std::min_element(v.begin(), v.end()) < 1)
	{
		throw ConfigError(key + " needs at least one entry, all N >= 1");
	}
	return v;
}

/// zeta from model.zeta_sq or model.x (x N) and model.zeta_phase.
std::optional<Complex> model_zeta(const RunConfig& cfg, int num_spins, std::optional<double> default_zeta_sq)
{
	const auto zeta_sq = cfg.find_real("model.zeta_sq");
	const auto x = cfg.find_real("model.x");
	if(zeta_sq && x)
	{
		throw ConfigError("set only one of model.zeta_sq and model.x");
	}
	std::optional<double> value = zeta_sq ? zeta_sq : x ? std::optional<double>(*x * num_spins) : default_zeta_sq;
	if(!value)
	{
		return std::nullopt;
	}
	if(*value < 0.0)
	{
		throw ConfigError("|zeta|^2 must be >= 0");
	}
	return std::polar(std::sqrt(*value), cfg.get_real("model.zeta_phase", 0.0));
}

TimeGrid time_grid(const RunConfig& cfg, double t0, double default_ratio, int default_samples)
{
	TimeGrid grid;
	grid.t_start = cfg.get_real("time.t_start", 0.0);
	if(const auto t_end = cfg.find_real("time.t_end"))
	{
		grid.t_end = *t_end;
	}
	else
	{
		if(!(t0 > 0.0))
		{
			throw ConfigError("t0 is zero for zeta = 0; set time.t_end");
		}
		grid.t_end = cfg.get_real("time.t_end_over_t0", default_ratio) * t0;
	}
	grid.samples = cfg.get_int("time.samples", default_samples);
	try
	{
		grid.validate();
	}
	catch(const InvalidArgument& e)
	{
		throw ConfigError(std::string("time grid: ") + e.what());
	}
	return grid;
}

void time_params(Job& job, const RunConfig& cfg, double default_ratio, int default_samples)
{
	job.param("time.t_start", cfg.get_real("time.t_start", 0.0));
	if(const auto t_end = cfg.find_real("time.t_end"))
	{
		job.param("time.t_end", *t_end);
	}
	else
	{
		job.param("time.t_end_over_t0", cfg.get_real("time.t_end_over_t0", default_ratio));
	}
	job.param("time.samples", cfg.get_int("time.samples", default_samples));
}

// ---------------------------------------------------------------- dynamics

void evolve_model(Job& job, const std::string& file, const CMatrix& h, int size, const CompositeState& psi0,
                  const TimeGrid& grid, const Metadata& extra)
{
	const BlockDecomposition blocks = block_decompose(h, size);
	const Trajectory tr = evolve(blocks, psi0, grid);

	double norm_drift = 0.0;
	double energy_drift = 0.0;
	const double scale = std::max(1.0, std::abs(tr.energy.front()));
	for(std::size_t i = 0; i < tr.times.size(); ++i)
	{
		norm_drift = std::max(norm_drift, std::abs(tr.norm[i] - 1.0));
		energy_drift = std::max(energy_drift, std::abs(tr.energy[i] - tr.energy.front()) / scale);
	}
	job.check(file + ": norm drift", norm_drift, norm_drift_tol);
	job.check(file + ": relative energy drift", energy_drift, energy_drift_tol);

	if(job.oracle())
	{
		const BlockPropagator block{blocks};
		const DensePropagator dense{h};
		const int last = grid.samples - 1;
		double worst = 0.0;
		for(const int i : {0, last / 4, last / 2, 3 * last / 4, last})
		{
			const double t = grid.at(i);
			worst = std::max(worst, (block.apply(psi0, t).amplitudes() - dense.apply(psi0, t).amplitudes()).norm());
		}
		job.check(file + ": block vs dense state distance", worst, oracle_tol);
	}

	write_columns_csv(job.open(file), {"t", "sigma_z", "qubit_linear_entropy"},
	                  {&tr.times, &tr.sigma_z, &tr.qubit_linear_entropy}, job.metadata(extra));
}

void cmd_dynamics(Job& job)
{
	const RunConfig& cfg = job.config();
	const int num = int_at_least(cfg, "model.N", 170, 1);
	const Complex zeta = *model_zeta(cfg, num, 16.0);

	ModelParams model;
	model.omega = cfg.get_real("model.omega", 1.0);
	model.qubit_omega = cfg.get_real("model.qubit_omega", 1.0);
	model.lambda = coupling(cfg);
	model.size = num;

	const bool jc = job.preset(1) || cfg.get_bool("run.jc", false);
	if(cfg.has("jc.cutoff") && !jc)
	{
		throw ConfigError("jc.cutoff needs --jc");
	}
	const int cutoff = int_at_least(cfg, "jc.cutoff", 400, 1);
	const double t0 = attractor_time(num, zeta, model.lambda);
	const TimeGrid grid = time_grid(cfg, t0, 2.5, 4001);

	job.param("model.N", num);
	job.param("model.zeta_sq", std::norm(zeta));
	job.param("model.zeta_phase", cfg.get_real("model.zeta_phase", 0.0));
	job.param("model.omega", model.omega);
	job.param("model.qubit_omega", model.qubit_omega);
	job.param("model.lambda", model.lambda);
	time_params(job, cfg, 2.5, 4001);
	job.param("run.jc", jc ? "true" : "false");
	if(jc)
	{
		job.param("jc.cutoff", cutoff);
	}
	job.param("run.oracle", job.oracle() ? "true" : "false");

	// Rejects a cutoff that cannot hold the coherent state before any output.
	std::optional<FockState> field;
	if(jc)
	{
		field = fock_coherent(zeta, cutoff);
	}
	job.seal();

	const CompositeState spin0 = CompositeState::product(Eigen::Vector2cd{1.0, 0.0}, spin_coherent({num, zeta, true}));
	evolve_model(job, "dynamics_spin.csv", build_spin_hamiltonian(model), num, spin0, grid,
	             {{"model", "qubit-big spin"},
	              {"t0", format_number(t0)},
	              {"initial_state", "|0> x |N, zeta/sqrt(N)>"}});

	if(jc)
	{
		ModelParams jc_model = model;
		jc_model.size = cutoff;
		const CompositeState jc0 = CompositeState::product(Eigen::Vector2cd{1.0, 0.0}, *field);
		evolve_model(job, "dynamics_jc.csv", build_jc_hamiltonian(jc_model), cutoff, jc0, grid,
		             {{"model", "Jaynes-Cummings"},
		              {"t0", format_number(t0)},
		              {"t0_field", format_number(attractor_time(std::nullopt, zeta, model.lambda))},
		              {"initial_state", "|0> x |zeta> (Fock coherent state)"}});
	}
}

// ----------------------------------------------------------- fidelity-scan

double dense_cat_fidelity(const CatSpec& spec)
{
	const DensePropagator dense{build_spin_hamiltonian(interaction_frame_model(spec.num_spins, spec.lambda))};
	const double t0 = attractor_time(spec.num_spins, spec.zeta, spec.lambda);
	return reduced_fidelity(cat_state(spec).amplitudes(), dense.apply(cat_initial_state(spec), t0));
}

void check_fidelity_range(Job& job, const std::string& file, const std::vector<double>& values)
{
	double excess = 0.0;
	for(const double f : values)
	{
		if(!std::isnan(f))
		{
			excess = std::max({excess, f - 1.0, -f});
		}
	}
	job.check(file + ": fidelity outside [0, 1]", excess, fidelity_excess_tol);
}

void cmd_fidelity_scan(Job& job)
{
	const RunConfig& cfg = job.config();
	const double lambda = coupling(cfg);
	const bool surface = job.wants(2);
	const bool series = job.wants(3);

	const int n_max = int_at_least(cfg, "sweep.N_max", 100, 1);
	const std::vector<int> rows = spin_list(cfg, "sweep.N_list", parse_int_list("2:" + std::to_string(n_max) + ":2"));
	const std::vector<double> cols = cfg.get_real_list("sweep.x_list", parse_real_list("0.02:1:0.02"));
	const std::vector<int> series_n = spin_list(cfg, "series.N_list", {12, 40, 70, 100});
	const double series_zeta_sq = cfg.get_real("series.zeta_sq", 6.0);
	if(series_zeta_sq < 0.0)
	{
		throw ConfigError("series.zeta_sq must be >= 0");
	}
	const Complex series_zeta{std::sqrt(series_zeta_sq), 0.0};
	std::vector<TimeGrid> grids;
	if(series)
	{
		for(const int n : series_n)
		{
			grids.push_back(time_grid(cfg, attractor_time(n, series_zeta, lambda), 2.0, 2001));
		}
	}

	job.param("model.lambda", lambda);
	if(surface)
	{
		job.param("sweep.N_list", join(rows));
		job.param("sweep.x_list", join(cols));
	}
	if(series)
	{
		job.param("series.N_list", join(series_n));
		job.param("series.zeta_sq", series_zeta_sq);
		time_params(job, cfg, 2.0, 2001);
	}
	job.param("run.oracle", job.oracle() ? "true" : "false");
	job.seal();

	if(surface)
	{
		const std::string file = "fidelity_surface.csv";
		const SweepGrid grid = fidelity_surface(rows, cols, lambda, job.workers());
		job.record_failures(file, grid);
		std::vector<double> values;
		for(const CellResult& c : grid.cells())
		{
			values.push_back(c.value);
		}
		check_fidelity_range(job, file, values);

		if(job.oracle())
		{
			const std::size_t mid = grid.cols().size() / 2;
			double worst = 0.0;
			for(std::size_t r = 0; r < grid.rows().size(); ++r)
			{
				const int n = grid.rows()[r];
				const double x = grid.cols()[mid];
				if(n > oracle_max_size || x < 0.0 || !grid.cell(r, mid).ok())
				{
					continue;
				}
				const double dense = dense_cat_fidelity({n, Complex{std::sqrt(x * n), 0.0}, lambda});
				worst = std::max(worst, std::abs(dense - grid.value(r, mid)));
			}
			job.check(file + ": block vs dense fidelity", worst, oracle_tol);
		}
		write_sweep_csv(job.open(file), grid,
		                job.metadata({{"value", "fidelity at t0 of the reduced big-spin state to the cat state"},
		                              {"zeta", "sqrt(x N), real"}}));
	}

	if(series)
	{
		std::vector<FidelitySeries> out(series_n.size());
		const auto cells = run_cells(series_n.size(), job.workers(), [&](std::size_t i) {
			out[i] = fidelity_vs_time(series_n[i], series_zeta, grids[i], lambda);
			return out[i].t0;
		});
		job.add_cells(cells.size());
		for(std::size_t i = 0; i < series_n.size(); ++i)
		{
			const std::string file = "fidelity_vs_time_N" + std::to_string(series_n[i]) + ".csv";
			if(!cells[i].ok())
			{
				job.record_failure(file, series_n[i], series_zeta_sq / series_n[i], cells[i].error);
				continue;
			}
			const FidelitySeries& s = out[i];
			check_fidelity_range(job, file, s.fidelity);
			std::vector<double> scaled;
			for(const double t : s.times)
			{
				scaled.push_back(t / s.t0);
			}
			write_columns_csv(job.open(file), {"t", "t_over_t0", "fidelity"}, {&s.times, &scaled, &s.fidelity},
			                  job.metadata({{"N", std::to_string(series_n[i])}, {"t0", format_number(s.t0)}}));
		}
	}
}

// ------------------------------------------------------------------ wigner

struct Panel
{
	int num_spins;
	Complex zeta;
};

void cmd_wigner(Job& job)
{
	const RunConfig& cfg = job.config();
	const double lambda = coupling(cfg);

	std::vector<Panel> panels;
	if(cfg.has("model.N"))
	{
		if(job.preset(4))
		{
			throw ConfigError("--fig4 fixes the panel parameters; drop model.N");
		}
		const int num = int_at_least(cfg, "model.N", 1, 1);
		const auto zeta = model_zeta(cfg, num, std::nullopt);
		if(!zeta)
		{
			throw ConfigError("wigner with model.N needs model.zeta_sq or model.x");
		}
		panels.push_back({num, *zeta});
	}
	else
	{
		if(cfg.has("model.zeta_sq") || cfg.has("model.x"))
		{
			throw ConfigError("model.zeta_sq / model.x need model.N");
		}
		const double phase = cfg.get_real("model.zeta_phase", 0.0);
		panels = {{12, std::polar(std::sqrt(6.0), phase)},
		          {20, std::polar(std::sqrt(0.16 * 20), phase)},
		          {40, std::polar(std::sqrt(0.16 * 40), phase)}};
	}
	const auto n_theta = cfg.find_int("sphere.n_theta");
	const auto n_phi = cfg.find_int("sphere.n_phi");
	if((n_theta && *n_theta < 1) || (n_phi && *n_phi < 1))
	{
		throw ConfigError("empty sphere grid: sphere.n_theta and sphere.n_phi must be >= 1");
	}

	job.param("model.lambda", lambda);
	std::string panel_text;
	for(const Panel& p : panels)
	{
		panel_text += (panel_text.empty() ? "" : "; ") + std::string("N=") + std::to_string(p.num_spins) +
		              " zeta_sq=" + format_number(std::norm(p.zeta)) + " zeta_phase=" + format_number(std::arg(p.zeta));
	}
	job.param("panels", panel_text);
	job.param("sphere.n_theta", n_theta ? std::to_string(*n_theta) : "2N+2");
	job.param("sphere.n_phi", n_phi ? std::to_string(*n_phi) : "2N+2");
	job.param("run.oracle", job.oracle() ? "true" : "false");
	job.seal();

	for(const Panel& p : panels)
	{
		const int num = p.num_spins;
		const std::string file = "wigner_N" + std::to_string(num) + ".csv";
		const SphereGrid grid{n_theta.value_or(2 * num + 2), n_phi.value_or(2 * num + 2)};
		const CatSpec spec{num, p.zeta, lambda};
		const double t0 = attractor_time(num, p.zeta, lambda);
		const CompositeState psi = exact_state(spec, t0);
		const DensityMatrix rho = reduce_bigspin(psi);
		check_density_matrix(rho);
		const WignerField field = wigner_function(rho, grid);

		// Gauss-Legendre with n nodes is exact to degree 2n - 1.
		if(2 * grid.n_theta() - 1 >= num && grid.n_phi() > num)
		{
			job.check(file + ": |integral of W - 1|", std::abs(field.integral() - 1.0), wigner_integral_tol);
		}
		if(job.oracle() && 2 * grid.n_theta() - 1 >= 2 * num && grid.n_phi() > 2 * num)
		{
			const double expected = overlap_constant(0.5 * num) * (rho * rho).trace().real();
			job.check(file + ": overlap identity relative error",
			          std::abs(sphere_overlap(field, field) - expected) / expected, oracle_tol);
		}

		std::vector<double> theta;
		std::vector<double> phi;
		std::vector<double> w;
		for(int i = 0; i < grid.n_theta(); ++i)
		{
			for(int k = 0; k < grid.n_phi(); ++k)
			{
				theta.push_back(grid.theta()[static_cast<std::size_t>(i)]);
				phi.push_back(grid.phi()[static_cast<std::size_t>(k)]);
				w.push_back(field.values(i, k));
			}
		}
		write_columns_csv(
		    job.open(file), {"theta", "phi", "W"}, {&theta, &phi, &w},
		    job.metadata({{"N", std::to_string(num)},
		                  {"zeta_sq", format_number(std::norm(p.zeta))},
		                  {"t0", format_number(t0)},
		                  {"n_theta", std::to_string(grid.n_theta())},
		                  {"n_phi", std::to_string(grid.n_phi())},
		                  {"state", "reduced big-spin state at t0"},
		                  {"fidelity_to_cat", format_number(reduced_fidelity(cat_state(spec).amplitudes(), psi))},
		                  {"normalization", "sphere integral of W is 1"},
		                  {"frame", "all-down Dicke state at theta = 0"}}));
	}
}

// --------------------------------------------------------------- metrology

void write_cross_section(std::ostream& out, const CrossSection& cs, const Metadata& metadata)
{
	write_metadata(out, metadata);
	out << "N,zeta_sq,fidelity,N_over_F,status\n";
	for(std::size_t i = 0; i < cs.num_spins.size(); ++i)
	{
		std::string status = cs.errors[i].empty() ? "ok" : "error: " + cs.errors[i];
		std::replace(status.begin(), status.end(), ',', ';');
		std::replace(status.begin(), status.end(), '\n', ' ');
		out << cs.num_spins[i] << ',' << format_number(cs.zeta_sq[i]) << ',' << format_number(cs.fidelity[i]) << ','
		    << format_number(cs.n_over_f[i]) << ',' << status << '\n';
	}
}

void cmd_metrology(Job& job)
{
	const RunConfig& cfg = job.config();
	const double lambda = coupling(cfg);
	const bool surface = job.wants(5);
	const bool cross = job.wants(6);

	const int n_max = int_at_least(cfg, "sweep.N_max", 100, 1);
	const std::vector<int> rows = spin_list(cfg, "sweep.N_list", parse_int_list("5:" + std::to_string(n_max) + ":5"));
	const std::vector<double> cols = cfg.get_real_list("sweep.x_list", parse_real_list("0:1:0.01"));
	const double cross_x = cfg.get_real("cross.x", 0.5);
	const int cross_min = int_at_least(cfg, "cross.N_min", 4, 1);
	const int cross_max = int_at_least(cfg, "cross.N_max", 31, cross_min);
	if(cross_x < 0.0)
	{
		throw ConfigError("cross.x must be >= 0");
	}

	job.param("model.lambda", lambda);
	if(surface)
	{
		job.param("sweep.N_list", join(rows));
		job.param("sweep.x_list", join(cols));
	}
	if(cross)
	{
		job.param("cross.x", cross_x);
		job.param("cross.N_min", cross_min);
		job.param("cross.N_max", cross_max);
	}
	job.param("run.oracle", job.oracle() ? "true" : "false");
	job.seal();

	if(surface)
	{
		const std::string file = "metrology_surface.csv";
		const SweepGrid grid = precision_surface(rows, cols, lambda, job.workers());
		job.record_failures(file, grid);

		double anchor = 0.0;
		double below_heisenberg = 0.0;
		for(std::size_t r = 0; r < grid.rows().size(); ++r)
		{
			for(std::size_t c = 0; c < grid.cols().size(); ++c)
			{
				if(!grid.cell(r, c).ok())
				{
					continue;
				}
				const double v = grid.value(r, c);
				if(grid.cols()[c] == 0.0)
				{
					anchor = std::max(anchor, std::abs(v - 1.0));
				}
				below_heisenberg = std::max(below_heisenberg, 1.0 / grid.rows()[r] - v);
			}
		}
		job.check(file + ": |N/F - 1| at x = 0", anchor, sql_anchor_tol);
		job.check(file + ": 1/N - N/F", below_heisenberg, sql_anchor_tol);

		if(job.oracle())
		{
			const std::size_t mid = grid.cols().size() / 2;
			double worst = 0.0;
			for(std::size_t r = 0; r < grid.rows().size(); ++r)
			{
				const int n = grid.rows()[r];
				const double x = grid.cols()[mid];
				if(n > oracle_max_size || x < 0.0 || !grid.cell(r, mid).ok())
				{
					continue;
				}
				const BigSpinState cat = cat_state({n, Complex{std::sqrt(x * n), 0.0}, lambda});
				const CMatrix jy = collective_operator(CollectiveOp::Jy, cat.basis());
				const CVector& v = cat.amplitudes();
				const double mean = v.dot(jy * v).real();
				const double dense = 4.0 * (v.dot(jy * (jy * v)).real() - mean * mean);
				worst = std::max(worst, std::abs(dense - qfi_jy(cat)) / std::max(1.0, dense));
			}
			job.check(file + ": dense vs tridiagonal QFI", worst, oracle_tol);
		}
		write_sweep_csv(job.open(file), grid,
		                job.metadata({{"value", "N / F with F = 4 Var(J_y) of the cat state"},
		                              {"heisenberg_limit", "1/N"},
		                              {"zeta", "sqrt(x N), real"}}));
	}

	if(cross)
	{
		const std::string file = "cross_section.csv";
		const CrossSection cs = cross_section(cross_min, cross_max, cross_x, lambda, job.workers());
		job.add_cells(2 * cs.num_spins.size());
		for(std::size_t i = 0; i < cs.num_spins.size(); ++i)
		{
			if(!cs.errors[i].empty())
			{
				job.record_failure(file, cs.num_spins[i], cs.x, cs.errors[i]);
			}
		}
		check_fidelity_range(job, file, cs.fidelity);

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
		write_cross_section(job.open(file), cs,
		                    job.metadata({{"zeta_rounding", cs.zeta_rounding},
		                                  {"fidelity_peaks_N", join(peaks, " ")},
		                                  {"n_over_f_troughs_N", join(troughs, " ")}}));
	}
}

} // namespace

std::filesystem::path output_dir(const RunConfig& config)
{
	if(config.has("run.out"))
	{
		return config.get_text("run.out", "");
	}
	if(const char* env = std::getenv("REVIVAL_OUT"); env != nullptr && *env != '\0')
	{
		return env;
	}
	return "revival_out";
}

std::string_view version()
{
	return REVIVAL_VERSION;
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err)
{
	try
	{
		Job job(config, log);
		switch(config.command())
		{
		case Command::Dynamics: cmd_dynamics(job); break;
		case Command::FidelityScan: cmd_fidelity_scan(job); break;
		case Command::Wigner: cmd_wigner(job); break;
		case Command::Metrology: cmd_metrology(job); break;
		}
		return job.finish(err);
	}
	catch(const ConfigError& e)
	{
		err << "config error: " << e.what() << '\n';
		return exit_config;
	}
	catch(const InvalidArgument& e)
	{
		err << "invalid parameters: " << e.what() << '\n';
		return exit_config;
	}
	catch(const InvalidBasis& e)
	{
		err << "invalid parameters: " << e.what() << '\n';
		return exit_config;
	}
	catch(const TruncationLeakage& e)
	{
		err << "invalid parameters: " << e.what() << '\n';
		return exit_config;
	}
	catch(const InvariantViolation& e)
	{
		err << "invariant violated: " << e.what() << '\n';
		return exit_invariant;
	}
	catch(const NotNormalized& e)
	{
		err << "invariant violated: " << e.what() << '\n';
		return exit_invariant;
	}
	catch(const StructureViolation& e)
	{
		err << "invariant violated: " << e.what() << '\n';
		return exit_invariant;
	}
	catch(const InvalidDensityMatrix& e)
	{
		err << "invariant violated: " << e.what() << '\n';
		return exit_invariant;
	}
	catch(const std::exception& e)
	{
		err << "error: " << e.what() << '\n';
		return exit_failure;
	}
}

} // namespace revival::cli
