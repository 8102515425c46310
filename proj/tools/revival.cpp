// revival: command-line driver for the collapse-and-revival, cat-state,
// Wigner and metrology computations. Run `revival --help` or
// `revival --schema` for the accepted options and config keys.

#include "revival/cli/commands.hpp"
#include "revival/cli/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace
{

using namespace revival::cli;

struct Options
{
	std::optional<std::string> config;
	std::vector<std::string> sets;
	bool oracle = false;
	bool jc = false;
	std::vector<int> figures;
	// Flag overrides keyed by config key.
	std::map<std::string, std::optional<std::string>> overrides;
};

const std::vector<std::pair<std::string, std::string>> override_flags{
    {"--out", "run.out"},
    {"--workers", "run.workers"},
    {"--cutoff", "jc.cutoff"},
    {"-N,--N", "model.N"},
    {"--zeta-sq", "model.zeta_sq"},
    {"--x", "model.x"},
    {"--zeta-phase", "model.zeta_phase"},
    {"--lambda", "model.lambda"},
    {"--omega", "model.omega"},
    {"--qubit-omega", "model.qubit_omega"},
    {"--t-end", "time.t_end"},
    {"--t-end-over-t0", "time.t_end_over_t0"},
    {"--samples", "time.samples"},
    {"--n-list", "sweep.N_list"},
    {"--x-list", "sweep.x_list"},
    {"--n-max", "sweep.N_max"},
    {"--n-theta", "sphere.n_theta"},
    {"--n-phi", "sphere.n_phi"},
};

void add_common(CLI::App& app, Options& o, const std::vector<int>& figures)
{
	app.add_option("--config", o.config, "config file ([section] key = value)")->type_name("PATH");
	app.add_option("--set", o.sets, "override any config key (repeatable)")->type_name("KEY=VALUE");
	app.add_flag("--oracle", o.oracle, "cross-check against dense diagonalization");
	app.add_flag("--jc", o.jc, "also evolve the Jaynes-Cummings reference (dynamics)");
	for(const auto& [flag, key] : override_flags)
	{
		app.add_option(flag, o.overrides[key], "sets " + key)->type_name(key == "run.out" ? "DIR" : "VALUE");
	}
	for(const int f : figures)
	{
		app.add_flag_callback("--fig" + std::to_string(f), [&o, f] { o.figures.push_back(f); },
		                      "figure " + std::to_string(f) + " preset");
	}
}

RunConfig build_config(Command command, const Options& o)
{
	RunConfig cfg{command};
	if(o.config)
	{
		cfg.merge_file(*o.config);
	}
	for(const std::string& s : o.sets)
	{
		const auto eq = s.find('=');
		if(eq == std::string::npos)
		{
			throw ConfigError("--set expects section.key=value, got '" + s + "'");
		}
		cfg.set(s.substr(0, eq), s.substr(eq + 1), "--set");
	}
	for(const auto& [key, value] : o.overrides)
	{
		if(value)
		{
			cfg.set(key, *value, "command line");
		}
	}
	if(o.oracle)
	{
		cfg.set("run.oracle", "true");
	}
	if(o.jc)
	{
		cfg.set("run.jc", "true");
	}
	cfg.figures = o.figures;
	return cfg;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Qubit-big spin collapse and revival, spin cat states, spin Wigner functions and phase sensing"};
	app.set_version_flag("--version", std::string(version()));
	app.require_subcommand(0, 1);
	app.footer("Without a subcommand, a single --figK flag selects the matching one.\n"
	           "Exit codes: 0 ok, 2 config error, 3 some sweep cells failed, 4 invariant violated.\n"
	           "The output directory is --out, else run.out, else $REVIVAL_OUT, else ./revival_out.");

	bool schema = false;
	app.add_flag("--schema", schema, "list config keys and exit");

	Options options;
	add_common(app, options, {1, 2, 3, 4, 5, 6});

	std::map<CLI::App*, Command> commands;
	for(const Command c : {Command::Dynamics, Command::FidelityScan, Command::Wigner, Command::Metrology})
	{
		CLI::App* sub = app.add_subcommand(std::string(command_name(c)));
		add_common(*sub, options, figures_for(c));
		commands[sub] = c;
	}
	app.get_subcommand("dynamics")->description("qubit <sigma_z> and linear entropy vs time (fig1)");
	app.get_subcommand("fidelity-scan")->description("cat fidelity over (N, x) and vs time (fig2, fig3)");
	app.get_subcommand("wigner")->description("spin Wigner function of the reduced state at t0 (fig4)");
	app.get_subcommand("metrology")->description("N/F surface and N cross-section (fig5, fig6)");

	try
	{
		app.parse(argc, argv);
	}
	catch(const CLI::ParseError& e)
	{
		const int code = app.exit(e);
		return code == 0 ? 0 : exit_config;
	}

	if(schema)
	{
		std::cout << describe_schema();
		return exit_ok;
	}

	try
	{
		std::optional<Command> command;
		for(const auto& [sub, c] : commands)
		{
			if(sub->parsed())
			{
				command = c;
			}
		}
		if(!command)
		{
			if(options.figures.empty())
			{
				std::cerr << app.help();
				return exit_config;
			}
			for(const auto& [sub, c] : commands)
			{
				const auto figs = figures_for(c);
				if(std::find(figs.begin(), figs.end(), options.figures.front()) != figs.end())
				{
					command = c;
				}
			}
		}
		const RunConfig cfg = build_config(*command, options);
		return run(cfg, std::cerr, std::cerr);
	}
	catch(const ConfigError& e)
	{
		std::cerr << "config error: " << e.what() << '\n';
		return exit_config;
	}
}
