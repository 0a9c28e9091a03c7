#include "spinphase/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <ostream>

#include "spinphase/csv.hpp"
#include "spinphase/geomphase.hpp"
#include "spinphase/scatter_core.hpp"
#include "spinphase/svg_plot.hpp"
#include "spinphase/sweep.hpp"
#include "spinphase/transfer_oracle.hpp"
#include "spinphase/validate.hpp"

namespace spinphase {
namespace {

struct OptionSpec
{
    char const* key;
    bool is_flag;
    char const* help;
    std::vector<std::string> commands;
};

std::vector<std::string> const physics_commands{"amplitudes", "phase", "sweep"};
std::vector<std::string> const phase_commands{"phase", "sweep"};

std::vector<OptionSpec> const& option_table()
{
    static std::vector<OptionSpec> const table{
        {"k", false, "wavenumber [1/a_B]", physics_commands},
        {"aB", false, "length unit a_B", physics_commands},
        {"eps", false, "energy unit eps = 1/(2 m a_B^2)", physics_commands},
        {"G", false, "barrier strength", physics_commands},
        {"J", false, "spin-spin coupling", physics_commands},
        {"S", false, "impurity spin", physics_commands},
        {"mz", false, "impurity S_z projection", physics_commands},
        {"degrees", true, "print angles in degrees", physics_commands},
        {"width", false, "barrier separation", {"amplitudes"}},
        {"oracle", true, "also print transfer-matrix amplitudes and reflections", {"amplitudes"}},
        {"width-a", false, "barrier separation of arm a", phase_commands},
        {"width-b", false, "barrier separation of arm b", {"phase"}},
        {"normalized", true, "compute on the normalized transmitted state", {"phase"}},
        {"tol", false, "connection-integral tolerance [rad]", phase_commands},
        {"method", false, "pancharatnam_mesh | derivative_quadrature", phase_commands},
        {"initial-points", false, "initial mesh intervals / panels", phase_commands},
        {"max-points", false, "refinement budget", phase_commands},
        {"vary", false, "width-diff | J | G", {"sweep"}},
        {"from", false, "sweep start", {"sweep"}},
        {"to", false, "sweep end", {"sweep"}},
        {"steps", false, "number of sweep points", {"sweep"}},
        {"width-diff", false, "fixed b - a for J and G sweeps", {"sweep"}},
        {"out", false, "CSV output path, '-' for stdout", {"sweep"}},
        {"plot", false, "optional SVG output path", {"sweep"}},
        {"threads", false, "worker threads", {"sweep"}},
        {"draws", false, "random parameter draws", {"validate"}},
        {"seed", false, "random seed", {"validate"}},
    };
    return table;
}

// Keys echoed into CSV metadata; output locations and threading are not
// part of the computation.
std::vector<std::string> const sweep_metadata_keys{"k", "aB", "eps", "G", "J", "S", "mz", "vary", "from", "to",
                                                   "steps", "width-a", "width-diff", "tol", "method",
                                                   "initial-points", "max-points", "degrees"};

struct Invocation
{
    std::string command;
    RunConfig config;
    bool help = false;
    std::string help_text;
};

Invocation parse_invocation(std::vector<std::string> const& args, CliEnvironment const& env)
{
    CLI::App app{"Spin-dependent transmission and geometric phase of a double-barrier impurity arm",
                 "spinphase"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::map<std::string, std::vector<CLI::Option*>> registered;
    std::string config_path;

    std::map<std::string, CLI::App*> subs;
    subs["amplitudes"] = app.add_subcommand("amplitudes", "transmission amplitudes for one arm");
    subs["phase"] = app.add_subcommand("phase", "geometric phase between two arm widths");
    subs["sweep"] = app.add_subcommand("sweep", "parameter sweep written as CSV (and SVG)");
    subs["validate"] = app.add_subcommand("validate", "oracle-equivalence and invariant suites");

    for (auto& [name, sub] : subs)
    {
        registered["config"].push_back(sub->add_option("--config", config_path, "key = value config file"));
    }
    for (auto const& spec : option_table())
    {
        for (auto const& cmd : spec.commands)
        {
            std::string const flag = std::string("--") + spec.key;
            CLI::Option* opt = spec.is_flag ? subs[cmd]->add_flag(flag, flags[spec.key], spec.help)
                                            : subs[cmd]->add_option(flag, values[spec.key], spec.help);
            registered[spec.key].push_back(opt);
        }
    }

    std::vector<char const*> argv{"spinphase"};
    for (auto const& a : args)
    {
        argv.push_back(a.c_str());
    }

    Invocation inv;
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (CLI::CallForHelp const&)
    {
        inv.help = true;
        auto const* selected = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        inv.help_text = app.help(selected == &app ? "" : selected->get_name());
        return inv;
    }
    catch (CLI::CallForVersion const&)
    {
        inv.help = true;
        inv.help_text = std::string(tool_version) + "\n";
        return inv;
    }
    catch (CLI::ParseError const& e)
    {
        throw ConfigError(e.what());
    }
    inv.command = app.get_subcommands().front()->get_name();

    ConfigLayer flag_layer;
    for (auto const& spec : option_table())
    {
        bool given = false;
        for (auto* opt : registered[spec.key])
        {
            given = given || opt->count() > 0;
        }
        if (given)
        {
            flag_layer[spec.key] = spec.is_flag ? (flags[spec.key] ? "true" : "false") : values[spec.key];
        }
    }

    ConfigLayer const defaults = default_layer();
    auto check_keys = [&](ConfigLayer const& layer, std::string const& origin) {
        for (auto const& [key, value] : layer)
        {
            if (!defaults.count(key))
            {
                throw ConfigError(origin + ": unknown key '" + key + "'");
            }
        }
    };

    std::vector<ConfigLayer> layers{defaults};
    if (env.config_path && !env.config_path->empty())
    {
        layers.push_back(load_config_file(*env.config_path));
        check_keys(layers.back(), *env.config_path);
    }
    if (!config_path.empty())
    {
        layers.push_back(load_config_file(config_path));
        check_keys(layers.back(), config_path);
    }
    layers.push_back(std::move(flag_layer));
    inv.config = RunConfig(merge_layers(layers));
    return inv;
}

//---------------------------------------------------------------------------//
// Typed extraction with flag-named errors
//---------------------------------------------------------------------------//

double positive(RunConfig const& cfg, std::string const& key)
{
    double const v = cfg.get_double(key);
    if (!(v > 0.0))
    {
        throw ConfigError("--" + key + " must be positive, got " + cfg.get_string(key));
    }
    return v;
}

PhysicalParams physical_params(RunConfig const& cfg)
{
    PhysicalParams p;
    p.k = positive(cfg, "k");
    p.a_bohr = positive(cfg, "aB");
    p.eps = positive(cfg, "eps");
    p.barrier = cfg.get_double("G");
    p.coupling = cfg.get_double("J");
    double const s = cfg.get_double("S");
    double const mz = cfg.get_double("mz");
    if (!(s >= 0.5) || std::abs(2.0 * s - std::round(2.0 * s)) > 1e-9)
    {
        throw ConfigError("--S must be a positive half-integer, got " + cfg.get_string("S"));
    }
    try
    {
        p.spin = SpinConfig(s, mz);
    }
    catch (DomainError const&)
    {
        throw ConfigError("--mz must be one of -S, -S+1, ..., S, got " + cfg.get_string("mz"));
    }
    return p;
}

QuadratureConfig quadrature_config(RunConfig const& cfg)
{
    QuadratureConfig q;
    q.tol = positive(cfg, "tol");
    std::string const& method = cfg.get_string("method");
    if (method == "pancharatnam_mesh" || method == "mesh")
    {
        q.method = QuadratureMethod::pancharatnam_mesh;
    }
    else if (method == "derivative_quadrature" || method == "quadrature")
    {
        q.method = QuadratureMethod::derivative_quadrature;
    }
    else
    {
        throw ConfigError("--method must be pancharatnam_mesh or derivative_quadrature, got " + method);
    }
    long const initial = cfg.get_long("initial-points");
    if (initial < 2 || initial > (1L << 24))
    {
        throw ConfigError("--initial-points must be at least 2");
    }
    q.initial_points = static_cast<int>(initial);
    q.max_points = cfg.get_long("max-points");
    if (q.max_points <= initial)
    {
        throw ConfigError("--max-points must exceed --initial-points");
    }
    return q;
}

struct Printer
{
    std::ostream& out;
    bool degrees;

    void value(std::string const& key, double v) const { out << key << " = " << format_number(v) << '\n'; }
    void angle(std::string const& key, double v) const
    {
        value(key, degrees ? v * 180.0 / std::numbers::pi : v);
    }
    void complex(std::string const& key, Complex z) const
    {
        value(key + "_re", z.real());
        value(key + "_im", z.imag());
    }
};

void echo_params(std::ostream& out, RunConfig const& cfg, std::vector<std::string> const& keys)
{
    out << "# " << tool_version << '\n';
    for (auto const& key : keys)
    {
        out << "# " << key << " = " << cfg.get_string(key) << '\n';
    }
}

std::vector<std::string> const physics_keys{"k", "aB", "eps", "G", "J", "S", "mz"};

int cmd_amplitudes(RunConfig const& cfg, std::ostream& out)
{
    PhysicalParams const p = physical_params(cfg);
    double const width = positive(cfg, "width");
    bool const degrees = cfg.get_bool("degrees");

    auto keys = physics_keys;
    keys.push_back("width");
    echo_params(out, cfg, keys);

    double const half = 0.5 * width;
    auto const d = nondimensionalize(p, half);
    auto const im = closed_form_intermediates(d, p.spin);
    auto const amps = transmission_amplitudes(d, p.spin);
    auto const state = TransmittedState{amps.t_up, amps.t_down, p.spin.two_m()};
    auto const phases = channel_phases(state);

    Printer const pr{out, degrees};
    pr.value("kappa", d.kappa);
    pr.value("g", d.g);
    pr.value("j", d.j);
    pr.value("alpha", d.alpha);
    pr.complex("t_up", amps.t_up);
    pr.complex("t_down", amps.t_down);
    pr.value("abs2_t_up", std::norm(amps.t_up));
    pr.value("abs2_t_down", std::norm(amps.t_down));
    pr.angle("phi_up", phases.up);
    pr.angle("phi_down", phases.down);
    pr.value("cos_theta", std::abs(amps.t_up) / std::sqrt(state.norm2()));

    if (cfg.get_bool("oracle"))
    {
        auto const orc = oracle_amplitudes(p, half);
        pr.complex("lab_phase", im.lab_phase());
        pr.complex("oracle_t_up", orc.t_up);
        pr.complex("oracle_t_down", orc.t_down);
        pr.complex("oracle_r_up", *orc.r_up);
        pr.complex("oracle_r_down", *orc.r_down);
        pr.value("oracle_flux_sum", orc.transmitted_flux() + std::norm(*orc.r_up) + std::norm(*orc.r_down));
    }
    return exit_code::ok;
}

int cmd_phase(RunConfig const& cfg, std::ostream& out)
{
    PhysicalParams const p = physical_params(cfg);
    double const width_a = positive(cfg, "width-a");
    double const width_b = positive(cfg, "width-b");
    QuadratureConfig const q = quadrature_config(cfg);
    bool const normalized = cfg.get_bool("normalized");
    bool const degrees = cfg.get_bool("degrees");

    auto keys = physics_keys;
    for (char const* k : {"width-a", "width-b", "tol", "method", "initial-points", "max-points", "normalized"})
    {
        keys.emplace_back(k);
    }
    echo_params(out, cfg, keys);

    PhaseResult const r = normalized ? geometric_phase_normalized(p, width_a, width_b, q)
                                     : geometric_phase(p, width_a, width_b, q);
    Printer const pr{out, degrees};
    pr.angle("gamma_s", r.gamma_s);
    pr.angle("total_phase", r.total_phase);
    pr.angle("connection", r.connection);
    pr.complex("overlap", r.overlap);
    pr.value("visibility", r.visibility);
    out << "n_points = " << r.n_points << '\n';
    pr.angle("est_error", r.est_error);
    out << "converged = " << (r.converged ? "true" : "false") << '\n';
    return r.converged ? exit_code::ok : exit_code::numerical;
}

int cmd_sweep(RunConfig const& cfg, std::ostream& out, std::ostream& err)
{
    SweepSpec spec;
    spec.base = physical_params(cfg);
    try
    {
        spec.variable = parse_sweep_variable(cfg.get_string("vary"));
    }
    catch (DomainError const&)
    {
        throw ConfigError("--vary must be width-diff, J or G, got " + cfg.get_string("vary"));
    }
    spec.from = cfg.get_double("from");
    spec.to = cfg.get_double("to");
    if (!(spec.from < spec.to))
    {
        throw ConfigError("--from must be less than --to");
    }
    long const steps = cfg.get_long("steps");
    if (steps < 2 || steps > 10'000'000)
    {
        throw ConfigError("--steps must be at least 2");
    }
    spec.steps = static_cast<int>(steps);
    spec.reference_width_a = positive(cfg, "width-a");
    spec.width_diff = cfg.get_double("width-diff");
    spec.quadrature = quadrature_config(cfg);
    long const threads = cfg.get_long("threads");
    if (threads < 1 || threads > 1024)
    {
        throw ConfigError("--threads must be between 1 and 1024");
    }
    bool const degrees = cfg.get_bool("degrees");
    try
    {
        spec.validate();
    }
    catch (DomainError const& e)
    {
        throw ConfigError(std::string("invalid sweep: ") + e.what());
    }

    auto const rows = run_sweep(spec, static_cast<int>(threads));

    CsvMetadata meta{{"tool", tool_version}};
    for (auto const& key : sweep_metadata_keys)
    {
        meta.emplace_back(key, cfg.get_string(key));
    }

    std::string const& out_path = cfg.get_string("out");
    if (out_path == "-" || out_path.empty())
    {
        write_sweep_csv(out, rows, spec.variable, meta, degrees);
    }
    else
    {
        std::ofstream file(out_path, std::ios::binary);
        if (!file)
        {
            throw ConfigError("cannot write --out file '" + out_path + "'");
        }
        write_sweep_csv(file, rows, spec.variable, meta, degrees);
    }

    std::string const& plot_path = cfg.get_string("plot");
    if (!plot_path.empty())
    {
        std::vector<double> xs, ys;
        double const scale = degrees ? 180.0 / std::numbers::pi : 1.0;
        for (auto const& r : rows)
        {
            xs.push_back(r.value);
            ys.push_back(scale * r.gamma_s);
        }
        std::string const x_label = spec.variable == SweepVariable::width_diff ? "width difference b - a"
                                    : spec.variable == SweepVariable::coupling_j ? "coupling J"
                                                                                 : "barrier G";
        std::ofstream file(plot_path, std::ios::binary);
        if (!file)
        {
            throw ConfigError("cannot write --plot file '" + plot_path + "'");
        }
        file << render_svg_polyline(xs, ys, {"geometric phase", x_label, degrees ? "gamma_s [deg]" : "gamma_s [rad]"});
    }

    auto const converged = std::count_if(rows.begin(), rows.end(), [](auto const& r) { return r.converged; });
    if (static_cast<double>(converged) < 0.99 * static_cast<double>(rows.size()))
    {
        err << "spinphase: only " << converged << " of " << rows.size() << " rows converged\n";
        return exit_code::numerical;
    }
    return exit_code::ok;
}

int cmd_validate(RunConfig const& cfg, std::ostream& out)
{
    long const draws = cfg.get_long("draws");
    if (draws < 1)
    {
        throw ConfigError("--draws must be positive");
    }
    long const seed = cfg.get_long("seed");
    auto const report = run_validation(draws, static_cast<std::uint64_t>(seed));
    out << "# " << tool_version << "\n# draws = " << draws << "\n# seed = " << seed << '\n';
    print_report(out, report);
    return report.passed() ? exit_code::ok : exit_code::numerical;
}

}  // namespace

CliEnvironment CliEnvironment::from_process()
{
    CliEnvironment env;
    if (char const* path = std::getenv("SPINPHASE_CONFIG"))
    {
        env.config_path = path;
    }
    return env;
}

ConfigLayer default_layer()
{
    return {
        {"k", "0.8"},
        {"aB", "1"},
        {"eps", "1"},
        {"G", "10"},
        {"J", "11"},
        {"S", "0.5"},
        {"mz", "-0.5"},
        {"degrees", "false"},
        {"width", "2"},
        {"oracle", "false"},
        {"width-a", "2"},
        {"width-b", "62"},
        {"normalized", "false"},
        {"tol", "1e-9"},
        {"method", "pancharatnam_mesh"},
        {"initial-points", "16"},
        {"max-points", "1048576"},
        {"vary", "width-diff"},
        {"from", "0"},
        {"to", "60"},
        {"steps", "601"},
        {"width-diff", "60"},
        {"out", "-"},
        {"plot", ""},
        {"threads", "1"},
        {"draws", "1000"},
        {"seed", "42"},
    };
}

RunConfig resolve_run_config(std::vector<std::string> const& args, CliEnvironment const& env)
{
    return parse_invocation(args, env).config;
}

int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err, CliEnvironment const& env)
{
    Invocation inv;
    try
    {
        inv = parse_invocation(args, env);
    }
    catch (ConfigError const& e)
    {
        err << "spinphase: " << e.what() << "\n";
        return exit_code::usage;
    }
    if (inv.help)
    {
        out << inv.help_text;
        return exit_code::ok;
    }

    try
    {
        if (inv.command == "amplitudes")
        {
            return cmd_amplitudes(inv.config, out);
        }
        if (inv.command == "phase")
        {
            return cmd_phase(inv.config, out);
        }
        if (inv.command == "sweep")
        {
            return cmd_sweep(inv.config, out, err);
        }
        return cmd_validate(inv.config, out);
    }
    catch (DomainError const& e)
    {
        err << "spinphase: " << e.what() << "\n";
        return exit_code::usage;
    }
    catch (std::runtime_error const& e)
    {
        err << "spinphase: " << e.what() << "\n";
        return exit_code::numerical;
    }
}

}  // namespace spinphase
