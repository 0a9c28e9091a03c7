// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spinphase/cli.hpp"
#include "spinphase/errors.hpp"
#include "spinphase/geomphase.hpp"
#include "spinphase/sweep.hpp"
#include "spinphase/transfer_oracle.hpp"
#include "spinphase/validate.hpp"

using namespace spinphase;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome
{
    bool pass;
    std::string detail;
};

std::string fmt(char const* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double angle_gap(double x, double y)
{
    return std::abs(principal_angle(x - y));
}

PhysicalParams figure_params(double barrier, double coupling)
{
    PhysicalParams p;
    p.k = 0.8;
    p.barrier = barrier;
    p.coupling = coupling;
    return p;
}

QuadratureConfig with_method(QuadratureMethod m)
{
    QuadratureConfig cfg;
    cfg.method = m;
    return cfg;
}

// Random physical draw with a non-degenerate endpoint overlap for a width pair.
struct PhaseDraw
{
    PhysicalParams params;
    double width_a;
    double width_b;
};

PhaseDraw draw_phase_case(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;)
    {
        PhaseDraw d;
        d.params.k = 0.3 + 1.7 * unit(rng);
        d.params.barrier = 20.0 * unit(rng);
        d.params.coupling = 60.0 * unit(rng);
        int const two_s = 1 + static_cast<int>(3.0 * unit(rng));
        int const two_m = -two_s + 2 * static_cast<int>((two_s + 1) * unit(rng));
        d.params.spin = SpinConfig::from_twice(two_s, std::min(two_m, two_s));
        d.width_a = 0.5 + 9.5 * unit(rng);
        d.width_b = d.width_a + 1.0 + 59.0 * unit(rng);
        auto const path = arm_state_path(d.params);
        auto const sa = path(0.5 * d.width_a);
        auto const sb = path(0.5 * d.width_b);
        if (std::abs(std::conj(sa.up) * sb.up + std::conj(sa.down) * sb.down) > 1e-8)
        {
            return d;
        }
    }
}

//---------------------------------------------------------------------------//

std::vector<PhysicalDraw> oracle_draws()
{
    DrawRng rng(20240601);
    std::vector<PhysicalDraw> draws;
    for (int i = 0; i < 10000; ++i)
    {
        draws.push_back(draw_physical(rng));
    }
    return draws;
}

Outcome ac1_oracle_equivalence(std::vector<PhysicalDraw> const& draws)
{
    auto const t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    double worst_raw = 0.0;
    for (auto const& d : draws)
    {
        auto const dim = nondimensionalize(d.params, d.half_width);
        auto const im = closed_form_intermediates(dim, d.params.spin);
        auto const cf = transmission_amplitudes(dim, d.params.spin);
        auto const orc = oracle_amplitudes(d.params, d.half_width);
        Complex const lab = im.lab_phase();
        worst = std::max({worst, std::abs(lab * cf.t_up - orc.t_up), std::abs(lab * cf.t_down - orc.t_down)});
        worst_raw = std::max({worst_raw, std::abs(cf.t_up - orc.t_up), std::abs(cf.t_down - orc.t_down)});
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool const pass = worst < 1e-9 && secs < 10.0;
    return {pass,
            fmt("max |lab_phase*t_closed - t_oracle| = %.2e (tol 1e-9) over %zu draws in %.2f s; "
                "without the common lab phase max |dt| = %.2e",
                worst,
                draws.size(),
                secs,
                worst_raw)};
}

Outcome ac2_flux(std::vector<PhysicalDraw> const& draws)
{
    double worst = 0.0;
    for (auto const& d : draws)
    {
        auto const orc = oracle_amplitudes(d.params, d.half_width);
        double const sum = orc.transmitted_flux() + std::norm(*orc.r_up) + std::norm(*orc.r_down);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return {worst < 1e-10, fmt("max |sum |t|^2 + |r|^2 - 1| = %.2e (tol 1e-10) over %zu draws", worst, draws.size())};
}

Outcome ac3_no_barrier()
{
    double worst = 0.0;
    bool converged = true;
    for (double coupling : {0.1, 11.0, 50.0})
    {
        auto const r = geometric_phase(figure_params(0.0, coupling), 2.0, 62.0);
        worst = std::max(worst, std::abs(r.gamma_s));
        converged = converged && r.converged;
    }
    return {worst < 1e-9 && converged, fmt("G = 0, J in {0.1, 11, 50}, widths 2 -> 62: max |gamma_s| = %.2e", worst)};
}

struct WidthSweep
{
    std::vector<SweepRow> rows;
    double seconds;
};

WidthSweep weak_coupling_sweep()
{
    SweepSpec spec;
    spec.base = figure_params(10.0, 1e-6);
    spec.variable = SweepVariable::width_diff;
    spec.from = 0.0;
    spec.to = 60.0;
    spec.steps = 601;
    auto const t0 = std::chrono::steady_clock::now();
    auto rows = sweep_width(spec);
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(rows), secs};
}

Outcome ac4_quantization(WidthSweep const& sweep)
{
    double worst = 0.0;
    int converged = 0;
    int near_zero = 0;
    for (auto const& r : sweep.rows)
    {
        if (!r.converged)
        {
            continue;
        }
        ++converged;
        double const to_zero = angle_gap(r.gamma_s, 0.0);
        double const to_pi = angle_gap(r.gamma_s, -pi);
        worst = std::max(worst, std::min(to_zero, to_pi));
        near_zero += to_zero <= to_pi;
    }
    bool const pass = worst < 1e-2 && converged > 0 && sweep.seconds < 60.0;
    return {pass,
            fmt("%d/%zu rows converged; max distance to {0, -pi} = %.2e (tol 1e-2); %d rows at 0, %d at -pi; %.2f s",
                converged,
                sweep.rows.size(),
                worst,
                near_zero,
                converged - near_zero,
                sweep.seconds)};
}

Outcome ac5_resonances(WidthSweep const& sweep)
{
    auto const p = figure_params(10.0, 1e-6);
    auto const d = nondimensionalize(p, p.a_bohr);
    double const a = 2.0;
    int jumps = 0;
    int bracketed = 0;
    double min_peak = 1.0;
    for (std::size_t i = 1; i < sweep.rows.size(); ++i)
    {
        auto const& lo = sweep.rows[i - 1];
        auto const& hi = sweep.rows[i];
        if (!lo.converged || !hi.converged || angle_gap(hi.gamma_s, lo.gamma_s) <= 1.0)
        {
            continue;
        }
        ++jumps;
        auto const roots = resonant_half_widths(d.kappa, d.g, 0.5 * (a + lo.value), 0.5 * (a + hi.value));
        if (!roots.empty())
        {
            ++bracketed;
            DimensionlessParams at = d;
            at.alpha = roots.front();
            min_peak = std::min(min_peak, std::abs(transmission_amplitudes(at, p.spin).t_up));
        }
    }
    bool const pass = bracketed == jumps && min_peak > 0.999;
    std::string detail = fmt("%d jumps > 1 rad, %d bracket a resonance root", jumps, bracketed);
    if (jumps == 0)
    {
        detail += " (no jumps in this sweep; holds vacuously)";
    }
    else
    {
        detail += fmt(", min |t_up| at root = %.6f", min_peak);
    }
    return {pass, detail};
}

Outcome ac6_normalized()
{
    std::mt19937_64 rng(6);
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < 100; ++i)
    {
        auto const d = draw_phase_case(rng);
        auto const plain = geometric_phase(d.params, d.width_a, d.width_b);
        auto const norm = geometric_phase_normalized(d.params, d.width_a, d.width_b);
        failures += !plain.converged || !norm.converged;
        worst = std::max(worst, angle_gap(plain.gamma_s, norm.gamma_s));
    }
    return {worst < 1e-7 && failures == 0,
            fmt("100 random parameter/width draws: max |gamma'_s - gamma_s| = %.2e (tol 1e-7), %d non-converged",
                worst,
                failures)};
}

Outcome ac7_invariance()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    double worst_gauge = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        auto const d = i < 50 ? PhaseDraw{figure_params(10.0, i % 2 ? 11.0 : 50.0), 2.0, 62.0}
                              : draw_phase_case(rng);
        double const a = 0.5 * d.width_a;
        double const b = 0.5 * d.width_b;
        double const c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
        auto gauge = [=](double x) {
            double const u = (x - a) / (b - a);
            return c0 + u * (c1 + u * (c2 + u * c3));
        };
        auto const path = arm_state_path(d.params);
        auto const base = path_phase(path, a, b, {});
        auto const moved = path_phase(gauge_transform(path, gauge), a, b, {});
        worst_gauge = std::max(worst_gauge, angle_gap(base.gamma_s, moved.gamma_s));
    }

    double worst_reparam = 0.0;
    for (int i = 0; i < 10; ++i)
    {
        auto const p = figure_params(10.0, i % 2 ? 11.0 : 50.0);
        double const a = 1.0;
        double const b = 31.0;
        double const c = 0.5 + 0.4 * i;
        std::function<double(double)> f;
        switch (i % 3)
        {
            case 0:
                f = [=](double u) { return a + (b - a) * std::pow(u, 1.0 + c); };
                break;
            case 1:
                f = [=](double u) { return a + (b - a) * std::expm1(c * u) / std::expm1(c); };
                break;
            default:
                f = [=](double u) { return a + (b - a) * (u + 0.9 * std::sin(2.0 * pi * u) / (2.0 * pi)); };
                break;
        }
        auto const path = arm_state_path(p);
        StatePath const reparam = [path, f](double u) { return path(f(u)); };
        auto const base = path_phase(path, a, b, {});
        auto const moved = path_phase(reparam, 0.0, 1.0, {});
        worst_reparam = std::max(worst_reparam, angle_gap(base.gamma_s, moved.gamma_s));
    }
    return {worst_gauge < 1e-7 && worst_reparam < 1e-7,
            fmt("max |d gamma_s|: 100 cubic gauges %.2e, 10 reparametrizations %.2e (tol 1e-7)",
                worst_gauge,
                worst_reparam)};
}

Outcome ac8_methods()
{
    struct Case
    {
        double barrier;
        double coupling;
        double width_a;
        double width_b;
    };
    std::vector<Case> cases;
    for (double coupling : {1e-6, 11.0, 50.0})
    {
        cases.push_back({10.0, coupling, 2.0, 62.0}); // width sweep end points
        cases.push_back({10.0, coupling, 2.0, 30.0});
    }
    for (double barrier : {0.1, 9.0, 30.0})
    {
        for (double coupling : {5.0, 25.0, 55.0})
        {
            cases.push_back({barrier, coupling, 2.0, 62.0}); // coupling sweeps
        }
    }
    for (double coupling : {1e-6, 30.0})
    {
        for (double barrier : {5.0, 20.0, 38.0})
        {
            cases.push_back({barrier, coupling, 2.0, 62.0}); // barrier sweeps
        }
    }

    double worst = 0.0;
    int failures = 0;
    for (auto const& c : cases)
    {
        auto const p = figure_params(c.barrier, c.coupling);
        auto const mesh = geometric_phase(p, c.width_a, c.width_b, with_method(QuadratureMethod::pancharatnam_mesh));
        auto const quad =
            geometric_phase(p, c.width_a, c.width_b, with_method(QuadratureMethod::derivative_quadrature));
        failures += !mesh.converged || !quad.converged;
        worst = std::max(worst, std::abs(mesh.connection - quad.connection));
    }
    return {worst < 1e-8 && failures == 0,
            fmt("%zu figure parameter sets: max |delta_mesh - delta_quadrature| = %.2e (tol 1e-8), %d non-converged",
                cases.size(),
                worst,
                failures)};
}

Outcome ac9_strong_coupling()
{
    SpinConfig const spin(0.5, -0.5);
    double worst_ratio = 0.0;
    double worst_phase = 0.0;
    for (double alpha : {0.3, 1.0, 2.5, 7.7, 13.1})
    {
        auto const amps = transmission_amplitudes({0.8, 1e4, 1e4, alpha}, spin);
        worst_ratio = std::max(worst_ratio, std::abs(amps.t_down / amps.t_up - 2.0));
        worst_phase = std::max(worst_phase, angle_gap(std::arg(amps.t_up), std::arg(amps.t_down)));
    }
    return {worst_ratio < 0.05 && worst_phase < 0.05,
            fmt("j = g = 1e4: max |t_down/t_up - 2| = %.2e, max |phi_up - phi_down| = %.2e (tol 0.05)",
                worst_ratio,
                worst_phase)};
}

Outcome ac10_determinism()
{
    namespace fs = std::filesystem;
    auto const dir = fs::temp_directory_path() / ("spinphase_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    std::vector<std::string> outputs;
    int bad_exit = 0;
    for (int i = 0; i < 3; ++i)
    {
        auto const path = (dir / ("run" + std::to_string(i) + ".csv")).string();
        std::ostringstream out, err;
        std::vector<std::string> args{"sweep", "--vary", "width-diff", "--from", "0", "--to", "60", "--steps", "601",
                                      "--J", "11", "--G", "10", "--k", "0.8", "--out", path};
        if (i == 2)
        {
            args.insert(args.end(), {"--threads", "4"});
        }
        bad_exit += run_cli(args, out, err) != exit_code::ok;
        std::ifstream in(path, std::ios::binary);
        std::ostringstream bytes;
        bytes << in.rdbuf();
        outputs.push_back(bytes.str());
    }
    fs::remove_all(dir);
    bool const same = outputs[0] == outputs[1] && outputs[0] == outputs[2] && !outputs[0].empty();
    return {same && bad_exit == 0,
            fmt("3 sweep runs (601 rows, one with 4 threads): %s, %zu bytes each",
                same ? "byte-identical" : "DIFFERENT",
                outputs[0].size())};
}

}  // namespace

int main()
{
    int failed = 0;
    auto report = [&](char const* id, char const* title, auto&& check) {
        auto const t0 = std::chrono::steady_clock::now();
        Outcome outcome{false, {}};
        try
        {
            outcome = check();
        }
        catch (std::exception const& e)
        {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !outcome.pass;
        std::printf("%-5s %s  %s: %s [%.2f s]\n", id, outcome.pass ? "PASS" : "FAIL", title, outcome.detail.c_str(), secs);
        std::fflush(stdout);
    };

    auto const draws = oracle_draws();
    report("AC1", "oracle equivalence", [&] { return ac1_oracle_equivalence(draws); });
    report("AC2", "flux conservation", [&] { return ac2_flux(draws); });
    report("AC3", "no barrier, no phase", [] { return ac3_no_barrier(); });
    WidthSweep sweep;
    report("AC4", "weak-coupling quantization", [&] {
        sweep = weak_coupling_sweep();
        return ac4_quantization(sweep);
    });
    report("AC5", "jumps on resonances", [&] { return ac5_resonances(sweep); });
    report("AC6", "normalized state equality", [] { return ac6_normalized(); });
    report("AC7", "gauge and reparametrization invariance", [] { return ac7_invariance(); });
    report("AC8", "method cross-check", [] { return ac8_methods(); });
    report("AC9", "strong-coupling asymptote", [] { return ac9_strong_coupling(); });
    report("AC10", "sweep determinism", [] { return ac10_determinism(); });

    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
