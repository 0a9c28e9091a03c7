#include "spinphase/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "spinphase/errors.hpp"

namespace spinphase {

std::string_view to_string(SweepVariable v)
{
    switch (v)
    {
        case SweepVariable::width_diff:
            return "width_diff";
        case SweepVariable::coupling_j:
            return "J";
        case SweepVariable::barrier_g:
            return "G";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view text)
{
    if (text == "width-diff" || text == "width_diff")
    {
        return SweepVariable::width_diff;
    }
    if (text == "J" || text == "coupling_j")
    {
        return SweepVariable::coupling_j;
    }
    if (text == "G" || text == "barrier_g")
    {
        return SweepVariable::barrier_g;
    }
    throw DomainError("unknown sweep variable '" + std::string(text) + "' (expected width-diff, J or G)");
}

void SweepSpec::validate() const
{
    base.validate();
    quadrature.validate();
    if (steps < 2)
    {
        throw DomainError("a sweep needs at least 2 steps");
    }
    if (!(from < to))
    {
        throw DomainError("sweep range must satisfy from < to");
    }
    if (!(reference_width_a > 0.0))
    {
        throw DomainError("reference width a must be positive");
    }
    if (variable == SweepVariable::width_diff && reference_width_a + from <= 0.0)
    {
        throw DomainError("width difference range makes b non-positive");
    }
    if (variable != SweepVariable::width_diff && reference_width_a + width_diff <= 0.0)
    {
        throw DomainError("width difference makes b non-positive");
    }
}

double SweepSpec::value_at(int row) const
{
    if (row == steps - 1)
    {
        return to;
    }
    return from + (to - from) * static_cast<double>(row) / (steps - 1);
}

SweepRow sweep_row(SweepSpec const& spec, int row)
{
    SweepRow out;
    out.value = spec.value_at(row);

    PhysicalParams p = spec.base;
    double diff = spec.width_diff;
    switch (spec.variable)
    {
        case SweepVariable::width_diff:
            diff = out.value;
            break;
        case SweepVariable::coupling_j:
            p.coupling = out.value;
            break;
        case SweepVariable::barrier_g:
            p.barrier = out.value;
            break;
    }
    double const width_a = spec.reference_width_a;
    double const width_b = width_a + diff;

    double const alpha_a = 0.5 * width_a / p.a_bohr;
    double const alpha_b = 0.5 * width_b / p.a_bohr;
    try
    {
        auto const path = arm_state_path(p);
        TransmittedState const sa = path(alpha_a);
        TransmittedState const sb = path(alpha_b);
        out.abs_t_up_a = std::abs(sa.up);
        out.abs_t_up_b = std::abs(sb.up);
        out.abs_t_down_a = std::abs(sa.down);
        out.abs_t_down_b = std::abs(sb.down);
        out.cos_theta_b = std::abs(sb.up) / std::sqrt(sb.norm2());
        auto const phases = channel_phases(sb);
        out.phi_up_b = phases.up;
        out.phi_down_b = phases.down;

        PhaseResult const r = geometric_phase(p, width_a, width_b, spec.quadrature);
        out.gamma_s = r.gamma_s;
        out.total_phase = r.total_phase;
        out.connection = r.connection;
        out.visibility = r.visibility;
        out.re_overlap = r.overlap.real();
        out.converged = r.converged;
    }
    catch (std::runtime_error const&)
    {
        double const nan = std::numeric_limits<double>::quiet_NaN();
        out.gamma_s = out.total_phase = out.connection = nan;
        out.visibility = out.re_overlap = nan;
        out.converged = false;
    }
    return out;
}

std::vector<SweepRow> run_sweep(SweepSpec const& spec, int threads)
{
    spec.validate();
    std::vector<SweepRow> rows(static_cast<std::size_t>(spec.steps));
    if (threads <= 1)
    {
        for (int i = 0; i < spec.steps; ++i)
        {
            rows[static_cast<std::size_t>(i)] = sweep_row(spec, i);
        }
        return rows;
    }

    std::atomic<int> next{0};
    {
        std::vector<std::jthread> workers;
        for (int t = 0; t < threads; ++t)
        {
            workers.emplace_back([&] {
                for (int i = next++; i < spec.steps; i = next++)
                {
                    rows[static_cast<std::size_t>(i)] = sweep_row(spec, i);
                }
            });
        }
    }
    return rows;
}

namespace {

std::vector<SweepRow> run_checked(SweepSpec const& spec, SweepVariable expected, int threads)
{
    if (spec.variable != expected)
    {
        throw DomainError("sweep spec varies " + std::string(to_string(spec.variable)) + ", expected "
                          + std::string(to_string(expected)));
    }
    return run_sweep(spec, threads);
}

}  // namespace

std::vector<SweepRow> sweep_width(SweepSpec const& spec, int threads)
{
    return run_checked(spec, SweepVariable::width_diff, threads);
}

std::vector<SweepRow> sweep_coupling(SweepSpec const& spec, int threads)
{
    return run_checked(spec, SweepVariable::coupling_j, threads);
}

std::vector<SweepRow> sweep_barrier(SweepSpec const& spec, int threads)
{
    return run_checked(spec, SweepVariable::barrier_g, threads);
}

}  // namespace spinphase
