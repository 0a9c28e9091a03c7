#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spinphase/geomphase.hpp"
#include "spinphase/scatter_core.hpp"

namespace spinphase {

enum class SweepVariable
{
    width_diff, // b - a, with a fixed
    coupling_j, // J, with b - a fixed
    barrier_g,  // G, with b - a fixed
};

std::string_view to_string(SweepVariable v);
/// Accepts "width-diff", "J", "G" (and the enum spellings). Throws DomainError.
SweepVariable parse_sweep_variable(std::string_view text);

struct SweepSpec
{
    PhysicalParams base;
    SweepVariable variable = SweepVariable::width_diff;
    double from = 0.0;
    double to = 60.0;
    int steps = 601;
    double reference_width_a = 2.0; // a, in length units
    double width_diff = 60.0;       // b - a for J and G sweeps
    QuadratureConfig quadrature;

    void validate() const;
    double value_at(int row) const;
};

struct SweepRow
{
    double value = 0.0;
    double gamma_s = 0.0;
    double total_phase = 0.0;
    double connection = 0.0;
    double visibility = 0.0;
    double re_overlap = 0.0;
    double abs_t_up_a = 0.0;
    double abs_t_up_b = 0.0;
    double abs_t_down_a = 0.0;
    double abs_t_down_b = 0.0;
    double phi_up_b = 0.0;
    double phi_down_b = 0.0;
    double cos_theta_b = 0.0;
    bool converged = true;
};

/// One sweep point.  Numerical failures give converged = false (NaN phases
/// for orthogonal or singular paths) instead of throwing.
SweepRow sweep_row(SweepSpec const& spec, int row);

/// All rows in sweep order.  threads <= 1 runs serially; the rows are
/// identical either way.
std::vector<SweepRow> run_sweep(SweepSpec const& spec, int threads = 1);

/// run_sweep restricted to one variable; throw DomainError on mismatch.
std::vector<SweepRow> sweep_width(SweepSpec const& spec, int threads = 1);
std::vector<SweepRow> sweep_coupling(SweepSpec const& spec, int threads = 1);
std::vector<SweepRow> sweep_barrier(SweepSpec const& spec, int threads = 1);

}  // namespace spinphase
