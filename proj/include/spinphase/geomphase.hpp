#pragma once

// Total (Pancharatnam) phase, the parallel-transport connection integral and
// the geometric phase between the transmitted states of two arm widths.

#include <complex>
#include <functional>

#include "spinphase/scatter_core.hpp"

namespace spinphase {

/// Post-scattering spin state: amp_up on |up, m_z>, amp_down on |down, m_z + 1>.
struct TransmittedState
{
    Complex up;
    Complex down;
    int two_m = -1;

    double norm2() const { return std::norm(up) + std::norm(down); }

    /// Throws DomainError unless 0 < norm^2 <= 1 + 1e-10.
    static TransmittedState checked(Complex up, Complex down, int two_m);
    static TransmittedState from_amps(ChannelAmps const& amps, SpinConfig const& spin);
};

/// A transported state as a function of the path parameter.
using StatePath = std::function<TransmittedState(double)>;

enum class QuadratureMethod
{
    pancharatnam_mesh,
    derivative_quadrature,
};

struct QuadratureConfig
{
    QuadratureMethod method = QuadratureMethod::pancharatnam_mesh;
    int initial_points = 16;
    double tol = 1e-9;
    long max_points = 1L << 20;

    void validate() const;
};

struct ChannelPhases
{
    double up = 0.0;
    double down = 0.0;
    bool up_defined = true;
    bool down_defined = true;
};

/// atan2 phases of both amplitudes; a vanishing amplitude reports 0 and
/// clears its flag.  Throws DomainError if both vanish.
ChannelPhases channel_phases(TransmittedState const& s);

struct TotalPhase
{
    double phase;    // arg <a|b>
    Complex overlap; // <a|b>
};

/// Throws OrthogonalStatesError if |<a|b>| < 1e-14.
TotalPhase total_phase(TransmittedState const& a, TransmittedState const& b);

struct ConnectionEstimate
{
    double value = 0.0;     // integral of Im<s|ds>/<s|s>
    double est_error = 0.0;
    long n_points = 0;
};

/// Integral of Im<s|ds>/<s|s> from alpha_a to alpha_b (either order).
///
/// Throws ConvergenceError (carrying the best estimate) when max_points is
/// exhausted and SingularPathError if the state norm drops below 1e-14.
ConnectionEstimate connection_integral(StatePath const& path,
                                       double alpha_a,
                                       double alpha_b,
                                       QuadratureConfig const& cfg);

struct PhaseResult
{
    double gamma_s = 0.0;     // geometric phase, (-pi, pi]
    double total_phase = 0.0; // arg <a|b>
    double connection = 0.0;  // parallel-transport integral
    Complex overlap;
    double visibility = 0.0;  // |<a|b>|
    long n_points = 0;
    double est_error = 0.0;
    bool converged = true;
};

/// Geometric phase of an arbitrary path.  A non-converged connection
/// integral yields converged = false with the best estimate; an endpoint
/// visibility below 1e-10 throws OrthogonalStatesError.
PhaseResult path_phase(StatePath const& path,
                       double alpha_a,
                       double alpha_b,
                       QuadratureConfig const& cfg);

/// alpha -> closed-form transmitted state at half-width alpha * a_B.
///
/// The closed form is analytic in alpha, so the path may be probed on either
/// side of the physical range (finite differences near small widths).
StatePath arm_state_path(PhysicalParams const& p);

/// alpha -> s(alpha) / |s(alpha)|, i.e. (cos theta e^{i phi_up}, sin theta e^{i phi_down}).
StatePath normalized_path(StatePath path);

/// alpha -> e^{i gauge(alpha)} s(alpha).
StatePath gauge_transform(StatePath path, std::function<double(double)> gauge);

/// Geometric phase between arms of barrier separation width_a and width_b.
PhaseResult geometric_phase(PhysicalParams const& p,
                            double width_a,
                            double width_b,
                            QuadratureConfig const& cfg = {});

/// Same, computed on the normalized state.
PhaseResult geometric_phase_normalized(PhysicalParams const& p,
                                       double width_a,
                                       double width_b,
                                       QuadratureConfig const& cfg = {});

/// Maps to (-pi, pi]; values within 1e-9 of +pi map to -pi.
double principal_angle(double angle);

}  // namespace spinphase
