#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "spinphase/spin_algebra.hpp"

namespace spinphase {

using Complex = std::complex<double>;

/// Lab-frame inputs for one interferometer arm (hbar = 1).
///
/// The energy unit fixes the effective mass: eps = 1 / (2 m_eff a_B^2).
struct PhysicalParams
{
    double k = 0.8;        // wavenumber [1/a_B]
    double a_bohr = 1.0;   // length unit
    double eps = 1.0;      // energy unit
    double barrier = 10.0; // G, strength of each outer delta [energy * length]
    double coupling = 0.0; // J, exchange strength at the impurity [energy * length]
    SpinConfig spin{0.5, -0.5};

    double effective_mass() const noexcept { return 0.5 / (eps * a_bohr * a_bohr); }
    double energy() const noexcept { return k * k / (2.0 * effective_mass()); }

    /// Throws DomainError unless k, a_B, eps are positive and G, J finite.
    void validate() const;
};

/// Reduced variables every closed-form expression is written in.
struct DimensionlessParams
{
    double kappa; // k a_B
    double g;     // m_eff G / k
    double j;     // J / (2 a_B eps)
    double alpha; // x0 / a_B, half the barrier separation
};

/// Sub-expressions of the closed-form amplitudes.
struct ClosedFormIntermediates
{
    Complex w;          // 1 + g sin(2ka) + 2i g sin^2(ka)
    double chi;         // 2g [g sin(2ka) + cos(2ka)]
    double j_eff;       // |W|^2 j / (2 kappa)
    Complex delta;      // (1 + i chi)[1 + i(chi - j')] + S(S+1) j'^2
    double flip;        // sqrt((S - m)(S + m + 1))

    /// Unit phase W*/W relating these amplitudes to e^{ikx}-normalized
    /// transmission: t_lab = lab_phase() * t_closed_form, for both channels.
    Complex lab_phase() const { return std::conj(w) / w; }
};

/// Transmission (and, from the oracle, reflection) amplitudes of the
/// injected |up, m_z> state.  "down" is the flipped channel |down, m_z + 1>.
struct ChannelAmps
{
    Complex t_up;
    Complex t_down;
    std::optional<Complex> r_up;
    std::optional<Complex> r_down;

    double transmitted_flux() const { return std::norm(t_up) + std::norm(t_down); }
};

/// Throws DomainError for non-positive x0 or invalid params.
DimensionlessParams nondimensionalize(PhysicalParams const& p, double half_width);

/// Throws SingularityError if |Delta| < 1e-14.
ClosedFormIntermediates closed_form_intermediates(DimensionlessParams const& d,
                                                  SpinConfig const& spin);

/// t_up = {1 + i[chi - (m + 1) j']}/Delta, t_down = -i j' F / Delta.
ChannelAmps transmission_amplitudes(DimensionlessParams const& d, SpinConfig const& spin);

/// Half-widths alpha in [alpha_lo, alpha_hi] with cot(2 kappa alpha) = -g,
/// ascending.  These are the J -> 0 resonances where |t_up| = 1.
std::vector<double> resonant_half_widths(double kappa, double g, double alpha_lo, double alpha_hi);

}  // namespace spinphase
