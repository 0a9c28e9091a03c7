#include "spinphase/scatter_core.hpp"

#include <cmath>
#include <numbers>

#include "spinphase/errors.hpp"

namespace spinphase {

void PhysicalParams::validate() const
{
    if (!(k > 0.0) || !std::isfinite(k))
    {
        throw DomainError("wavenumber k must be positive");
    }
    if (!(a_bohr > 0.0) || !std::isfinite(a_bohr))
    {
        throw DomainError("length unit a_B must be positive");
    }
    if (!(eps > 0.0) || !std::isfinite(eps))
    {
        throw DomainError("energy unit eps must be positive");
    }
    if (!std::isfinite(barrier) || !std::isfinite(coupling))
    {
        throw DomainError("barrier G and coupling J must be finite");
    }
}

DimensionlessParams nondimensionalize(PhysicalParams const& p, double half_width)
{
    p.validate();
    if (!(half_width > 0.0) || !std::isfinite(half_width))
    {
        throw DomainError("half-width x0 must be positive");
    }
    double const kappa = p.k * p.a_bohr;
    return {kappa,
            p.barrier / (2.0 * kappa * p.a_bohr * p.eps),
            p.coupling / (2.0 * p.a_bohr * p.eps),
            half_width / p.a_bohr};
}

ClosedFormIntermediates closed_form_intermediates(DimensionlessParams const& d,
                                                  SpinConfig const& spin)
{
    double const phase = d.kappa * d.alpha;
    double const s1 = std::sin(phase);
    double const s2 = std::sin(2.0 * phase);
    double const c2 = std::cos(2.0 * phase);

    ClosedFormIntermediates out;
    out.w = Complex(1.0 + d.g * s2, 2.0 * d.g * s1 * s1);
    out.chi = 2.0 * d.g * (d.g * s2 + c2);
    out.j_eff = std::norm(out.w) * d.j / (2.0 * d.kappa);
    double const s = spin.spin();
    out.delta = Complex(1.0, out.chi) * Complex(1.0, out.chi - out.j_eff)
                + s * (s + 1.0) * out.j_eff * out.j_eff;
    out.flip = flip_factor(spin);
    if (!(std::abs(out.delta) >= 1e-14))
    {
        throw SingularityError("closed-form denominator Delta vanished");
    }
    return out;
}

ChannelAmps transmission_amplitudes(DimensionlessParams const& d, SpinConfig const& spin)
{
    auto const im = closed_form_intermediates(d, spin);
    double const m = spin.m_z();
    ChannelAmps amps;
    amps.t_up = Complex(1.0, im.chi - (m + 1.0) * im.j_eff) / im.delta;
    // exact (unsigned) zero when the flip channel is closed
    amps.t_down = spin.stretched() || im.j_eff == 0.0 ? Complex(0.0, 0.0)
                                   : Complex(0.0, -im.j_eff * im.flip) / im.delta;
    return amps;
}

std::vector<double> resonant_half_widths(double kappa, double g, double alpha_lo, double alpha_hi)
{
    if (!(kappa > 0.0))
    {
        throw DomainError("kappa must be positive");
    }
    std::vector<double> roots;
    if (!(alpha_hi >= alpha_lo))
    {
        return roots;
    }
    // cot(theta) = -g has exactly one root per period in (0, pi)
    double const theta0 = std::atan2(1.0, -g);
    double const period = std::numbers::pi / (2.0 * kappa);
    double const first = theta0 / (2.0 * kappa);
    auto n = static_cast<long>(std::ceil((alpha_lo - first) / period));
    for (;; ++n)
    {
        double alpha = first + static_cast<double>(n) * period;
        if (alpha > alpha_hi)
        {
            break;
        }
        if (alpha < alpha_lo)
        {
            continue;
        }
        // Newton polish on f = cot(2 kappa alpha) + g
        for (int it = 0; it < 4; ++it)
        {
            double const t = 2.0 * kappa * alpha;
            double const sn = std::sin(t);
            double const f = std::cos(t) / sn + g;
            if (std::abs(f) < 1e-15 * (1.0 + g * g))
            {
                break;
            }
            alpha += f * sn * sn / (2.0 * kappa);
        }
        roots.push_back(alpha);
    }
    return roots;
}

}  // namespace spinphase
