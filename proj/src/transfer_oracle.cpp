#include "spinphase/transfer_oracle.hpp"

#include <cmath>
#include <utility>

#include "spinphase/errors.hpp"

namespace spinphase {

DeltaChain::DeltaChain(double wavenumber, double mass, std::vector<DeltaSite> sites)
    : k_(wavenumber)
    , mass_(mass)
    , sites_(std::move(sites))
{
    if (!(k_ > 0.0))
    {
        throw DomainError("wavenumber must be positive");
    }
    if (!(mass_ > 0.0))
    {
        throw DomainError("effective mass must be positive");
    }
    for (std::size_t i = 1; i < sites_.size(); ++i)
    {
        if (!(sites_[i].position > sites_[i - 1].position))
        {
            throw DomainError("delta positions must be strictly increasing");
        }
    }
}

DeltaChain DeltaChain::three_delta(PhysicalParams const& p, double half_width, double exchange_eigenvalue)
{
    p.validate();
    if (!(half_width > 0.0))
    {
        throw DomainError("half-width x0 must be positive");
    }
    return DeltaChain(p.k,
                      p.effective_mass(),
                      {{-half_width, p.barrier},
                       {0.0, p.coupling * exchange_eigenvalue},
                       {half_width, p.barrier}});
}

TransferMatrix transfer_matrix(DeltaChain const& chain)
{
    double const k = chain.wavenumber();
    TransferMatrix total = TransferMatrix::Identity();
    for (auto const& site : chain.sites())
    {
        // A' = A + c (A + B e^{-2ikx}),  B' = B - c (A e^{2ikx} + B),
        // c = 2 m strength / (2ik)
        Complex const c = Complex(0.0, -chain.mass() * site.strength / k);
        Complex const e = std::polar(1.0, 2.0 * k * site.position);
        TransferMatrix step;
        step << 1.0 + c, c * std::conj(e), -c * e, 1.0 - c;
        total = step * total;
    }
    return total;
}

ScalarScattering channel_scattering(DeltaChain const& chain)
{
    // Walk the transmitted wave (1, 0) back through the inverse steps to the
    // left side, (1/t, r/t).  Solving from the forward product instead costs
    // a cancellation of order |m|^2 eps.
    double const k = chain.wavenumber();
    Complex a = 1.0;
    Complex b = 0.0;
    auto const& sites = chain.sites();
    for (auto it = sites.rbegin(); it != sites.rend(); ++it)
    {
        Complex const c = Complex(0.0, -chain.mass() * it->strength / k);
        Complex const e = std::polar(1.0, 2.0 * k * it->position);
        Complex const na = (1.0 - c) * a - c * std::conj(e) * b;
        Complex const nb = c * e * a + (1.0 + c) * b;
        a = na;
        b = nb;
    }
    return {1.0 / a, b / a};
}

ScalarScattering channel_scattering_from_right(DeltaChain const& chain)
{
    TransferMatrix const m = transfer_matrix(chain);
    // (r, 1) = m * (0, t)
    Complex const t = 1.0 / m(1, 1);
    return {t, m(0, 1) * t};
}

int SpinMatrices::index(int particle_sign, int two_m) const
{
    int const particle = particle_sign > 0 ? 0 : 1;
    return particle * (two_s + 1) + (two_s - two_m) / 2;
}

Eigen::MatrixXcd exchange_operator(int two_s)
{
    int const mult = two_s + 1;
    int const dim = 2 * mult;
    double const s = 0.5 * two_s;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    auto idx = [&](int particle, int two_m) { return particle * mult + (two_s - two_m) / 2; };
    for (int two_m = -two_s; two_m <= two_s; two_m += 2)
    {
        double const m = 0.5 * two_m;
        // s_z S_z
        op(idx(0, two_m), idx(0, two_m)) = 0.5 * m;
        op(idx(1, two_m), idx(1, two_m)) = -0.5 * m;
        // (s+ S- + s- S+)/2 connects |down, m+1> and |up, m>
        if (two_m < two_s)
        {
            double const amp = 0.5 * std::sqrt((s - m) * (s + m + 1.0));
            op(idx(1, two_m + 2), idx(0, two_m)) = amp;
            op(idx(0, two_m), idx(1, two_m + 2)) = amp;
        }
    }
    return op;
}

SpinMatrices spin_scattering_matrices(PhysicalParams const& p, double half_width)
{
    auto const lambda = exchange_eigenvalues(p.spin.spin());
    auto const plus = channel_scattering(DeltaChain::three_delta(p, half_width, lambda.plus));
    auto const minus = channel_scattering(DeltaChain::three_delta(p, half_width, lambda.minus));

    int const two_s = p.spin.two_s();
    Eigen::MatrixXcd const exchange = exchange_operator(two_s);
    Eigen::MatrixXcd const ident = Eigen::MatrixXcd::Identity(exchange.rows(), exchange.cols());
    double const gap = lambda.plus - lambda.minus;
    Eigen::MatrixXcd const proj_plus = (exchange - lambda.minus * ident) / gap;
    Eigen::MatrixXcd const proj_minus = (lambda.plus * ident - exchange) / gap;

    SpinMatrices out;
    out.two_s = two_s;
    out.transmission = plus.t * proj_plus + minus.t * proj_minus;
    out.reflection = plus.r * proj_plus + minus.r * proj_minus;
    return out;
}

ChannelAmps oracle_amplitudes(PhysicalParams const& p, double half_width)
{
    auto const mats = spin_scattering_matrices(p, half_width);
    int const two_m = p.spin.two_m();
    int const in = mats.index(+1, two_m);
    ChannelAmps amps;
    amps.t_up = mats.transmission(in, in);
    amps.r_up = mats.reflection(in, in);
    if (p.spin.stretched())
    {
        amps.t_down = 0.0;
        amps.r_down = 0.0;
    }
    else
    {
        int const out = mats.index(-1, two_m + 2);
        amps.t_down = mats.transmission(out, in);
        amps.r_down = mats.reflection(out, in);
    }
    return amps;
}

}  // namespace spinphase
