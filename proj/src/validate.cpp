#include "spinphase/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "spinphase/transfer_oracle.hpp"

namespace spinphase {

std::uint64_t DrawRng::next()
{
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double DrawRng::uniform(double lo, double hi)
{
    double const u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

int DrawRng::below(int n)
{
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

PhysicalDraw draw_physical(DrawRng& rng)
{
    double const kappa = rng.uniform(0.1, 5.0);
    double const g = rng.uniform(-20.0, 20.0);
    double const j = rng.uniform(-50.0, 50.0);
    double const alpha = rng.uniform(0.01, 10.0);
    int const two_s = 1 + rng.below(3);
    int const two_m = -two_s + 2 * rng.below(two_s + 1);
    double const a_bohr = rng.uniform(0.5, 2.0);
    double const eps = rng.uniform(0.5, 2.0);

    PhysicalDraw draw;
    draw.params.a_bohr = a_bohr;
    draw.params.eps = eps;
    draw.params.k = kappa / a_bohr;
    draw.params.barrier = g * 2.0 * kappa * a_bohr * eps;
    draw.params.coupling = j * 2.0 * a_bohr * eps;
    draw.params.spin = SpinConfig::from_twice(two_s, two_m);
    draw.half_width = alpha * a_bohr;
    return draw;
}

bool ValidationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.passed(); });
}

ValidationReport run_validation(long draws, std::uint64_t seed)
{
    ValidationCheck oracle{"closed_form_lab_phase_vs_oracle", 0, 0.0, 1e-9};
    ValidationCheck modulus{"closed_form_vs_oracle_modulus", 0, 0.0, 1e-9};
    ValidationCheck flux_sum{"flux_sum", 0, 0.0, 1e-10};
    ValidationCheck flux_bound{"flux_bound", 0, 0.0, 1e-10};
    ValidationCheck channel_unitarity{"channel_unitarity", 0, 0.0, 1e-12};
    ValidationCheck matrix_unitarity{"spin_matrix_unitarity", 0, 0.0, 1e-10};
    ValidationCheck decomposition{"channel_decomposition", 0, 0.0, 1e-12};
    ValidationCheck parity{"left_right_parity", 0, 0.0, 1e-12};
    ValidationCheck periodicity{"alpha_periodicity", 0, 0.0, 1e-12};
    ValidationCheck stretched{"stretched_state_selection", 0, 0.0, 0.0};

    auto bump = [](ValidationCheck& c, double err) {
        ++c.samples;
        c.max_error = std::max(c.max_error, std::isfinite(err) ? err : INFINITY);
    };

    DrawRng rng(seed);
    for (long n = 0; n < draws; ++n)
    {
        auto const draw = draw_physical(rng);
        auto const& p = draw.params;
        auto const d = nondimensionalize(p, draw.half_width);
        auto const im = closed_form_intermediates(d, p.spin);
        auto const cf = transmission_amplitudes(d, p.spin);
        auto const orc = oracle_amplitudes(p, draw.half_width);

        Complex const lab = im.lab_phase();
        bump(oracle, std::max(std::abs(lab * cf.t_up - orc.t_up), std::abs(lab * cf.t_down - orc.t_down)));
        bump(modulus,
             std::max(std::abs(std::abs(cf.t_up) - std::abs(orc.t_up)),
                      std::abs(std::abs(cf.t_down) - std::abs(orc.t_down))));
        bump(flux_sum, std::abs(orc.transmitted_flux() + std::norm(*orc.r_up) + std::norm(*orc.r_down) - 1.0));
        bump(flux_bound, std::max(0.0, cf.transmitted_flux() - 1.0));

        auto const lambda = exchange_eigenvalues(p.spin.spin());
        auto const chain_plus = DeltaChain::three_delta(p, draw.half_width, lambda.plus);
        auto const chain_minus = DeltaChain::three_delta(p, draw.half_width, lambda.minus);
        auto const plus = channel_scattering(chain_plus);
        auto const minus = channel_scattering(chain_minus);
        bump(channel_unitarity,
             std::max(std::abs(std::norm(plus.t) + std::norm(plus.r) - 1.0),
                      std::abs(std::norm(minus.t) + std::norm(minus.r) - 1.0)));
        bump(parity,
             std::max(std::abs(channel_scattering_from_right(chain_plus).t - plus.t),
                      std::abs(channel_scattering_from_right(chain_minus).t - minus.t)));

        auto const w = channel_weights(p.spin);
        double const f = flip_factor(p.spin);
        Complex const t_up = w.plus * plus.t + w.minus * minus.t;
        Complex const t_down = f / (p.spin.two_s() + 1) * (plus.t - minus.t);
        bump(decomposition, std::max(std::abs(t_up - orc.t_up), std::abs(t_down - orc.t_down)));

        if (n % 10 == 0)
        {
            auto const mats = spin_scattering_matrices(p, draw.half_width);
            Eigen::MatrixXcd const sum = mats.transmission.adjoint() * mats.transmission
                                         + mats.reflection.adjoint() * mats.reflection;
            Eigen::MatrixXcd const ident = Eigen::MatrixXcd::Identity(sum.rows(), sum.cols());
            bump(matrix_unitarity, (sum - ident).cwiseAbs().maxCoeff());
        }

        DimensionlessParams shifted = d;
        shifted.alpha += std::numbers::pi / d.kappa;
        auto const cf_shift = transmission_amplitudes(shifted, p.spin);
        bump(periodicity, std::max(std::abs(cf_shift.t_up - cf.t_up), std::abs(cf_shift.t_down - cf.t_down)));

        SpinConfig const top = SpinConfig::from_twice(p.spin.two_s(), p.spin.two_s());
        bump(stretched, std::abs(transmission_amplitudes(d, top).t_down));
    }

    ValidationReport report;
    report.checks = {oracle,
                     modulus,
                     flux_sum,
                     flux_bound,
                     channel_unitarity,
                     matrix_unitarity,
                     decomposition,
                     parity,
                     periodicity,
                     stretched};
    return report;
}

void print_report(std::ostream& out, ValidationReport const& report)
{
    char line[160];
    std::snprintf(line, sizeof(line), "%-30s %8s %12s %12s  %s\n", "property", "samples", "max_error", "tolerance", "result");
    out << line;
    for (auto const& c : report.checks)
    {
        std::snprintf(line,
                      sizeof(line),
                      "%-30s %8ld %12.3e %12.3e  %s\n",
                      c.name.c_str(),
                      c.samples,
                      c.max_error,
                      c.tolerance,
                      c.passed() ? "PASS" : "FAIL");
        out << line;
    }
    out << (report.passed() ? "all checks passed\n" : "validation FAILED\n");
}

}  // namespace spinphase
