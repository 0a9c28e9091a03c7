#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinphase/errors.hpp"
#include "spinphase/scatter_core.hpp"
#include "spinphase/validate.hpp"

using namespace spinphase;
using doctest::Approx;

namespace {

PhysicalParams figure_params(double coupling)
{
    PhysicalParams p;
    p.k = 0.8;
    p.barrier = 10.0;
    p.coupling = coupling;
    return p;
}

SpinConfig const half_down{0.5, -0.5};

}  // namespace

TEST_CASE("nondimensionalize: direct substitution")
{
    // g = G / (2 kappa a_B eps) = 10 / 1.6
    auto d = nondimensionalize(figure_params(11.0), 1.0);
    CHECK(d.kappa == Approx(0.8).epsilon(1e-15));
    CHECK(d.g == Approx(6.25).epsilon(1e-15));
    CHECK(d.j == Approx(5.5).epsilon(1e-15));
    CHECK(d.alpha == 1.0);

    PhysicalParams free;
    free.k = 1.0;
    free.barrier = 0.0;
    free.coupling = 0.0;
    d = nondimensionalize(free, 2.0);
    CHECK(d.kappa == 1.0);
    CHECK(d.g == 0.0);
    CHECK(d.j == 0.0);
    CHECK(d.alpha == 2.0);

    d = nondimensionalize(figure_params(50.0), 0.5);
    CHECK(d.g == Approx(6.25).epsilon(1e-15));
    CHECK(d.j == Approx(25.0).epsilon(1e-15));
    CHECK(d.alpha == 0.5);
}

TEST_CASE("nondimensionalize with non-unit length and energy units")
{
    PhysicalParams p = figure_params(11.0);
    p.a_bohr = 2.0;
    p.eps = 0.25;
    auto const d = nondimensionalize(p, 3.0);
    CHECK(d.kappa == Approx(1.6));
    CHECK(d.g == Approx(p.effective_mass() * p.barrier / p.k));
    CHECK(d.j == Approx(11.0 / (2.0 * 2.0 * 0.25)));
    CHECK(d.alpha == Approx(1.5));
    CHECK(p.energy() == Approx(d.kappa * d.kappa * p.eps));
}

TEST_CASE("nondimensionalize rejects non-positive inputs")
{
    PhysicalParams p = figure_params(0.0);
    CHECK_THROWS_AS(nondimensionalize(p, 0.0), DomainError);
    CHECK_THROWS_AS(nondimensionalize(p, -1.0), DomainError);
    p.k = 0.0;
    CHECK_THROWS_AS(nondimensionalize(p, 1.0), DomainError);
    p = figure_params(0.0);
    p.a_bohr = -1.0;
    CHECK_THROWS_AS(nondimensionalize(p, 1.0), DomainError);
    p = figure_params(0.0);
    p.eps = 0.0;
    CHECK_THROWS_AS(nondimensionalize(p, 1.0), DomainError);
}

TEST_CASE("closed-form intermediates collapse at g = 0 and j = 0")
{
    for (double alpha : {0.3, 1.0, 7.1})
    {
        auto const im = closed_form_intermediates({1.3, 0.0, 4.0, alpha}, half_down);
        CHECK(im.w == Complex(1.0, 0.0));
        CHECK(im.chi == 0.0);
        CHECK(im.j_eff == Approx(4.0 / 2.6).epsilon(1e-15));
    }
    auto const im = closed_form_intermediates({0.8, 6.25, 0.0, 1.7}, half_down);
    CHECK(im.j_eff == 0.0);
    Complex const expected = Complex(1.0, im.chi) * Complex(1.0, im.chi);
    CHECK(std::abs(im.delta - expected) <= 1e-15 * std::abs(expected));
}

TEST_CASE("closed-form intermediates: golden values (40-digit reference evaluation)")
{
    // kappa = 0.8, g = 7.8125, j = 5.5, alpha = 1, S = 1/2
    auto const im = closed_form_intermediates({0.8, 7.8125, 5.5, 1.0}, half_down);
    CHECK(im.w.real() == Approx(8.8091687737617590964).epsilon(1e-13));
    CHECK(im.w.imag() == Approx(8.0406212679788181735).epsilon(1e-13));
    CHECK(im.chi == Approx(121.56201955406984953).epsilon(1e-13));
    CHECK(im.j_eff == Approx(488.99484170519314803).epsilon(1e-13));
    CHECK(im.delta.real() == Approx(224003.84232185709783).epsilon(1e-12));
    CHECK(im.delta.imag() == Approx(-245.87080259705344896).epsilon(1e-11));
    CHECK(im.flip == 1.0);
    CHECK(std::abs(im.lab_phase()) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("transmission amplitudes: golden values (40-digit reference evaluation)")
{
    auto const amps = transmission_amplitudes({0.8, 7.8125, 5.5, 1.0}, half_down);
    CHECK(amps.t_up.real() == Approx(5.0665864222769776392e-6).epsilon(1e-9));
    CHECK(amps.t_up.imag() == Approx(-0.00054880378076827923223).epsilon(1e-11));
    CHECK(amps.t_down.real() == Approx(2.3960715244332670559e-6).epsilon(1e-9));
    CHECK(amps.t_down.imag() == Approx(-0.0021829726111508352004).epsilon(1e-11));
    CHECK_FALSE(amps.r_up.has_value());
    CHECK_FALSE(amps.r_down.has_value());
}

TEST_CASE("J = 0 reduces to the spinless double barrier")
{
    for (double alpha : {0.4, 1.0, 2.9, 11.0})
    {
        DimensionlessParams const d{0.8, 6.25, 0.0, alpha};
        auto const amps = transmission_amplitudes(d, half_down);
        auto const im = closed_form_intermediates(d, half_down);
        CHECK(amps.t_down == Complex(0.0, 0.0));
        Complex const expected = 1.0 / Complex(1.0, im.chi);
        CHECK(std::abs(amps.t_up - expected) < 1e-15);
    }
}

TEST_CASE("stretched impurity state has no spin-flip transmission")
{
    for (int two_s = 1; two_s <= 5; ++two_s)
    {
        auto const amps = transmission_amplitudes({0.9, 3.0, 12.0, 1.3}, SpinConfig::from_twice(two_s, two_s));
        CHECK(amps.t_down == Complex(0.0, 0.0));
        CHECK(std::abs(amps.t_up) > 0.0);
    }
}

TEST_CASE("resonant half-widths")
{
    SUBCASE("g = 0: zeros of cot")
    {
        auto const roots = resonant_half_widths(1.0, 0.0, 0.0, 5.0);
        REQUIRE(roots.size() == 3);
        for (std::size_t n = 0; n < roots.size(); ++n)
        {
            CHECK(roots[n] == Approx(std::numbers::pi / 4 + n * std::numbers::pi / 2).epsilon(1e-15));
        }
    }
    SUBCASE("first root inverts cot analytically and is a unit-transmission point")
    {
        double const kappa = 0.8;
        double const g = 6.25;
        auto const roots = resonant_half_widths(kappa, g, 0.0, 4.0);
        REQUIRE(roots.size() == 2);
        double const expected = (std::numbers::pi - std::atan(1.0 / 6.25)) / (2.0 * 0.8);
        CHECK(roots[0] == Approx(expected).epsilon(1e-14));
        CHECK(roots[0] == Approx(1.8643358696271198966).epsilon(1e-14));
        for (double root : roots)
        {
            double const t = 2.0 * kappa * root;
            CHECK(std::abs(std::cos(t) / std::sin(t) + g) < 1e-12);
            auto const amps = transmission_amplitudes({kappa, g, 1e-12, root}, half_down);
            CHECK(std::abs(amps.t_up) == Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("roots are spaced by pi / (2 kappa) and sorted")
    {
        for (double g : {-7.0, -0.3, 0.0, 2.0, 9.5})
        {
            double const kappa = 1.3;
            auto const roots = resonant_half_widths(kappa, g, 0.2, 30.0);
            REQUIRE(roots.size() > 10);
            for (std::size_t n = 1; n < roots.size(); ++n)
            {
                CHECK(roots[n] - roots[n - 1] == Approx(std::numbers::pi / (2.0 * kappa)).epsilon(1e-12));
            }
            CHECK(roots.front() >= 0.2);
            CHECK(roots.back() <= 30.0);
        }
    }
    SUBCASE("empty range")
    {
        CHECK(resonant_half_widths(0.8, 6.25, 0.1, 0.2).empty());
    }
}

TEST_CASE("flux bound over random draws")
{
    DrawRng rng(7);
    double worst = -1.0;
    for (int n = 0; n < 10000; ++n)
    {
        auto const draw = draw_physical(rng);
        auto const d = nondimensionalize(draw.params, draw.half_width);
        auto const amps = transmission_amplitudes(d, draw.params.spin);
        worst = std::max(worst, amps.transmitted_flux() - 1.0);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("amplitudes are periodic in alpha with period pi / kappa")
{
    DrawRng rng(11);
    for (int n = 0; n < 2000; ++n)
    {
        auto const draw = draw_physical(rng);
        auto d = nondimensionalize(draw.params, draw.half_width);
        auto const a = transmission_amplitudes(d, draw.params.spin);
        d.alpha += std::numbers::pi / d.kappa;
        auto const b = transmission_amplitudes(d, draw.params.spin);
        CHECK(std::abs(a.t_up - b.t_up) < 1e-12);
        CHECK(std::abs(a.t_down - b.t_down) < 1e-12);
    }
}

TEST_CASE("strong coupling: t_down -> 2 t_up with equal phases")
{
    for (double alpha : {0.3, 1.0, 2.5, 13.1})
    {
        auto const amps = transmission_amplitudes({0.8, 1e4, 1e4, alpha}, half_down);
        Complex const ratio = amps.t_down / amps.t_up;
        CHECK(std::abs(ratio - 2.0) < 0.05);
        CHECK(std::abs(std::arg(amps.t_up) - std::arg(amps.t_down)) < 0.05);
    }
}
