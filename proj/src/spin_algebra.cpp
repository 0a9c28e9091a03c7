#include "spinphase/spin_algebra.hpp"

#include <cmath>
#include <string>

#include "spinphase/errors.hpp"

namespace spinphase {
namespace {

int twice_exact(double value, char const* what)
{
    double const twice = 2.0 * value;
    double const rounded = std::round(twice);
    if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9)
    {
        throw DomainError(std::string(what) + " must be an integer or half-integer, got "
                          + std::to_string(value));
    }
    return static_cast<int>(rounded);
}

}  // namespace

SpinConfig::SpinConfig(double spin, double m_z)
    : SpinConfig(from_twice(twice_exact(spin, "spin S"), twice_exact(m_z, "m_z")))
{
}

SpinConfig SpinConfig::from_twice(int two_s, int two_m)
{
    if (two_s < 1)
    {
        throw DomainError("spin S must be >= 1/2");
    }
    if (two_m < -two_s || two_m > two_s || (two_s - two_m) % 2 != 0)
    {
        throw DomainError("m_z must be one of -S, -S+1, ..., S");
    }
    SpinConfig cfg;
    cfg.two_s_ = two_s;
    cfg.two_m_ = two_m;
    return cfg;
}

ExchangeEigenvalues exchange_eigenvalues(double spin)
{
    int const two_s = twice_exact(spin, "spin S");
    if (two_s < 1)
    {
        throw DomainError("spin S must be >= 1/2");
    }
    double const s = 0.5 * two_s;
    return {0.5 * s, -0.5 * (s + 1.0)};
}

ChannelWeights channel_weights(SpinConfig const& cfg)
{
    // (S + m + 1)/(2S + 1) in twice-units: (2S + 2m + 2)/(2(2S + 1))
    double const denom = 2.0 * (cfg.two_s() + 1);
    return {(cfg.two_s() + cfg.two_m() + 2) / denom, (cfg.two_s() - cfg.two_m()) / denom};
}

double flip_factor(SpinConfig const& cfg)
{
    // (S - m)(S + m + 1) = (2S - 2m)(2S + 2m + 2)/4, exact in integers
    long const num = static_cast<long>(cfg.two_s() - cfg.two_m())
                     * (cfg.two_s() + cfg.two_m() + 2);
    return 0.5 * std::sqrt(static_cast<double>(num));
}

}  // namespace spinphase
