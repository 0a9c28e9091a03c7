#pragma once

// Spin-1/2 particle coupled to a spin-S impurity through s.S.
// The coupled space splits into total-spin channels S + 1/2 ("plus") and
// S - 1/2 ("minus"); everything here is closed form for that case only.

namespace spinphase {

/// Impurity spin S and its S_z projection m_z.
///
/// Stored as twice the value so that half-integers are exact.
class SpinConfig
{
  public:
    /// Throws DomainError unless 2S is a positive integer and m_z is one
    /// of -S, -S+1, ..., S.
    SpinConfig(double spin, double m_z);

    static SpinConfig from_twice(int two_s, int two_m);

    double spin() const noexcept { return 0.5 * two_s_; }
    double m_z() const noexcept { return 0.5 * two_m_; }
    int two_s() const noexcept { return two_s_; }
    int two_m() const noexcept { return two_m_; }
    int multiplicity() const noexcept { return two_s_ + 1; }
    bool stretched() const noexcept { return two_m_ == two_s_; }

    bool operator==(SpinConfig const&) const = default;

  private:
    SpinConfig() = default;
    int two_s_ = 1;
    int two_m_ = -1;
};

struct ExchangeEigenvalues
{
    double plus;   // j = S + 1/2: S/2
    double minus;  // j = S - 1/2: -(S+1)/2
};

struct ChannelWeights
{
    double plus;
    double minus;
};

/// Eigenvalues of s.S on the two total-spin channels.
ExchangeEigenvalues exchange_eigenvalues(double spin);

/// Squared Clebsch-Gordan weights of |up> (x) |m_z> in each channel.
ChannelWeights channel_weights(SpinConfig const& cfg);

/// sqrt((S - m_z)(S + m_z + 1)); zero for the stretched state.
double flip_factor(SpinConfig const& cfg);

}  // namespace spinphase
