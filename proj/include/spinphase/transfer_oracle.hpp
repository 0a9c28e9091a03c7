#pragma once

// First-principles solution of the three-delta scattering problem by
// plane-wave matching.  Independent of the closed-form amplitudes; used to
// validate them and to supply reflection amplitudes.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "spinphase/scatter_core.hpp"

namespace spinphase {

struct DeltaSite
{
    double position; // length units
    double strength; // energy * length
};

/// Delta potentials on a line for a particle of wavenumber k and mass m_eff.
///
/// At each site psi is continuous and psi' jumps by 2 m_eff strength psi.
class DeltaChain
{
  public:
    /// Throws DomainError if k <= 0, mass <= 0 or positions are not
    /// strictly increasing.
    DeltaChain(double wavenumber, double mass, std::vector<DeltaSite> sites);

    /// The barrier / impurity / barrier arrangement for one exchange channel.
    static DeltaChain three_delta(PhysicalParams const& p, double half_width, double exchange_eigenvalue);

    double wavenumber() const noexcept { return k_; }
    double mass() const noexcept { return mass_; }
    std::span<DeltaSite const> sites() const noexcept { return sites_; }

  private:
    double k_;
    double mass_;
    std::vector<DeltaSite> sites_;
};

using TransferMatrix = Eigen::Matrix2cd;

/// Maps plane-wave coefficients (A, B) of A e^{ikx} + B e^{-ikx} on the left
/// of the chain to those on the right.
TransferMatrix transfer_matrix(DeltaChain const& chain);

struct ScalarScattering
{
    Complex t;
    Complex r;
};

/// Injection from the left: e^{ikx} + r e^{-ikx} -> t e^{ikx}.
ScalarScattering channel_scattering(DeltaChain const& chain);

/// Injection from the right: e^{-ikx} + r e^{ikx} -> t e^{-ikx}.
ScalarScattering channel_scattering_from_right(DeltaChain const& chain);

/// Full transmission and reflection operators on particle (x) impurity spin.
///
/// Basis index = particle * (2S + 1) + (S - m): particle 0 is up, 1 is down,
/// impurity projections run from S down to -S.
struct SpinMatrices
{
    Eigen::MatrixXcd transmission;
    Eigen::MatrixXcd reflection;
    int two_s = 1;

    int dimension() const noexcept { return 2 * (two_s + 1); }
    /// Basis index for particle spin (+1 / -1 in units of 1/2) and 2 m_z.
    int index(int particle_sign, int two_m) const;
};

/// The exchange operator s.S as a D x D matrix in the SpinMatrices basis.
Eigen::MatrixXcd exchange_operator(int two_s);

/// Two channel solves (impurity strengths J lambda_+ and J lambda_-) combined
/// through the spectral projectors of s.S.
SpinMatrices spin_scattering_matrices(PhysicalParams const& p, double half_width);

/// Matrix elements for the injected |up, m_z> state, with reflections.
ChannelAmps oracle_amplitudes(PhysicalParams const& p, double half_width);

}  // namespace spinphase
