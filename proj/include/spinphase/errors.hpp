#pragma once

#include <stdexcept>
#include <string>

namespace spinphase {

/// Invalid physical or numerical input (non-positive wavenumber, bad spin label, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// The closed-form denominator vanished.
class SingularityError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Endpoint overlap too small for a defined total phase.
class OrthogonalStatesError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A transported state lost its norm somewhere on the path.
class SingularPathError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Refinement hit max_points before meeting the tolerance.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(std::string const& what,
                     double best_estimate,
                     double est_error,
                     long n_points)
        : std::runtime_error(what)
        , best_estimate_(best_estimate)
        , est_error_(est_error)
        , n_points_(n_points)
    {
    }

    double best_estimate() const noexcept { return best_estimate_; }
    double est_error() const noexcept { return est_error_; }
    long n_points() const noexcept { return n_points_; }

  private:
    double best_estimate_;
    double est_error_;
    long n_points_;
};

}  // namespace spinphase
