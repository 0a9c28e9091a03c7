#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spinphase/scatter_core.hpp"

namespace spinphase {

/// Splitmix64 with a platform-independent uniform mapping, so a seed
/// produces the same draws everywhere.
class DrawRng
{
  public:
    explicit DrawRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform(double lo, double hi);
    int below(int n);

  private:
    std::uint64_t state_;
};

struct PhysicalDraw
{
    PhysicalParams params;
    double half_width;
};

/// Reduced ranges kappa in [0.1, 5], g in [-20, 20], j in [-50, 50],
/// alpha in [0.01, 10], S in {1/2, 1, 3/2} with a valid m_z; the units
/// a_B and eps are drawn in [0.5, 2] and the lab values derived from them.
PhysicalDraw draw_physical(DrawRng& rng);

struct ValidationCheck
{
    std::string name;
    long samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;

    bool passed() const { return max_error <= tolerance; }
};

struct ValidationReport
{
    std::vector<ValidationCheck> checks;

    bool passed() const;
};

/// Oracle equivalence and invariant suites over `draws` random draws.
ValidationReport run_validation(long draws, std::uint64_t seed);

void print_report(std::ostream& out, ValidationReport const& report);

}  // namespace spinphase
