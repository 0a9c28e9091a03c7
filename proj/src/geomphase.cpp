#include "spinphase/geomphase.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "spinphase/errors.hpp"

namespace spinphase {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double min_norm2 = 1e-14;

Complex inner(TransmittedState const& a, TransmittedState const& b)
{
    return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

TransmittedState evaluate_checked(StatePath const& path, double alpha)
{
    TransmittedState s = path(alpha);
    double const n2 = s.norm2();
    if (!(n2 >= min_norm2))
    {
        throw SingularPathError("transmitted state vanishes at path parameter "
                                + std::to_string(alpha));
    }
    return s;
}

//---------------------------------------------------------------------------//
// Pancharatnam mesh: sum of arg <s_i|s_{i+1}> over a doubling mesh
//---------------------------------------------------------------------------//

struct MeshSum
{
    double sum = 0.0;
    double max_step = 0.0;
};

MeshSum mesh_sum(std::vector<TransmittedState> const& nodes)
{
    MeshSum out;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    {
        double const step = std::arg(inner(nodes[i], nodes[i + 1]));
        out.sum += step;
        out.max_step = std::max(out.max_step, std::abs(step));
    }
    return out;
}

ConnectionEstimate mesh_connection(StatePath const& path, double a, double b, QuadratureConfig const& cfg)
{
    long intervals = cfg.initial_points;
    std::vector<TransmittedState> nodes(static_cast<std::size_t>(intervals) + 1);
    for (long i = 0; i <= intervals; ++i)
    {
        double const alpha = i == intervals ? b : a + (b - a) * static_cast<double>(i) / intervals;
        nodes[static_cast<std::size_t>(i)] = evaluate_checked(path, alpha);
    }

    // Romberg table over levels whose every step stays below pi/2.  The
    // step arg is odd under reversal, so the error expands in even powers.
    std::vector<std::vector<double>> table;
    double best = 0.0;
    double best_err = std::numeric_limits<double>::infinity();

    for (;;)
    {
        MeshSum const level = mesh_sum(nodes);
        if (level.max_step < 0.5 * pi)
        {
            std::vector<double> row{level.sum};
            if (!table.empty())
            {
                auto const& prev = table.back();
                double factor = 1.0;
                for (std::size_t j = 1; j <= prev.size(); ++j)
                {
                    factor *= 4.0;
                    row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0));
                }
            }
            table.push_back(std::move(row));

            auto const& cur = table.back();
            best = cur.back();
            if (table.size() >= 3)
            {
                auto const& prev = table[table.size() - 2];
                double const err = std::max(std::abs(cur.back() - prev.back()),
                                            std::abs(cur.back() - cur[cur.size() - 2]));
                best_err = err;
                if (err < cfg.tol)
                {
                    return {best, err, static_cast<long>(nodes.size())};
                }
            }
        }
        else
        {
            table.clear();
            best = level.sum;
        }

        long const next = 2 * intervals;
        if (next + 1 > cfg.max_points)
        {
            throw ConvergenceError("Pancharatnam mesh did not converge within max_points",
                                   best,
                                   best_err,
                                   static_cast<long>(nodes.size()));
        }
        std::vector<TransmittedState> refined(static_cast<std::size_t>(next) + 1);
        for (long i = 0; i < intervals; ++i)
        {
            auto const ui = static_cast<std::size_t>(i);
            refined[2 * ui] = nodes[ui];
            double const alpha = a + (b - a) * (2.0 * static_cast<double>(i) + 1.0) / next;
            refined[2 * ui + 1] = evaluate_checked(path, alpha);
        }
        refined.back() = nodes.back();
        nodes = std::move(refined);
        intervals = next;
    }
}

//---------------------------------------------------------------------------//
// Derivative quadrature: adaptive Gauss-Kronrod of Im<s|s'>/<s|s>
//---------------------------------------------------------------------------//

struct StateDerivative
{
    Complex up;
    Complex down;
    double error;
};

// Ridders' extrapolated central differences on both components at once.
StateDerivative ridders(StatePath const& path, double x, double h0, long& evals)
{
    constexpr int ntab = 10;
    constexpr double con = 1.4;
    constexpr double con2 = con * con;
    std::array<std::array<std::pair<Complex, Complex>, ntab>, ntab> a{};

    auto central = [&](double h) {
        auto const hi = path(x + h);
        auto const lo = path(x - h);
        evals += 2;
        return std::pair<Complex, Complex>{(hi.up - lo.up) / (2.0 * h), (hi.down - lo.down) / (2.0 * h)};
    };
    auto dist = [](std::pair<Complex, Complex> const& p, std::pair<Complex, Complex> const& q) {
        return std::max(std::abs(p.first - q.first), std::abs(p.second - q.second));
    };

    double h = h0;
    a[0][0] = central(h);
    StateDerivative best{a[0][0].first, a[0][0].second, std::numeric_limits<double>::infinity()};
    for (int i = 1; i < ntab; ++i)
    {
        h /= con;
        a[0][i] = central(h);
        double fac = con2;
        for (int j = 1; j <= i; ++j)
        {
            a[j][i] = {(a[j - 1][i].first * fac - a[j - 1][i - 1].first) / (fac - 1.0),
                       (a[j - 1][i].second * fac - a[j - 1][i - 1].second) / (fac - 1.0)};
            fac *= con2;
            double const errt = std::max(dist(a[j][i], a[j - 1][i]), dist(a[j][i], a[j - 1][i - 1]));
            if (errt <= best.error)
            {
                best = {a[j][i].first, a[j][i].second, errt};
            }
        }
        if (dist(a[i][i], a[i - 1][i - 1]) >= 2.0 * best.error)
        {
            break;
        }
    }
    return best;
}

class ConnectionIntegrand
{
  public:
    ConnectionIntegrand(StatePath const& path, double step) : path_(path), step_(step) {}

    void set_step(double step) noexcept { step_ = step; }

    double operator()(double x)
    {
        ++calls_;
        TransmittedState const s = evaluate_checked(path_, x);
        double const scale = std::sqrt(s.norm2());
        StateDerivative d = ridders(path_, x, step_, state_evals_);
        // shrink the starting step until the extrapolation settles
        double h = step_;
        for (int retry = 0; retry < 4 && d.error > 1e-11 * (scale + std::abs(d.up) + std::abs(d.down)); ++retry)
        {
            h /= 8.0;
            StateDerivative const trial = ridders(path_, x, h, state_evals_);
            if (trial.error < d.error)
            {
                d = trial;
            }
        }
        return std::imag(std::conj(s.up) * d.up + std::conj(s.down) * d.down) / s.norm2();
    }

    long calls() const noexcept { return calls_; }

  private:
    StatePath const& path_;
    double step_;
    long calls_ = 0;
    long state_evals_ = 0;
};

struct Panel
{
    double lo;
    double hi;
    double value;
    double error;
    double step;

    bool operator<(Panel const& other) const { return error < other.error; }
};

ConnectionEstimate quadrature_connection(StatePath const& path, double a, double b, QuadratureConfig const& cfg)
{
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;

    // Initial partition: uniform, then bisect until the state turns by less
    // than pi/8 across every panel so that no resonance hides between nodes.
    std::vector<std::pair<double, double>> pending;
    std::vector<std::pair<double, double>> partition;
    for (int i = 0; i < cfg.initial_points; ++i)
    {
        double const lo = a + (b - a) * i / cfg.initial_points;
        double const hi = i + 1 == cfg.initial_points ? b : a + (b - a) * (i + 1) / cfg.initial_points;
        pending.emplace_back(lo, hi);
    }
    long evals = 0;
    while (!pending.empty())
    {
        auto const [lo, hi] = pending.back();
        pending.pop_back();
        auto const slo = evaluate_checked(path, lo);
        auto const shi = evaluate_checked(path, hi);
        evals += 2;
        if (std::abs(std::arg(inner(slo, shi))) > pi / 8.0 && evals < cfg.max_points)
        {
            double const mid = 0.5 * (lo + hi);
            pending.emplace_back(mid, hi);
            pending.emplace_back(lo, mid);
        }
        else
        {
            partition.emplace_back(lo, hi);
        }
    }

    ConnectionIntegrand integrand(path, 1e-3);

    // |K15 - G7| grossly overstates the Kronrod error; rescale as QUADPACK does.
    // The difference step follows the partition panel, not the bisected one:
    // shrinking it with the panels only buys roundoff.
    auto make_panel = [&](double lo, double hi, double step) {
        integrand.set_step(step);
        double err = 0.0;
        double l1 = 0.0;
        double const value = rule::integrate(std::ref(integrand), lo, hi, 0, 0.0, &err, &l1);
        err *= 0.5 * (hi - lo);  // boost reports the error on [-1, 1]
        if (l1 > 0.0 && err > 0.0)
        {
            err = l1 * std::min(1.0, std::pow(200.0 * err / l1, 1.5));
        }
        err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * l1);
        return Panel{lo, hi, value, err, step};
    };

    std::priority_queue<Panel> panels;
    double total_error = 0.0;
    for (auto const& [lo, hi] : partition)
    {
        Panel const panel = make_panel(lo, hi, std::clamp(0.25 * (hi - lo), 1e-6, 1e-2));
        total_error += panel.error;
        panels.push(panel);
    }

    // Sum in a fixed order so the result does not depend on heap layout.
    auto totals = [&]() {
        std::vector<Panel> all;
        for (auto copy = panels; !copy.empty(); copy.pop())
        {
            all.push_back(copy.top());
        }
        std::sort(all.begin(), all.end(), [](Panel const& x, Panel const& y) { return x.lo < y.lo; });
        double value = 0.0;
        double error = 0.0;
        for (auto const& panel : all)
        {
            value += panel.value;
            error += panel.error;
        }
        return std::pair{value, error};
    };

    while (total_error >= cfg.tol)
    {
        if (integrand.calls() + 30 > cfg.max_points)
        {
            auto const [value, error] = totals();
            throw ConvergenceError("derivative quadrature did not converge within max_points",
                                   value,
                                   error,
                                   integrand.calls());
        }
        Panel const worst = panels.top();
        panels.pop();
        double const mid = 0.5 * (worst.lo + worst.hi);
        Panel const left = make_panel(worst.lo, mid, worst.step);
        Panel const right = make_panel(mid, worst.hi, worst.step);
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    auto const [value, error] = totals();
    return {value, error, integrand.calls()};
}

}  // namespace

//---------------------------------------------------------------------------//

TransmittedState TransmittedState::checked(Complex up, Complex down, int two_m)
{
    TransmittedState s{up, down, two_m};
    double const n2 = s.norm2();
    if (!(n2 > 0.0) || n2 > 1.0 + 1e-10)
    {
        throw DomainError("transmitted state norm^2 must lie in (0, 1], got " + std::to_string(n2));
    }
    return s;
}

TransmittedState TransmittedState::from_amps(ChannelAmps const& amps, SpinConfig const& spin)
{
    return checked(amps.t_up, amps.t_down, spin.two_m());
}

void QuadratureConfig::validate() const
{
    if (!(tol > 0.0))
    {
        throw DomainError("quadrature tolerance must be positive");
    }
    if (initial_points < 2)
    {
        throw DomainError("initial_points must be at least 2");
    }
    if (max_points < initial_points + 1)
    {
        throw DomainError("max_points must exceed initial_points");
    }
}

ChannelPhases channel_phases(TransmittedState const& s)
{
    ChannelPhases out;
    out.up_defined = s.up != Complex(0.0, 0.0);
    out.down_defined = s.down != Complex(0.0, 0.0);
    if (!out.up_defined && !out.down_defined)
    {
        throw DomainError("both amplitudes vanish; channel phases undefined");
    }
    out.up = out.up_defined ? principal_angle(std::arg(s.up)) : 0.0;
    out.down = out.down_defined ? principal_angle(std::arg(s.down)) : 0.0;
    return out;
}

TotalPhase total_phase(TransmittedState const& a, TransmittedState const& b)
{
    Complex const ov = inner(a, b);
    if (!(std::abs(ov) >= 1e-14))
    {
        throw OrthogonalStatesError("endpoint states are orthogonal; total phase undefined");
    }
    return {std::arg(ov), ov};
}

ConnectionEstimate connection_integral(StatePath const& path,
                                       double alpha_a,
                                       double alpha_b,
                                       QuadratureConfig const& cfg)
{
    cfg.validate();
    if (alpha_a == alpha_b)
    {
        evaluate_checked(path, alpha_a);
        return {0.0, 0.0, 1};
    }
    if (cfg.method == QuadratureMethod::pancharatnam_mesh)
    {
        return mesh_connection(path, alpha_a, alpha_b, cfg);
    }
    if (alpha_a > alpha_b)
    {
        try
        {
            auto est = quadrature_connection(path, alpha_b, alpha_a, cfg);
            est.value = -est.value;
            return est;
        }
        catch (ConvergenceError const& e)
        {
            throw ConvergenceError(e.what(), -e.best_estimate(), e.est_error(), e.n_points());
        }
    }
    return quadrature_connection(path, alpha_a, alpha_b, cfg);
}

PhaseResult path_phase(StatePath const& path, double alpha_a, double alpha_b, QuadratureConfig const& cfg)
{
    TransmittedState const sa = evaluate_checked(path, alpha_a);
    TransmittedState const sb = evaluate_checked(path, alpha_b);
    TotalPhase const total = total_phase(sa, sb);

    PhaseResult out;
    out.total_phase = total.phase;
    out.overlap = total.overlap;
    out.visibility = std::abs(total.overlap);
    if (out.visibility < 1e-10)
    {
        throw OrthogonalStatesError("endpoint visibility below 1e-10; total phase undefined");
    }
    try
    {
        auto const conn = connection_integral(path, alpha_a, alpha_b, cfg);
        out.connection = conn.value;
        out.est_error = conn.est_error;
        out.n_points = conn.n_points;
    }
    catch (ConvergenceError const& e)
    {
        out.connection = e.best_estimate();
        out.est_error = e.est_error();
        out.n_points = e.n_points();
        out.converged = false;
    }
    out.gamma_s = principal_angle(out.total_phase - out.connection);
    return out;
}

StatePath arm_state_path(PhysicalParams const& p)
{
    DimensionlessParams const base = nondimensionalize(p, p.a_bohr);
    SpinConfig const spin = p.spin;
    return [base, spin](double alpha) {
        DimensionlessParams d = base;
        d.alpha = alpha;
        auto const amps = transmission_amplitudes(d, spin);
        return TransmittedState{amps.t_up, amps.t_down, spin.two_m()};
    };
}

StatePath normalized_path(StatePath path)
{
    return [path = std::move(path)](double alpha) {
        TransmittedState s = path(alpha);
        double const norm = std::sqrt(s.norm2());
        if (norm > 0.0)
        {
            s.up /= norm;
            s.down /= norm;
        }
        return s;
    };
}

StatePath gauge_transform(StatePath path, std::function<double(double)> gauge)
{
    return [path = std::move(path), gauge = std::move(gauge)](double alpha) {
        TransmittedState s = path(alpha);
        Complex const factor = std::polar(1.0, gauge(alpha));
        s.up *= factor;
        s.down *= factor;
        return s;
    };
}

namespace {

std::pair<double, double> half_widths(PhysicalParams const& p, double width_a, double width_b)
{
    p.validate();
    if (!(width_a > 0.0) || !(width_b > 0.0))
    {
        throw DomainError("arm widths must be positive");
    }
    return {0.5 * width_a / p.a_bohr, 0.5 * width_b / p.a_bohr};
}

}  // namespace

PhaseResult geometric_phase(PhysicalParams const& p, double width_a, double width_b, QuadratureConfig const& cfg)
{
    auto const [alpha_a, alpha_b] = half_widths(p, width_a, width_b);
    return path_phase(arm_state_path(p), alpha_a, alpha_b, cfg);
}

PhaseResult geometric_phase_normalized(PhysicalParams const& p,
                                       double width_a,
                                       double width_b,
                                       QuadratureConfig const& cfg)
{
    auto const [alpha_a, alpha_b] = half_widths(p, width_a, width_b);
    return path_phase(normalized_path(arm_state_path(p)), alpha_a, alpha_b, cfg);
}

double principal_angle(double angle)
{
    double r = std::remainder(angle, 2.0 * pi);  // [-pi, pi]
    if (r > pi - 1e-9)
    {
        r -= 2.0 * pi;
    }
    return r;
}

}  // namespace spinphase
