#include "ringpair/pump_steady.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ringpair
{

namespace
{

constexpr double kTangencyBand = 1e-8;

// Dimensionless form of the steady-state cubic. With x = N |eta| / Gamma,
// d = sign(eta) Delta / Gamma and P = |p|^2 |eta| / Gamma^3 the cubic becomes
// 4x^3 - 4d x^2 + (1 + d^2) x - P. Evaluated in the factored form
// x (1 + (2x - d)^2) - P, which keeps full relative accuracy near the
// optimal-detuning root where the expanded form cancels badly.
struct ScaledCubic
{
    double d;
    double big_p;

    double value(double x) const
    {
        const double w = 2.0 * x - d;
        return x * (1.0 + w * w) - big_p;
    }
    double slope(double x) const
    {
        const double w = 2.0 * x - d;
        return 1.0 + w * w + 4.0 * x * w;
    }
};

double polish(const ScaledCubic& f, double x)
{
    double fx = f.value(x);
    for (int it = 0; it < 60; ++it)
    {
        const double df = f.slope(x);
        if (df == 0.0 || fx == 0.0)
            break;
        const double next = x - fx / df;
        const double fnext = f.value(next);
        // the first two steps are always taken; later ones only if they help
        if (it >= 2 && std::abs(fnext) >= std::abs(fx))
            break;
        const bool converged = std::abs(next - x) <= 1e-16 * std::max(std::abs(next), 1e-300);
        x = next;
        fx = fnext;
        if (converged && it >= 1)
            break;
    }
    return x;
}

// Real roots of the monic cubic x^3 + a x^2 + b x + c, closed form.
std::vector<double> real_cubic_roots(double a, double b, double c)
{
    const double shift = a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = 4.0 * p * p * p + 27.0 * q * q;
    const double scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q;

    std::vector<double> t;
    if (scale == 0.0)
    {
        t = {0.0};
    }
    else if (std::abs(disc) <= kTangencyBand * scale)
    {
        // double root at -3q/(2p), simple root at 3q/p
        t = {3.0 * q / p, -1.5 * q / p};
    }
    else if (disc < 0.0)
    {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            t.push_back(r * std::cos(theta - 2.0 * kPi * k / 3.0));
    }
    else
    {
        const double sq = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double u = std::cbrt(-0.5 * q - (q >= 0.0 ? sq : -sq));
        t = {u == 0.0 ? 0.0 : u - p / (3.0 * u)};
    }
    for (double& v : t)
        v -= shift;
    return t;
}

} // namespace

const char* to_string(Stability s)
{
    return s == Stability::Stable ? "stable" : "unstable";
}

const char* to_string(Branch b)
{
    switch (b)
    {
    case Branch::Lower:
        return "lower";
    case Branch::Middle:
        return "middle";
    case Branch::Upper:
        return "upper";
    case Branch::Unique:
        return "unique";
    }
    return "unknown";
}

double cubic_eval(double n_p, const PumpDrive& drive, const RingParams& params)
{
    const double eta = params.eta_spm();
    const double g = params.gamma_tot();
    const double delta = drive.detuning;
    const double w = 2.0 * eta * n_p - delta;
    return n_p * (g * g + w * w) - drive.p_amp_sq;
}

double critical_detuning(double gamma_tot)
{
    return std::sqrt(3.0) * gamma_tot;
}

double critical_detuning(const RingParams& params)
{
    return critical_detuning(params.gamma_tot());
}

StabilityWindow stability_window(double detuning, const RingParams& params)
{
    const double eta = params.eta_spm();
    const double crit = critical_detuning(params);
    StabilityWindow w;
    if (eta == 0.0 || std::abs(detuning) < crit)
        return w;
    const double root = 0.5 * std::sqrt(std::max(0.0, detuning * detuning - crit * crit));
    const double a = (detuning - root) / (3.0 * eta);
    const double b = (detuning + root) / (3.0 * eta);
    w.n_minus = std::min(a, b);
    w.n_plus = std::max(a, b);
    w.defined = true;
    return w;
}

StabilityWindow stability_window(const PumpDrive& drive, const RingParams& params)
{
    return stability_window(drive.detuning, params);
}

std::pair<std::complex<double>, std::complex<double>>
stability_eigenvalues(double n_p, double detuning, const RingParams& params)
{
    const double eta = params.eta_spm();
    const double g = params.gamma_tot();
    const double spm = 4.0 * eta * n_p - detuning;
    const double radicand = 4.0 * eta * eta * n_p * n_p - spm * spm;
    const std::complex<double> root = std::sqrt(std::complex<double>(radicand, 0.0));
    return {-g + root, -g - root};
}

Stability classify(double n_p, double detuning, const RingParams& params)
{
    return stability_window(detuning, params).contains(n_p) ? Stability::Unstable
                                                            : Stability::Stable;
}

std::vector<PumpSolution> solve_steady_state(const PumpDrive& drive, const RingParams& params)
{
    const double eta = params.eta_spm();
    const double g = params.gamma_tot();
    std::vector<double> roots;
    // dC/dN at each root. The unstable window is exactly where the slope is
    // negative; using it directly avoids flipping roots that sit within
    // rounding of N+- (the optimal-detuning root is one of those).
    std::vector<double> slopes;

    if (eta == 0.0)
    {
        roots.push_back(drive.p_amp_sq / (g * g + drive.detuning * drive.detuning));
    }
    else
    {
        const double e = std::abs(eta);
        const ScaledCubic f{std::copysign(1.0, eta) * drive.detuning / g,
                            drive.p_amp_sq * e / (g * g * g)};
        std::vector<double> xs = real_cubic_roots(-f.d, 0.25 * (1.0 + f.d * f.d), -0.25 * f.big_p);
        if (xs.size() >= 2 && f.big_p > 0.0)
        {
            // The closed form loses the two members of a near-tangent pair to
            // sqrt(eps). Polish the isolated root, then recover the pair from
            // the sum and product of the roots.
            std::size_t iso = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < xs.size(); ++i)
            {
                double gap = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < xs.size(); ++j)
                    if (j != i)
                        gap = std::min(gap, std::abs(xs[i] - xs[j]));
                if (gap > best)
                {
                    best = gap;
                    iso = i;
                }
            }
            const double r = polish(f, xs[iso]);
            if (r > 0.0)
            {
                const double half_sum = 0.5 * (f.d - r);
                const double prod = 0.25 * f.big_p / r;
                const double disc = std::max(half_sum * half_sum - prod, 0.0);
                const double hi = half_sum + std::sqrt(disc);
                xs = {r};
                if (hi > 0.0)
                {
                    // Newton from outside the pair converges monotonically to
                    // the outer member (convex above x = d/3, concave below);
                    // the inner member then follows from the product.
                    if (half_sum > f.d / 3.0)
                    {
                        const double upper = polish(f, hi * (1.0 + 1e-6));
                        xs.push_back(upper);
                        xs.push_back(polish(f, prod / upper));
                    }
                    else
                    {
                        const double lower = polish(f, prod / hi * (1.0 - 1e-6));
                        xs.push_back(lower);
                        xs.push_back(polish(f, prod / lower));
                    }
                }
            }
        }
        for (double& x : xs)
            x = polish(f, x);
        std::sort(xs.begin(), xs.end());

        // a tangent pair inside the band is reported once; keep the stable member
        std::vector<double> merged;
        for (double x : xs)
        {
            if (!merged.empty()
                && std::abs(x - merged.back())
                       <= kTangencyBand * std::max({std::abs(x), std::abs(merged.back()), 1e-300}))
            {
                if (f.slope(merged.back()) <= 0.0)
                    merged.back() = x;
                continue;
            }
            merged.push_back(x);
        }
        for (double x : merged)
        {
            slopes.push_back(f.slope(x));
            if (x < 0.0)
            {
                if (f.big_p == 0.0 && x > -1e-300)
                    x = 0.0;
                else
                {
                    slopes.pop_back();
                    continue;
                }
            }
            roots.push_back(x * g / e);
        }
        if (roots.empty() && f.big_p == 0.0)
        {
            roots.push_back(0.0);
            slopes.push_back(f.slope(0.0));
        }
    }

    std::vector<PumpSolution> out;
    out.reserve(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i)
    {
        PumpSolution s;
        s.n_p = roots[i];
        s.drive = drive;
        s.stability = slopes.empty() || slopes[i] > 0.0 ? Stability::Stable : Stability::Unstable;
        if (roots.size() == 1)
            s.branch = Branch::Unique;
        else if (i == 0)
            s.branch = Branch::Lower;
        else if (i + 1 == roots.size())
            s.branch = Branch::Upper;
        else
            s.branch = Branch::Middle;
        out.push_back(s);
    }
    return out;
}

double optimal_detuning(double n_p, const RingParams& params)
{
    return 2.0 * params.eta_spm() * n_p;
}

double optimal_photon_number(double p_amp_sq, const RingParams& params)
{
    const double g = params.gamma_tot();
    return p_amp_sq / (g * g);
}

PumpDrive optimal_drive(double p_in, const RingParams& params)
{
    const double amp = p_amp_sq_from_power(p_in, params);
    return PumpDrive{p_in, optimal_detuning(optimal_photon_number(amp, params), params), amp};
}

FoldPoints fold_points(double detuning, const RingParams& params)
{
    FoldPoints fp;
    const StabilityWindow w = stability_window(detuning, params);
    if (!w.defined)
        return fp;
    const double eta = params.eta_spm();
    const double g = params.gamma_tot();
    auto amp_at = [&](double n) {
        const double shift = 2.0 * eta * n - detuning;
        return n * (g * g + shift * shift);
    };
    const double a = amp_at(w.n_minus);
    const double b = amp_at(w.n_plus);
    if (w.n_minus < 0.0 || w.n_plus < 0.0)
        return fp;
    fp.p_amp_sq_low = std::min(a, b);
    fp.p_amp_sq_high = std::max(a, b);
    if (params.gamma_ext() > 0.0)
    {
        fp.p_in_low = power_from_p_amp_sq(fp.p_amp_sq_low, params);
        fp.p_in_high = power_from_p_amp_sq(fp.p_amp_sq_high, params);
    }
    fp.defined = true;
    return fp;
}

HysteresisTable hysteresis_sweep(std::span<const double> p_in_grid, double detuning,
                                 const RingParams& params)
{
    if (p_in_grid.empty())
        throw std::invalid_argument("hysteresis_sweep: empty power grid");
    for (std::size_t i = 1; i < p_in_grid.size(); ++i)
        if (!(p_in_grid[i] > p_in_grid[i - 1]))
            throw std::invalid_argument("hysteresis_sweep: power grid must be ascending");

    HysteresisTable table;
    table.detuning = detuning;
    table.p_in.assign(p_in_grid.begin(), p_in_grid.end());
    table.convention = "history-following: each trace stays on the stable root nearest its "
                       "previous value and jumps only at fold points";
    for (double p : p_in_grid)
        table.roots.push_back(solve_steady_state(PumpDrive::from_power(p, detuning, params), params));

    auto follow = [&](const std::vector<PumpSolution>& roots, double prev, bool start_low) {
        double best = 0.0;
        bool found = false;
        for (const PumpSolution& r : roots)
        {
            if (r.stability != Stability::Stable)
                continue;
            if (!found)
            {
                best = r.n_p;
                found = true;
                continue;
            }
            if (std::isnan(prev))
            {
                if ((start_low && r.n_p < best) || (!start_low && r.n_p > best))
                    best = r.n_p;
            }
            else if (std::abs(r.n_p - prev) < std::abs(best - prev))
            {
                best = r.n_p;
            }
        }
        // a stable root always exists; the fallback guards degenerate tangencies
        return found ? best : roots.front().n_p;
    };

    const std::size_t n = p_in_grid.size();
    table.up_trace.resize(n);
    table.down_trace.resize(n);
    double prev = std::nan("");
    for (std::size_t i = 0; i < n; ++i)
        prev = table.up_trace[i] = follow(table.roots[i], prev, true);
    prev = std::nan("");
    for (std::size_t i = n; i-- > 0;)
        prev = table.down_trace[i] = follow(table.roots[i], prev, false);
    return table;
}

} // namespace ringpair
