#include "ringpair/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ringpair/parallel.hpp"

namespace ringpair
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_below_threshold(const DynParam& dyn, const char* what)
{
    if (dyn.above_threshold())
        throw std::domain_error(std::string(what) + ": operating point is at or above threshold");
}

} // namespace

FluxResult pair_flux(const DynParam& dyn)
{
    const RingParams& p = dyn.params();
    if (dyn.above_threshold())
        return FluxResult{kNaN, kNaN, true, dyn};
    const double ln = p.lambda_fwm() * dyn.n_p();
    const double j_s = 2.0 * p.gamma_ext() * ln * ln / dyn.threshold_gap();
    const double e_ring = p.lambda_fwm() * ln / dyn.threshold_gap();
    return FluxResult{j_s, e_ring, false, dyn};
}

FluxResult pair_flux(const DynParam& dyn, const RingParams& /*params*/)
{
    return pair_flux(dyn);
}

cplx g1(const DynParam& dyn, double tau)
{
    require_below_threshold(dyn, "g1");
    const RingParams& p = dyn.params();
    const double g = p.gamma_tot();
    const double at = std::abs(tau);
    const HypPair h = damped_hyp_pair(dyn.rho_sq(), g, at);
    const double ln = p.lambda_fwm() * dyn.n_p();
    const double mag = p.gamma_ext() * ln * ln / dyn.threshold_gap() * (h.c + g * h.s);
    // g1(-tau) = conj(g1(tau))
    return std::polar(mag, -dyn.detuning() * tau);
}

double lineshape_value(const DynParam& dyn, double omega)
{
    require_below_threshold(dyn, "lineshape");
    const RingParams& p = dyn.params();
    const double g = p.gamma_tot();
    const double x = omega - dyn.detuning();
    const double a = g * g - x * x - dyn.rho_sq();
    const double den = a * a + 4.0 * g * g * x * x;
    const double ln = p.lambda_fwm() * dyn.n_p();
    return 4.0 * p.gamma_ext() * g * ln * ln / (std::sqrt(2.0 * kPi) * den);
}

std::vector<double> default_spectrum_grid(const DynParam& dyn, double half_width_in_gamma,
                                          std::size_t points)
{
    if (points < 2)
        throw std::invalid_argument("default_spectrum_grid: need at least two points");
    const double half = half_width_in_gamma * dyn.params().gamma_tot();
    std::vector<double> w(points);
    for (std::size_t k = 0; k < points; ++k)
        w[k] = dyn.detuning() - half + 2.0 * half * static_cast<double>(k) / (points - 1);
    return w;
}

SpectrumGrid lineshape(const DynParam& dyn, std::span<const double> omega_s_grid)
{
    require_below_threshold(dyn, "lineshape");
    SpectrumGrid out;
    out.omega_s.assign(omega_s_grid.begin(), omega_s_grid.end());
    out.values.reserve(out.omega_s.size());
    for (double w : out.omega_s)
        out.values.push_back(lineshape_value(dyn, w));
    out.n_p = dyn.n_p();
    out.detuning = dyn.detuning();
    out.rho_sq = dyn.rho_sq();
    out.regime = dyn.regime();
    out.convention = "nu_s(omega) = (2 pi)^(-1/2) * integral dtau exp(i omega tau) g1(tau); "
                     "omega is the angular offset from the signal resonance";
    return out;
}

SpectrumGrid lineshape(const DynParam& dyn)
{
    const std::vector<double> w = default_spectrum_grid(dyn);
    return lineshape(dyn, w);
}

std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("find_peaks: size mismatch");
    std::vector<Peak> peaks;
    for (std::size_t k = 1; k + 1 < y.size(); ++k)
    {
        if (!(y[k] > y[k - 1] && y[k] >= y[k + 1]))
            continue;
        const double x0 = x[k - 1], x1 = x[k], x2 = x[k + 1];
        const double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1];
        // vertex of the parabola through the three samples
        const double d01 = (y1 - y0) / (x1 - x0);
        const double d12 = (y2 - y1) / (x2 - x1);
        const double curv = (d12 - d01) / (x2 - x0);
        Peak pk{x1, y1};
        if (curv < 0.0)
        {
            const double xv = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
            if (xv >= x0 && xv <= x2)
            {
                pk.position = xv;
                pk.value = y1 + d01 * (xv - x1) + curv * (xv - x1) * (xv - x0);
            }
        }
        peaks.push_back(pk);
    }
    return peaks;
}

std::vector<Peak> find_peaks(const SpectrumGrid& grid)
{
    return find_peaks(grid.omega_s, grid.values);
}

double spectrum_fwhm(const SpectrumGrid& grid)
{
    const auto& x = grid.omega_s;
    const auto& y = grid.values;
    if (y.size() < 3)
        return kNaN;
    const double half = 0.5 * *std::max_element(y.begin(), y.end());
    std::size_t lo = 0;
    while (lo < y.size() && y[lo] < half)
        ++lo;
    std::size_t hi = y.size() - 1;
    while (hi > 0 && y[hi] < half)
        --hi;
    if (lo == 0 || hi == y.size() - 1)
        return kNaN;
    auto cross = [&](std::size_t a, std::size_t b) {
        return x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
    };
    return cross(hi, hi + 1) - cross(lo - 1, lo);
}

double min_peak_separation(const std::vector<Peak>& peaks, double gamma_tot)
{
    if (peaks.size() < 2)
        return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < peaks.size(); ++k)
        best = std::min(best, std::abs(peaks[k].position - peaks[k - 1].position));
    return best / gamma_tot;
}

std::vector<FluxRow> flux_vs_power_sweep(std::span<const double> p_in_grid, DetuningPolicy policy,
                                         const RingParams& params, unsigned threads)
{
    if (p_in_grid.empty())
        throw std::invalid_argument("flux_vs_power_sweep: empty power grid");
    std::vector<std::vector<FluxRow>> per_power(p_in_grid.size());

    auto row_for = [&](double p_in, double detuning, double n_p, Branch branch) {
        const DynParam dyn = DynParam::make(n_p, detuning, params);
        const FluxResult f = pair_flux(dyn);
        return FluxRow{p_in, detuning, n_p, branch, f.j_s, f.e_ring, dyn.regime(), f.above_threshold};
    };

    parallel_for(p_in_grid.size(), threads, [&](std::size_t k) {
        const double p_in = p_in_grid[k];
        if (policy.kind == DetuningPolicy::Kind::Optimal)
        {
            const PumpDrive d = optimal_drive(p_in, params);
            const double n_p = optimal_photon_number(d.p_amp_sq, params);
            per_power[k].push_back(row_for(p_in, d.detuning, n_p, Branch::Unique));
            return;
        }
        const PumpDrive d = PumpDrive::from_power(p_in, policy.detuning, params);
        for (const PumpSolution& s : solve_steady_state(d, params))
            if (s.stability == Stability::Stable)
                per_power[k].push_back(row_for(p_in, d.detuning, s.n_p, s.branch));
    });

    std::vector<FluxRow> rows;
    for (auto& v : per_power)
        rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

} // namespace ringpair
