#include "ringpair/jsi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ringpair/observables.hpp"
#include "ringpair/parallel.hpp"

namespace ringpair
{

namespace
{

// Integral of f over [a, b] when f is a quadratic polynomial there.
template <class F>
double simpson(F&& f, double a, double b)
{
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

std::string format_warning(const char* fmt, double a, double b)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

} // namespace

FilterModel::FilterModel(Shape shape, double delta_omega_trans, double delta_t)
    : shape_(shape), delta_omega_trans_(delta_omega_trans), delta_t_(delta_t)
{
    if (!(delta_t >= 0.0))
        throw std::domain_error("FilterModel: coincidence window must be non-negative");
}

FilterModel FilterModel::rect(double delta_omega_trans, double delta_t)
{
    if (!(delta_omega_trans >= 0.0))
        throw std::domain_error("FilterModel: transmission width must be non-negative");
    return FilterModel(Shape::Rect, delta_omega_trans, delta_t);
}

FilterModel FilterModel::custom(std::vector<double> omega, std::vector<double> transmission,
                                double delta_t)
{
    if (omega.size() < 2 || omega.size() != transmission.size())
        throw std::invalid_argument("FilterModel: need at least two matching samples");
    for (std::size_t k = 0; k < omega.size(); ++k)
    {
        if (!std::isfinite(omega[k]) || !std::isfinite(transmission[k]) || transmission[k] < 0.0)
            throw std::domain_error("FilterModel: samples must be finite, transmission >= 0");
        if (k > 0 && !(omega[k] > omega[k - 1]))
            throw std::invalid_argument("FilterModel: sample frequencies must be ascending");
    }
    FilterModel f(Shape::Custom, 0.0, delta_t);
    f.omega_ = std::move(omega);
    f.trans_ = std::move(transmission);
    f.delta_omega_trans_ = f.transmission_power();
    return f;
}

double FilterModel::transmission(double omega) const
{
    if (shape_ == Shape::Rect)
        return std::abs(omega) <= 0.5 * delta_omega_trans_ ? 1.0 : 0.0;
    if (omega < omega_.front() || omega > omega_.back())
        return 0.0;
    auto it = std::upper_bound(omega_.begin(), omega_.end(), omega);
    if (it == omega_.end())
        return trans_.back();
    const std::size_t k = static_cast<std::size_t>(it - omega_.begin());
    const double t = (omega - omega_[k - 1]) / (omega_[k] - omega_[k - 1]);
    return trans_[k - 1] + t * (trans_[k] - trans_[k - 1]);
}

double FilterModel::transmission_power() const
{
    if (shape_ == Shape::Rect)
        return delta_omega_trans_;
    double sum = 0.0;
    auto sq = [&](double w) {
        const double t = transmission(w);
        return t * t;
    };
    for (std::size_t k = 1; k < omega_.size(); ++k)
        sum += simpson(sq, omega_[k - 1], omega_[k]);
    return sum;
}

double FilterModel::support_half_width() const
{
    if (shape_ == Shape::Rect)
        return delta_omega_trans_;
    return omega_.back() - omega_.front();
}

double FilterModel::smoothing(double u) const
{
    if (shape_ == Shape::Rect)
        return std::max(0.0, delta_omega_trans_ - std::abs(u)) / (2.0 * kPi);

    const double lo = std::max(omega_.front(), u - omega_.back());
    const double hi = std::min(omega_.back(), u - omega_.front());
    if (!(hi > lo))
        return 0.0;
    // both factors are linear between consecutive breakpoints, so the product
    // is quadratic there and Simpson's rule is exact
    std::vector<double> cuts{lo, hi};
    for (double w : omega_)
    {
        if (w > lo && w < hi)
            cuts.push_back(w);
        const double m = u - w;
        if (m > lo && m < hi)
            cuts.push_back(m);
    }
    std::sort(cuts.begin(), cuts.end());
    auto prod = [&](double a) { return transmission(a) * transmission(u - a); };
    double sum = 0.0;
    for (std::size_t k = 1; k < cuts.size(); ++k)
        if (cuts[k] > cuts[k - 1])
            sum += simpson(prod, cuts[k - 1], cuts[k]);
    return sum / (2.0 * kPi);
}

std::vector<std::string> FilterModel::warnings(double gamma_tot) const
{
    std::vector<std::string> out;
    if (delta_omega_trans_ > 0.1 * gamma_tot)
        out.push_back(format_warning("filter width %.6g rad/s exceeds Gamma_tot/10 = %.6g rad/s",
                                     delta_omega_trans_, 0.1 * gamma_tot));
    if (delta_t_ > 0.1 / gamma_tot)
        out.push_back(format_warning("coincidence window %.6g s exceeds 0.1/Gamma_tot = %.6g s",
                                     delta_t_, 0.1 / gamma_tot));
    if (shape_ == Shape::Custom)
    {
        double asym = 0.0, peak = 0.0;
        for (std::size_t k = 0; k < omega_.size(); ++k)
        {
            asym = std::max(asym, std::abs(trans_[k] - transmission(-omega_[k])));
            peak = std::max(peak, trans_[k]);
        }
        if (asym > 1e-6 * peak)
            out.push_back(format_warning("transmission is not symmetric (max deviation %.3g of "
                                         "peak %.3g)",
                                         asym, peak));
    }
    return out;
}

double smoothing_D(double omega_s, double omega_i, const FilterModel& filter)
{
    return filter.smoothing(omega_s + omega_i);
}

double jsi_correlated_value(const DynParam& dyn, double omega_s, double omega_i,
                            const FilterModel& filter)
{
    if (dyn.above_threshold())
        throw std::domain_error("jsi: operating point is at or above threshold");
    const double delta = dyn.detuning();
    const double d = smoothing_D(omega_s - delta, omega_i - delta, filter);
    if (d == 0.0)
        return 0.0;
    const RingParams& p = dyn.params();
    const double g = p.gamma_tot();
    const double rho_sq = dyn.rho_sq();
    const double kappa = dyn.kappa();
    const double x = omega_i - delta;
    const double a = g * g - x * x - rho_sq;
    const double den = a * a + 4.0 * g * g * x * x;
    const double b = rho_sq + g * g + x * x;
    const double bracket_sq = 4.0 * (b * b + 4.0 * g * g * kappa * kappa) / (den * den);
    const double amp = p.gamma_ext() * p.lambda_fwm() * dyn.n_p();
    return filter.delta_t() * amp * amp * d * d * bracket_sq;
}

double jsi_uncorrelated_value(const DynParam& dyn, double omega_s, double omega_i,
                              const FilterModel& filter)
{
    const double tp = filter.transmission_power();
    return filter.delta_t() / (2.0 * kPi) * tp * tp * lineshape_value(dyn, omega_s)
           * lineshape_value(dyn, omega_i);
}

double coincidence_rate(const DynParam& dyn, double omega_s, double omega_i,
                        const FilterModel& filter)
{
    return jsi_correlated_value(dyn, omega_s, omega_i, filter)
           + jsi_uncorrelated_value(dyn, omega_s, omega_i, filter);
}

std::vector<double> jsi_axis(const DynParam& dyn, std::size_t points, double half_width_in_gamma)
{
    if (points < 2)
        throw std::invalid_argument("jsi_axis: need at least two points");
    const double half = half_width_in_gamma * dyn.params().gamma_tot();
    std::vector<double> w(points);
    for (std::size_t k = 0; k < points; ++k)
        w[k] = dyn.detuning() - half + 2.0 * half * static_cast<double>(k) / (points - 1);
    return w;
}

namespace
{

double step_at(std::span<const double> axis, std::size_t k)
{
    if (axis.size() < 2)
        return 0.0;
    if (k == 0)
        return axis[1] - axis[0];
    if (k + 1 == axis.size())
        return axis[k] - axis[k - 1];
    return 0.5 * (axis[k + 1] - axis[k - 1]);
}

} // namespace

std::vector<double> jsi_correlated(const DynParam& dyn, std::span<const double> omega_s,
                                   std::span<const double> omega_i, const FilterModel& filter,
                                   std::size_t supersample, unsigned threads)
{
    if (dyn.above_threshold())
        throw std::domain_error("jsi: operating point is at or above threshold");
    if (supersample == 0)
        throw std::invalid_argument("jsi: supersample must be at least 1");
    const std::size_t ni = omega_i.size();
    std::vector<double> out(omega_s.size() * ni, 0.0);
    parallel_for(omega_s.size(), threads, [&](std::size_t s) {
        const double hs = step_at(omega_s, s);
        for (std::size_t i = 0; i < ni; ++i)
        {
            if (supersample == 1)
            {
                out[s * ni + i] = jsi_correlated_value(dyn, omega_s[s], omega_i[i], filter);
                continue;
            }
            const double h = std::min(hs, step_at(omega_i, i));
            double sum = 0.0;
            for (std::size_t k = 0; k < supersample; ++k)
            {
                const double d = h * ((k + 0.5) / supersample - 0.5);
                sum += jsi_correlated_value(dyn, omega_s[s] + d, omega_i[i] + d, filter);
            }
            out[s * ni + i] = sum / supersample;
        }
    });
    return out;
}

std::vector<double> jsi_uncorrelated(const DynParam& dyn, std::span<const double> omega_s,
                                     std::span<const double> omega_i, const FilterModel& filter)
{
    const double tp = filter.transmission_power();
    const double pre = filter.delta_t() / (2.0 * kPi) * tp * tp;
    std::vector<double> us, ui;
    for (double w : omega_s)
        us.push_back(lineshape_value(dyn, w));
    for (double w : omega_i)
        ui.push_back(lineshape_value(dyn, w));
    std::vector<double> out(us.size() * ui.size());
    for (std::size_t s = 0; s < us.size(); ++s)
        for (std::size_t i = 0; i < ui.size(); ++i)
            out[s * ui.size() + i] = pre * us[s] * ui[i];
    return out;
}

JsiGrid jsi_total(const DynParam& dyn, const FilterModel& filter, const JsiOptions& opts)
{
    JsiGrid g;
    g.omega_s = jsi_axis(dyn, opts.n_s, opts.half_width_in_gamma);
    g.omega_i = jsi_axis(dyn, opts.n_i, opts.half_width_in_gamma);
    g.i_corr = jsi_correlated(dyn, g.omega_s, g.omega_i, filter, opts.supersample, opts.threads);
    g.i_uncorr = jsi_uncorrelated(dyn, g.omega_s, g.omega_i, filter);
    g.i_total.resize(g.i_corr.size());
    for (std::size_t k = 0; k < g.i_corr.size(); ++k)
        g.i_total[k] = g.i_corr[k] + g.i_uncorr[k];
    g.n_p = dyn.n_p();
    g.detuning = dyn.detuning();
    g.rho_sq = dyn.rho_sq();
    g.supersample = opts.supersample;
    const double mc = *std::max_element(g.i_corr.begin(), g.i_corr.end());
    const double mu = *std::max_element(g.i_uncorr.begin(), g.i_uncorr.end());
    g.max_ratio = mc > 0.0 ? mu / mc : std::numeric_limits<double>::infinity();
    g.warnings = filter.warnings(dyn.params().gamma_tot());
    return g;
}

std::vector<GridPoint> local_maxima_2d(std::span<const double> values, std::size_t rows,
                                       std::size_t cols)
{
    if (values.size() != rows * cols)
        throw std::invalid_argument("local_maxima_2d: size mismatch");
    std::vector<GridPoint> out;
    for (std::size_t r = 1; r + 1 < rows; ++r)
        for (std::size_t c = 1; c + 1 < cols; ++c)
        {
            const double v = values[r * cols + c];
            if (!(v > 0.0))
                continue;
            bool is_max = true;
            for (int dr = -1; dr <= 1 && is_max; ++dr)
                for (int dc = -1; dc <= 1; ++dc)
                {
                    if (dr == 0 && dc == 0)
                        continue;
                    const double n = values[(r + dr) * cols + (c + dc)];
                    const bool before = dr < 0 || (dr == 0 && dc < 0);
                    if (before ? n >= v : n > v)
                    {
                        is_max = false;
                        break;
                    }
                }
            if (is_max)
                out.push_back({r, c, v});
        }
    return out;
}

double footprint_area(std::span<const double> values, std::span<const double> omega_s,
                      std::span<const double> omega_i)
{
    if (values.size() != omega_s.size() * omega_i.size() || values.empty())
        throw std::invalid_argument("footprint_area: size mismatch");
    const double half = 0.5 * *std::max_element(values.begin(), values.end());
    if (!(half > 0.0))
        return 0.0;
    double area = 0.0;
    const std::size_t ni = omega_i.size();
    for (std::size_t s = 0; s < omega_s.size(); ++s)
        for (std::size_t i = 0; i < ni; ++i)
            if (values[s * ni + i] >= half)
                area += step_at(omega_s, s) * step_at(omega_i, i);
    return area;
}

std::vector<double> scaled_to_unit_max(std::span<const double> values)
{
    std::vector<double> out(values.begin(), values.end());
    if (out.empty())
        return out;
    const double m = *std::max_element(out.begin(), out.end());
    if (m > 0.0)
        for (double& v : out)
            v /= m;
    return out;
}

} // namespace ringpair
