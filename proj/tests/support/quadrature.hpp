#pragma once

// Small quadrature toolkit shared by the tests. Kept separate from the
// library so the numerical checks do not reuse the code they are checking.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace testsupport
{

/// 20-point Gauss-Legendre rule on [-1, 1] (nodes, weights), computed once by
/// Newton iteration on the Legendre polynomial.
struct GaussLegendre
{
    static constexpr int kOrder = 20;
    std::array<double, kOrder> x{};
    std::array<double, kOrder> w{};

    GaussLegendre()
    {
        const double pi = 3.14159265358979323846;
        for (int i = 0; i < kOrder; ++i)
        {
            double z = std::cos(pi * (i + 0.75) / (kOrder + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= kOrder; ++k)
                {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kOrder * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16)
                    break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }

    static const GaussLegendre& get()
    {
        static const GaussLegendre rule;
        return rule;
    }
};

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <class F>
auto integrate(F&& f, double a, double b, int panels = 64) -> decltype(f(a))
{
    const GaussLegendre& gl = GaussLegendre::get();
    using R = decltype(f(a));
    R sum{};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
    {
        const double mid = a + (p + 0.5) * h;
        for (int i = 0; i < GaussLegendre::kOrder; ++i)
            sum += gl.w[i] * f(mid + 0.5 * h * gl.x[i]);
    }
    return sum * (0.5 * h);
}

/// Integral over [a, inf) for integrands decaying at least like 1/x^2, via
/// x = a + s/(1-s) on [0, 1).
template <class F>
auto integrate_to_infinity(F&& f, double a, double scale, int panels = 64) -> decltype(f(a))
{
    auto g = [&](double s) {
        const double t = s / (1.0 - s);
        const double jac = scale / ((1.0 - s) * (1.0 - s));
        return f(a + scale * t) * jac;
    };
    return integrate(g, 0.0, 1.0, panels);
}

/// Trapezoid rule on samples with uniform spacing h.
inline double trapezoid(const std::vector<double>& y, double h)
{
    if (y.size() < 2)
        return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t k = 1; k + 1 < y.size(); ++k)
        s += y[k];
    return s * h;
}

inline double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel_err(std::complex<double> a, std::complex<double> b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace testsupport
