#include "ringpair/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ringpair/observables.hpp"
#include "ringpair/parallel.hpp"

namespace ringpair
{

Eigen::Matrix2cd MomentState::matrix() const
{
    Eigen::Matrix2cd c;
    c << n_s, std::conj(m), m, n_i + 1.0;
    return c;
}

Eigen::Matrix2cd build_M(const DynParam& dyn)
{
    const cplx i(0.0, 1.0);
    const double g = dyn.params().gamma_tot();
    const double kappa = dyn.kappa();
    const cplx b = dyn.params().lambda_fwm() * dyn.beta_sq();
    Eigen::Matrix2cd m;
    m << -g - i * kappa, -i * b, i * std::conj(b), -g + i * kappa;
    return m;
}

Eigen::Matrix2cd expm(const Eigen::Matrix2cd& a)
{
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.25)
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const Eigen::Matrix2cd b = a / std::ldexp(1.0, squarings);
    Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd sum = term;
    for (int k = 1; k <= 20; ++k)
    {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k)
        sum = sum * sum;
    return sum;
}

MomentFlow moment_flow(const DynParam& dyn)
{
    const double g = dyn.params().gamma_tot();
    const double kappa = dyn.kappa();
    const cplx b = dyn.params().lambda_fwm() * dyn.beta_sq();
    const double br = b.real(), bi = b.imag();
    MomentFlow f;
    // x = [n_s, n_i, Re m, Im m]
    // dn/dt  = -2 G n + 2 Re(i conj(b) m)
    // dm/dt  = -2 (G + i kappa) m - i b (n_s + n_i + 1)
    f.generator << -2 * g, 0, 2 * bi, -2 * br,
                   0, -2 * g, 2 * bi, -2 * br,
                   bi, bi, -2 * g, 2 * kappa,
                   -br, -br, -2 * kappa, -2 * g;
    f.source << 0, 0, bi, -br;
    return f;
}

double moment_growth_rate(const DynParam& dyn)
{
    const Eigen::EigenSolver<Eigen::Matrix4d> es(moment_flow(dyn).generator, false);
    return es.eigenvalues().real().maxCoeff();
}

namespace
{

MomentState from_vector(const Eigen::Vector4d& x, double t)
{
    return MomentState{x(0), x(1), cplx(x(2), x(3)), t};
}

} // namespace

MomentState steady_moments(const DynParam& dyn)
{
    if (!(moment_growth_rate(dyn) < 0.0))
        throw std::domain_error("steady_moments: no stationary state at or above threshold");
    const MomentFlow f = moment_flow(dyn);
    const Eigen::Vector4d x = f.generator.partialPivLu().solve(-f.source);
    return from_vector(x, std::numeric_limits<double>::infinity());
}

std::vector<MomentState> integrate_moments(const DynParam& dyn, double t_end, double dt,
                                           std::size_t record_every)
{
    const double g = dyn.params().gamma_tot();
    const double rate = std::max(g, std::sqrt(std::abs(dyn.rho_sq())));
    if (!(dt > 0.0) || dt > 0.01 / rate * (1.0 + 1e-12))
        throw std::domain_error("integrate_moments: step must satisfy 0 < dt <= 0.01/max(Gamma, |rho|)");
    if (!(t_end >= 0.0))
        throw std::domain_error("integrate_moments: t_end must be non-negative");
    if (record_every == 0)
        record_every = 1;
    const MomentFlow f = moment_flow(dyn);
    auto rhs = [&](const Eigen::Vector4d& x) -> Eigen::Vector4d { return f.generator * x + f.source; };

    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = steps ? t_end / steps : 0.0;
    Eigen::Vector4d x = Eigen::Vector4d::Zero();
    std::vector<MomentState> traj{from_vector(x, 0.0)};
    for (std::size_t k = 1; k <= steps; ++k)
    {
        const Eigen::Vector4d k1 = rhs(x);
        const Eigen::Vector4d k2 = rhs(x + 0.5 * h * k1);
        const Eigen::Vector4d k3 = rhs(x + 0.5 * h * k2);
        const Eigen::Vector4d k4 = rhs(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (k % record_every == 0 || k == steps)
            traj.push_back(from_vector(x, k * h));
    }
    return traj;
}

double oracle_flux(const DynParam& dyn)
{
    return 2.0 * dyn.params().gamma_ext() * steady_moments(dyn).n_s;
}

cplx oracle_g1(const DynParam& dyn, double tau)
{
    if (tau < 0.0)
        return std::conj(oracle_g1(dyn, -tau));
    const MomentState st = steady_moments(dyn);
    const Eigen::Matrix2cd g = expm(build_M(dyn) * tau);
    // <b_S^dagger(t) b_S(t + tau)> = G11 n_s + G12 <b_S^dagger b_I^dagger>
    const cplx corr = g(0, 0) * st.n_s + g(0, 1) * std::conj(st.m);
    return 2.0 * dyn.params().gamma_ext() * std::polar(1.0, -dyn.detuning() * tau) * corr;
}

cplx oracle_pair_amplitude(const DynParam& dyn, double t1, double t2)
{
    const MomentState st = steady_moments(dyn);
    const double tau = std::abs(t1 - t2);
    const Eigen::Matrix2cd g = expm(build_M(dyn) * tau);
    // the later operator is propagated; signal and idler enter symmetrically
    const double n_other = t1 >= t2 ? st.n_i : st.n_s;
    const cplx corr = g(0, 0) * st.m + g(0, 1) * n_other;
    return -2.0 * dyn.params().gamma_ext() * std::polar(1.0, -dyn.detuning() * (t1 + t2)) * corr;
}

namespace
{

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

RingParams sample_params(const ValidationSample& s, const ValidationOptions& opts)
{
    return RingParams::from_lambda(s.gamma_ext, s.gamma_loss, s.lambda_fwm, opts.omega_p);
}

} // namespace

std::vector<ValidationSample> validation_points(const ValidationOptions& opts)
{
    std::mt19937_64 rng(opts.seed);
    std::vector<ValidationSample> out;
    const double g = opts.gamma_tot;
    for (std::size_t k = 0; k < opts.samples; ++k)
    {
        ValidationSample s;
        const double ext_frac = 0.2 + 0.8 * uniform01(rng);
        s.gamma_ext = ext_frac * g;
        s.gamma_loss = g - s.gamma_ext;
        s.lambda_fwm = 10.0 * (1.0 + 99.0 * uniform01(rng));
        // Lambda N below Gamma keeps every regime under threshold
        const double ln = g * (0.02 + 0.93 * uniform01(rng));
        s.n_p = ln / s.lambda_fwm;
        const double u = uniform01(rng);
        double kappa = 0.0;
        switch (k % 3)
        {
        case 0: // imaginary rho
            kappa = ln * (1.0 + 0.05 + 4.0 * u) * (uniform01(rng) < 0.5 ? -1.0 : 1.0);
            break;
        case 1: // rho = 0
            kappa = ln;
            break;
        default: // real rho
            kappa = ln * (2.0 * u - 1.0) * 0.95;
            break;
        }
        const RingParams p = sample_params(s, opts);
        s.detuning = p.zeta_xpm() * s.n_p - kappa;
        const DynParam dyn = DynParam::make(s.n_p, s.detuning, p);
        s.rho_sq = dyn.rho_sq();
        s.regime = dyn.regime();
        out.push_back(s);
    }
    return out;
}

ValidationReport run_validation(const ValidationOptions& opts)
{
    ValidationReport rep;
    rep.options = opts;
    rep.samples = validation_points(opts);
    std::mt19937_64 tau_rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<double> taus;
    for (std::size_t k = 0; k < rep.samples.size(); ++k)
        taus.push_back(5.0 / opts.gamma_tot * uniform01(tau_rng));

    parallel_for(rep.samples.size(), opts.threads, [&](std::size_t k) {
        ValidationSample& s = rep.samples[k];
        const RingParams p = sample_params(s, opts);
        const DynParam dyn = DynParam::make(s.n_p, s.detuning, p);
        s.j_s_closed = pair_flux(dyn).j_s;
        s.j_s_oracle = oracle_flux(dyn);
        s.flux_rel_dev = std::abs(s.j_s_closed - s.j_s_oracle) / std::abs(s.j_s_oracle);
        const cplx g1c = g1(dyn, 0.0);
        const cplx g1o = oracle_g1(dyn, 0.0);
        s.g1_rel_dev = std::abs(g1c - g1o) / std::abs(g1o);
        const KernelEval ke = green_kernels(dyn, taus[k]);
        const Eigen::Matrix2cd e = expm(build_M(dyn) * taus[k]);
        const double scale = e.cwiseAbs().maxCoeff();
        s.kernel_abs_dev = std::max(std::abs(ke.g_d - e(0, 0)), std::abs(ke.g_a - e(0, 1))) / scale;
        s.pass = s.flux_rel_dev <= opts.flux_tol && s.g1_rel_dev <= opts.g1_tol
                 && s.kernel_abs_dev <= opts.kernel_tol;
    });

    std::vector<double> devs;
    for (const ValidationSample& s : rep.samples)
    {
        devs.push_back(s.flux_rel_dev);
        rep.max_flux_dev = std::max(rep.max_flux_dev, s.flux_rel_dev);
        rep.max_g1_dev = std::max(rep.max_g1_dev, s.g1_rel_dev);
        rep.max_kernel_dev = std::max(rep.max_kernel_dev, s.kernel_abs_dev);
        if (!s.pass)
            ++rep.failures;
    }
    if (!devs.empty())
    {
        std::sort(devs.begin(), devs.end());
        const std::size_t n = devs.size();
        rep.median_flux_dev = n % 2 ? devs[n / 2] : 0.5 * (devs[n / 2 - 1] + devs[n / 2]);
    }
    rep.pass = rep.failures == 0;
    return rep;
}

} // namespace ringpair
