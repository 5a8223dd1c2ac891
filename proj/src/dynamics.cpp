#include "ringpair/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace ringpair
{

namespace
{

constexpr double kRegimeTol = 1e-12;

} // namespace

const char* to_string(RhoRegime r)
{
    switch (r)
    {
    case RhoRegime::ImaginaryRho:
        return "imaginary_rho";
    case RhoRegime::ZeroRho:
        return "zero_rho";
    case RhoRegime::RealRho:
        return "real_rho";
    }
    return "unknown";
}

HypPair hyp_pair(double rho_sq, double tau)
{
    const double z = rho_sq * tau * tau;
    HypPair h;
    if (std::abs(z) < 1.0)
    {
        // cosh and sinh/rho as even power series in rho tau
        double tc = 1.0, ts = 1.0;
        double c = 1.0, s = 1.0;
        for (int k = 1; k < 30; ++k)
        {
            tc *= z / ((2.0 * k - 1.0) * (2.0 * k));
            ts *= z / ((2.0 * k) * (2.0 * k + 1.0));
            c += tc;
            s += ts;
            if (std::abs(tc) < 1e-18 && std::abs(ts) < 1e-18)
                break;
        }
        h.c = c;
        h.s = s * tau;
    }
    else if (rho_sq > 0.0)
    {
        const double r = std::sqrt(rho_sq);
        h.c = std::cosh(r * tau);
        h.s = std::sinh(r * tau) / r;
    }
    else
    {
        const double w = std::sqrt(-rho_sq);
        h.c = std::cos(w * tau);
        h.s = std::sin(w * tau) / w;
    }
    return h;
}

HypPair damped_hyp_pair(double rho_sq, double gamma, double tau)
{
    if (rho_sq > 0.0)
    {
        const double r = std::sqrt(rho_sq);
        if (r * tau > 20.0)
        {
            const double grow = std::exp((r - gamma) * tau);
            const double tail = std::exp(-2.0 * r * tau);
            return {0.5 * grow * (1.0 + tail), 0.5 * grow * (1.0 - tail) / r};
        }
    }
    const HypPair h = hyp_pair(rho_sq, tau);
    const double damp = std::exp(-gamma * tau);
    return {damp * h.c, damp * h.s};
}

double rho_bar_sq(double n_p, double detuning, const RingParams& params)
{
    const double ln = params.lambda_fwm() * n_p;
    const double kappa = params.zeta_xpm() * n_p - detuning;
    return (ln - kappa) * (ln + kappa);
}

cplx pump_amplitude(double n_p, double detuning, const RingParams& params)
{
    if (n_p <= 0.0)
        return {0.0, 0.0};
    const double g = params.gamma_tot();
    const double shift = 2.0 * params.eta_spm() * n_p - detuning;
    // steady state of the driven pump: beta = -i p / (Gamma + i shift), with p
    // real and fixed by |beta|^2 = N
    const double p = std::sqrt(n_p * (g * g + shift * shift));
    return cplx(0.0, -p) / cplx(g, shift);
}

DynParam::DynParam(double n_p, double detuning, const RingParams& params)
    : n_p_(n_p), detuning_(detuning), params_(params)
{
    if (!(n_p >= 0.0))
        throw std::domain_error("DynParam: pump photon number must be non-negative");
    rho_sq_ = rho_bar_sq(n_p, detuning, params);
    kappa_ = params.zeta_xpm() * n_p - detuning;
    beta_ = pump_amplitude(n_p, detuning, params);
    const double ln = params.lambda_fwm() * n_p;
    const double tol = kRegimeTol * (ln * ln + kappa_ * kappa_);
    if (rho_sq_ > tol)
        regime_ = RhoRegime::RealRho;
    else if (rho_sq_ < -tol)
        regime_ = RhoRegime::ImaginaryRho;
    else
        regime_ = RhoRegime::ZeroRho;
    const double g = params.gamma_tot();
    threshold_gap_ = g * g - rho_sq_;
}

DynParam DynParam::make(double n_p, double detuning, const RingParams& params)
{
    return DynParam(n_p, detuning, params);
}

DynParam DynParam::make(const PumpSolution& pump, const RingParams& params)
{
    return DynParam(pump.n_p, pump.drive.detuning, params);
}

KernelEval green_kernels(const DynParam& dyn, double tau)
{
    if (!(tau >= 0.0))
        throw std::domain_error("green_kernels: tau must be non-negative");
    const HypPair h = damped_hyp_pair(dyn.rho_sq(), dyn.params().gamma_tot(), tau);
    const cplx i(0.0, 1.0);
    KernelEval k;
    k.tau = tau;
    k.g_d = h.c - i * dyn.kappa() * h.s;
    k.g_a = -i * dyn.params().lambda_fwm() * dyn.beta_sq() * h.s;
    return k;
}

double response_qSI_magnitude_sq(const DynParam& dyn, double dtau)
{
    if (!(dtau >= 0.0))
        throw std::domain_error("response_qSI_magnitude_sq: dtau must be non-negative");
    const HypPair h = damped_hyp_pair(dyn.rho_sq(), dyn.params().gamma_tot(), dtau);
    const double amp = 2.0 * dyn.params().gamma_ext() * dyn.params().lambda_fwm() * dyn.n_p();
    return amp * amp * h.s * h.s;
}

namespace
{

cplx carrier(const DynParam& dyn, double tau)
{
    return std::polar(1.0, -dyn.detuning() * tau);
}

} // namespace

cplx q_ss_regular(const DynParam& dyn, double tau)
{
    const KernelEval k = green_kernels(dyn, tau);
    return -2.0 * dyn.params().gamma_ext() * carrier(dyn, tau) * k.g_d;
}

cplx q_si(const DynParam& dyn, double tau)
{
    const KernelEval k = green_kernels(dyn, tau);
    return 2.0 * dyn.params().gamma_ext() * carrier(dyn, tau) * k.g_a;
}

cplx p_ss(const DynParam& dyn, double tau)
{
    const KernelEval k = green_kernels(dyn, tau);
    const double coup = 2.0 * std::sqrt(dyn.params().gamma_ext() * dyn.params().gamma_loss());
    return -coup * carrier(dyn, tau) * k.g_d;
}

cplx p_si(const DynParam& dyn, double tau)
{
    const KernelEval k = green_kernels(dyn, tau);
    const double coup = 2.0 * std::sqrt(dyn.params().gamma_ext() * dyn.params().gamma_loss());
    return coup * carrier(dyn, tau) * k.g_a;
}

cplx pair_amplitude(const DynParam& dyn, double t1, double t2)
{
    if (dyn.above_threshold())
        throw std::domain_error("pair_amplitude: operating point is above threshold");
    const double g = dyn.params().gamma_tot();
    const double kappa = dyn.kappa();
    const double rho_sq = dyn.rho_sq();
    const HypPair h = damped_hyp_pair(rho_sq, g, std::abs(t1 - t2));
    const cplx i(0.0, 1.0);
    const cplx bracket = cplx(g, -kappa) * h.c + cplx(rho_sq, -kappa * g) * h.s;
    const cplx pre = i * dyn.params().gamma_ext() * dyn.params().lambda_fwm() * dyn.beta_sq()
                     / dyn.threshold_gap();
    return pre * std::polar(1.0, -dyn.detuning() * (t1 + t2)) * bracket;
}

} // namespace ringpair
