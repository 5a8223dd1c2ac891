#pragma once

#include <complex>

#include "ringpair/params.hpp"
#include "ringpair/pump_steady.hpp"

namespace ringpair
{

using cplx = std::complex<double>;

enum class RhoRegime
{
    ImaginaryRho,
    ZeroRho,
    RealRho
};

const char* to_string(RhoRegime r);

/// c = cosh(rho tau), s = sinh(rho tau)/rho, written in terms of rho^2 so the
/// imaginary branch (cos, sin/|rho|) and rho = 0 (1, tau) need no special case
/// at the call site.
struct HypPair
{
    double c = 1.0;
    double s = 0.0;
};

HypPair hyp_pair(double rho_sq, double tau);

/// e^{-gamma tau} * hyp_pair(rho_sq, tau), without overflow when rho tau is large.
HypPair damped_hyp_pair(double rho_sq, double gamma, double tau);

/// rho^2 = Lambda^2 N^2 - (zeta N - Delta)^2, signed. Evaluated as a product of
/// the two linear factors so it vanishes exactly where they do.
double rho_bar_sq(double n_p, double detuning, const RingParams& params);

/// Everything the signal/idler dynamics needs at one operating point.
class DynParam
{
public:
    static DynParam make(double n_p, double detuning, const RingParams& params);
    static DynParam make(const PumpSolution& pump, const RingParams& params);

    double n_p() const { return n_p_; }
    double detuning() const { return detuning_; }
    const RingParams& params() const { return params_; }

    double rho_sq() const { return rho_sq_; }
    /// zeta N - Delta, the effective signal/idler detuning.
    double kappa() const { return kappa_; }
    /// Steady-state intraring pump amplitude; |beta|^2 = N.
    cplx beta() const { return beta_; }
    cplx beta_sq() const { return beta_ * beta_; }
    RhoRegime regime() const { return regime_; }
    /// Gamma^2 - rho^2 <= 0: no steady state for the signal and idler.
    bool above_threshold() const { return threshold_gap_ <= 0.0; }
    /// Gamma^2 - rho^2.
    double threshold_gap() const { return threshold_gap_; }

private:
    DynParam(double n_p, double detuning, const RingParams& params);

    double n_p_;
    double detuning_;
    RingParams params_;
    double rho_sq_;
    double kappa_;
    cplx beta_;
    RhoRegime regime_;
    double threshold_gap_;
};

/// Pump amplitude in the frame rotating at the pump frequency.
cplx pump_amplitude(double n_p, double detuning, const RingParams& params);

struct KernelEval
{
    cplx g_d;
    cplx g_a;
    double tau = 0.0;
};

/// Entries of exp(M tau) for the (b_S, b_I^dagger) system: g_d is the diagonal
/// (signal to signal) element, g_a the anomalous (idler^dagger to signal) one.
KernelEval green_kernels(const DynParam& dyn, double tau);

/// |q_SI(tau)|^2 = 4 Gamma^2 Lambda^2 N^2 e^{-2 Gamma_tot tau} s^2.
double response_qSI_magnitude_sq(const DynParam& dyn, double dtau);

/// Regular part (tau > 0) of the channel-to-channel responses. The delta term
/// of q_SS is left to the caller. Phases are in the frame of the bare signal
/// resonance.
cplx q_ss_regular(const DynParam& dyn, double tau);
cplx q_si(const DynParam& dyn, double tau);
/// Responses to the loss (phantom) channel inputs.
cplx p_ss(const DynParam& dyn, double tau);
cplx p_si(const DynParam& dyn, double tau);

/// Two-time pair amplitude A(t1, t2) = v <psi_S>(t1) psi_I>(t2)> of the
/// outgoing fields.
cplx pair_amplitude(const DynParam& dyn, double t1, double t2);

} // namespace ringpair
