#include "ringpair/params.hpp"

#include <cmath>

namespace ringpair
{

namespace
{
void require(bool ok, const char* what)
{
    if (!ok)
        throw std::domain_error(what);
}
} // namespace

double omega_from_wavelength(double wavelength_m)
{
    require(wavelength_m > 0.0, "wavelength must be positive");
    return 2.0 * kPi * kSpeedOfLight / wavelength_m;
}

RingParams::RingParams(double gamma_ext, double gamma_loss, double lambda_fwm, double eta_spm,
                       double zeta_xpm, double omega_p)
    : gamma_ext_(gamma_ext), gamma_loss_(gamma_loss), lambda_fwm_(lambda_fwm), eta_spm_(eta_spm),
      zeta_xpm_(zeta_xpm), omega_p_(omega_p)
{
    require(std::isfinite(gamma_ext) && gamma_ext >= 0.0, "gamma_ext must be >= 0");
    require(std::isfinite(gamma_loss) && gamma_loss >= 0.0, "gamma_loss must be >= 0");
    require(gamma_ext + gamma_loss > 0.0, "total linewidth must be > 0");
    require(std::isfinite(lambda_fwm) && lambda_fwm >= 0.0, "lambda_fwm must be >= 0");
    require(std::isfinite(eta_spm) && std::isfinite(zeta_xpm), "eta/zeta must be finite");
    require(std::isfinite(omega_p) && omega_p > 0.0, "omega_p must be > 0");
}

RingParams RingParams::from_lambda(double gamma_ext, double gamma_loss, double lambda_fwm,
                                   double omega_p, ThermalOffsets thermal)
{
    return RingParams(gamma_ext, gamma_loss, lambda_fwm, 0.5 * lambda_fwm + thermal.eta,
                      2.0 * lambda_fwm + thermal.zeta, omega_p);
}

RingParams RingParams::explicit_couplings(double gamma_ext, double gamma_loss, double lambda_fwm,
                                          double eta_spm, double zeta_xpm, double omega_p)
{
    return RingParams(gamma_ext, gamma_loss, lambda_fwm, eta_spm, zeta_xpm, omega_p);
}

PumpDrive PumpDrive::from_power(double p_in, double detuning, const RingParams& params)
{
    require(std::isfinite(detuning), "detuning must be finite");
    return PumpDrive{p_in, detuning, p_amp_sq_from_power(p_in, params)};
}

PumpDrive PumpDrive::from_amp_sq(double p_amp_sq, double detuning, const RingParams& params)
{
    require(std::isfinite(detuning), "detuning must be finite");
    return PumpDrive{power_from_p_amp_sq(p_amp_sq, params), detuning, p_amp_sq};
}

NonlinearCouplings estimate_lambda(const MaterialGeometry& mat, double omega_p)
{
    require(mat.n_linear > 0.0, "linear index must be positive");
    require(mat.ring_length > 0.0, "ring length must be positive");
    require(mat.cross_section > 0.0, "cross section must be positive");
    require(mat.n2 >= 0.0, "n2 must be non-negative");
    require(omega_p > 0.0, "omega_p must be positive");

    const double volume = mat.ring_length * mat.cross_section;
    const double lambda = kHbar * omega_p * omega_p * kSpeedOfLight * mat.n2
                          / (mat.n_linear * mat.n_linear * volume);
    return {lambda, 0.5 * lambda, 2.0 * lambda};
}

double quality_factor(double omega_p, double gamma_tot)
{
    require(gamma_tot > 0.0, "total linewidth must be > 0");
    return omega_p / gamma_tot;
}

double quality_factor(const RingParams& params)
{
    return quality_factor(params.omega_p(), params.gamma_tot());
}

double p_amp_sq_from_power(double p_in, const RingParams& params)
{
    require(std::isfinite(p_in) && p_in >= 0.0, "input power must be >= 0");
    return 2.0 * params.gamma_ext() * p_in / (kHbar * params.omega_p());
}

double power_from_p_amp_sq(double p_amp_sq, const RingParams& params)
{
    require(std::isfinite(p_amp_sq) && p_amp_sq >= 0.0, "|p|^2 must be >= 0");
    if (p_amp_sq == 0.0)
        return 0.0;
    require(params.gamma_ext() > 0.0, "no channel coupling: power undefined");
    return p_amp_sq * kHbar * params.omega_p() / (2.0 * params.gamma_ext());
}

} // namespace ringpair
