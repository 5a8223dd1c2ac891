#pragma once

#include <stdexcept>
#include <string>

namespace ringpair
{

inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Angular frequency (rad/s) of light with vacuum wavelength `wavelength_m`.
double omega_from_wavelength(double wavelength_m);

/// Additive offsets to the SPM / XPM strengths modelling static thermal drift.
/// Both are normally negative; zero means no thermal drift.
struct ThermalOffsets
{
    double eta = 0.0;  // s^-1
    double zeta = 0.0; // s^-1
};

/// Physical constants of one ring-channel system. All rates are angular
/// (s^-1). Signal, idler and pump share the same couplings, so a single
/// physical damping rate and a single loss rate describe every mode.
class RingParams
{
public:
    /// Uses the uniform-field relations eta = Lambda/2 and zeta = 2 Lambda,
    /// plus the thermal offsets.
    static RingParams from_lambda(double gamma_ext, double gamma_loss, double lambda_fwm,
                                  double omega_p, ThermalOffsets thermal = {});

    /// Fully explicit couplings; eta and zeta are taken as the effective values.
    static RingParams explicit_couplings(double gamma_ext, double gamma_loss, double lambda_fwm,
                                         double eta_spm, double zeta_xpm, double omega_p);

    double gamma_ext() const { return gamma_ext_; }
    double gamma_loss() const { return gamma_loss_; }
    double gamma_tot() const { return gamma_ext_ + gamma_loss_; }
    double lambda_fwm() const { return lambda_fwm_; }
    double eta_spm() const { return eta_spm_; }
    double zeta_xpm() const { return zeta_xpm_; }
    double omega_p() const { return omega_p_; }

private:
    RingParams(double gamma_ext, double gamma_loss, double lambda_fwm, double eta_spm,
               double zeta_xpm, double omega_p);

    double gamma_ext_;
    double gamma_loss_;
    double lambda_fwm_;
    double eta_spm_;
    double zeta_xpm_;
    double omega_p_;
};

/// Continuous-wave pump drive as seen by the ring.
struct PumpDrive
{
    double p_in = 0.0;      // W, channel input power at the coupling point
    double detuning = 0.0;  // rad/s, pump detuning from the ring resonance
    double p_amp_sq = 0.0;  // s^-1, |p|^2 = 2 Gamma P_in / (hbar omega_P)

    static PumpDrive from_power(double p_in, double detuning, const RingParams& params);
    static PumpDrive from_amp_sq(double p_amp_sq, double detuning, const RingParams& params);
};

struct MaterialGeometry
{
    double n_linear = 0.0;      // linear refractive index
    double n2 = 0.0;            // m^2/W
    double ring_length = 0.0;   // m
    double cross_section = 0.0; // m^2
};

struct NonlinearCouplings
{
    double lambda_fwm = 0.0;
    double eta_spm = 0.0;
    double zeta_xpm = 0.0;
};

/// Uniform-field estimate Lambda = hbar omega_P^2 c n2 / (n^2 L A), with the
/// companion eta = Lambda/2, zeta = 2 Lambda. The mode volume is taken as L*A.
NonlinearCouplings estimate_lambda(const MaterialGeometry& mat, double omega_p);

/// Loaded quality factor Q = omega_P / Gamma_tot.
double quality_factor(const RingParams& params);
double quality_factor(double omega_p, double gamma_tot);

/// |p|^2 = 2 Gamma P_in / (hbar omega_P), and its inverse.
double p_amp_sq_from_power(double p_in, const RingParams& params);
double power_from_p_amp_sq(double p_amp_sq, const RingParams& params);

} // namespace ringpair
