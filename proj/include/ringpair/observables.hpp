#pragma once

#include <span>
#include <string>
#include <vector>

#include "ringpair/dynamics.hpp"

namespace ringpair
{

struct FluxResult
{
    double j_s = 0.0;    // photons/s; NaN above threshold
    double e_ring = 0.0; // J_S / (2 Gamma N_P); NaN above threshold
    bool above_threshold = false;
    DynParam dyn;
};

/// J_S = 2 Gamma Lambda^2 N^2 / (Gamma_tot^2 - rho^2) and the matching E_ring.
FluxResult pair_flux(const DynParam& dyn);
FluxResult pair_flux(const DynParam& dyn, const RingParams& params);

/// First-order coherence v <psi_S>^dagger(t) psi_S>(t + tau)> of the outgoing
/// signal. Throws above threshold.
cplx g1(const DynParam& dyn, double tau);

/// nu_S at signal offset omega (rad/s from the signal resonance), with the
/// symmetric 1/sqrt(2 pi) Fourier convention. Throws above threshold.
double lineshape_value(const DynParam& dyn, double omega);

struct SpectrumGrid
{
    std::vector<double> omega_s;
    std::vector<double> values;
    double n_p = 0.0;
    double detuning = 0.0;
    double rho_sq = 0.0;
    RhoRegime regime = RhoRegime::ZeroRho;
    std::string convention;
};

/// Delta +- 10 Gamma_tot, 2001 points.
std::vector<double> default_spectrum_grid(const DynParam& dyn, double half_width_in_gamma = 10.0,
                                          std::size_t points = 2001);

SpectrumGrid lineshape(const DynParam& dyn, std::span<const double> omega_s_grid);
SpectrumGrid lineshape(const DynParam& dyn);

struct Peak
{
    double position = 0.0;
    double value = 0.0;
};

/// Interior 3-point local maxima, refined by a parabola through the three
/// samples. Works on any ascending grid.
std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y);
std::vector<Peak> find_peaks(const SpectrumGrid& grid);

/// Distance between the outermost half-maximum crossings (linear
/// interpolation). NaN if the half maximum is not reached inside the grid.
double spectrum_fwhm(const SpectrumGrid& grid);

/// Smallest spacing between adjacent peaks, in units of Gamma_tot; 0 if
/// fewer than two peaks.
double min_peak_separation(const std::vector<Peak>& peaks, double gamma_tot);

struct DetuningPolicy
{
    enum class Kind
    {
        Fixed,
        Optimal
    };
    Kind kind = Kind::Fixed;
    double detuning = 0.0;

    static DetuningPolicy fixed(double detuning) { return {Kind::Fixed, detuning}; }
    static DetuningPolicy optimal() { return {Kind::Optimal, 0.0}; }
};

struct FluxRow
{
    double p_in = 0.0;
    double detuning = 0.0;
    double n_p = 0.0;
    Branch branch = Branch::Unique;
    double j_s = 0.0;
    double e_ring = 0.0;
    RhoRegime regime = RhoRegime::ZeroRho;
    bool above_threshold = false;
};

/// One row per stable pump root per power. Above-threshold rows carry NaN
/// flux and the flag set.
std::vector<FluxRow> flux_vs_power_sweep(std::span<const double> p_in_grid, DetuningPolicy policy,
                                         const RingParams& params, unsigned threads = 1);

} // namespace ringpair
