#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ringpair/params.hpp"

namespace ringpair
{

enum class Stability
{
    Stable,
    Unstable
};

enum class Branch
{
    Lower,
    Middle,
    Upper,
    Unique
};

const char* to_string(Stability s);
const char* to_string(Branch b);

/// One steady-state intraring pump photon number.
struct PumpSolution
{
    double n_p = 0.0;
    Stability stability = Stability::Stable;
    Branch branch = Branch::Unique;
    PumpDrive drive;
};

/// Photon-number interval (n_minus, n_plus) inside which a root is unstable.
/// Only defined at or above the critical detuning.
struct StabilityWindow
{
    double n_minus = 0.0;
    double n_plus = 0.0;
    bool defined = false;

    bool contains(double n_p) const { return defined && n_p > n_minus && n_p < n_plus; }
};

/// Steady-state residual 4 eta^2 N^3 - 4 eta Delta N^2 + (Gamma^2 + Delta^2) N - |p|^2.
double cubic_eval(double n_p, const PumpDrive& drive, const RingParams& params);

/// All real non-negative roots in ascending order, classified and labelled.
/// A double root (tangency, relative band 1e-8) is reported once.
std::vector<PumpSolution> solve_steady_state(const PumpDrive& drive, const RingParams& params);

/// sqrt(3) * Gamma_tot.
double critical_detuning(const RingParams& params);
double critical_detuning(double gamma_tot);

StabilityWindow stability_window(double detuning, const RingParams& params);
StabilityWindow stability_window(const PumpDrive& drive, const RingParams& params);

/// Eigenvalues f+ and f- of the linearised pump fluctuation matrix.
std::pair<std::complex<double>, std::complex<double>>
stability_eigenvalues(double n_p, double detuning, const RingParams& params);

/// Interval rule: stable unless n_p lies strictly inside the stability window.
Stability classify(double n_p, double detuning, const RingParams& params);

/// Detuning 2 eta N_P that cancels self-phase modulation.
double optimal_detuning(double n_p, const RingParams& params);
/// Photon number |p|^2 / Gamma^2 reached under the optimal detuning.
double optimal_photon_number(double p_amp_sq, const RingParams& params);
/// Drive at power p_in with the detuning set to its optimal value.
PumpDrive optimal_drive(double p_in, const RingParams& params);

/// Input powers bounding the bistable interval at fixed detuning.
struct FoldPoints
{
    double p_amp_sq_low = 0.0;
    double p_amp_sq_high = 0.0;
    double p_in_low = 0.0;
    double p_in_high = 0.0;
    bool defined = false;
};

FoldPoints fold_points(double detuning, const RingParams& params);

struct HysteresisTable
{
    double detuning = 0.0;
    std::vector<double> p_in;
    std::vector<std::vector<PumpSolution>> roots;
    std::vector<double> up_trace;   // photon number followed with increasing power
    std::vector<double> down_trace; // photon number followed with decreasing power
    std::string convention;
};

/// Root sets over an ascending power grid plus branch-following traces. Each
/// trace keeps to the stable root nearest its previous value, so it jumps
/// only when the branch it follows disappears at a fold.
HysteresisTable hysteresis_sweep(std::span<const double> p_in_grid, double detuning,
                                 const RingParams& params);

} // namespace ringpair
