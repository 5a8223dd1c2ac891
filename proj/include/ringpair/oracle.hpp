#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ringpair/dynamics.hpp"

namespace ringpair
{

/// Second moments of the (b_S, b_I^dagger) pair at one time.
struct MomentState
{
    double n_s = 0.0; // <b_S^dagger b_S>
    double n_i = 0.0; // <b_I^dagger b_I>
    cplx m;           // <b_S b_I>
    double time = 0.0;

    /// <v^dagger_j v_k> for v = (b_S, b_I^dagger).
    Eigen::Matrix2cd matrix() const;
};

/// Linearised coupling matrix of (b_S, b_I^dagger) about the classical pump.
Eigen::Matrix2cd build_M(const DynParam& dyn);

/// exp(A) by scaling and squaring with a Taylor core.
Eigen::Matrix2cd expm(const Eigen::Matrix2cd& a);

/// Real 4x4 generator L and source c of d/dt [n_s, n_i, Re m, Im m] = L x + c,
/// with vacuum inputs on every channel.
struct MomentFlow
{
    Eigen::Matrix4d generator;
    Eigen::Vector4d source;
};

MomentFlow moment_flow(const DynParam& dyn);

/// Largest real part of the generator's eigenvalues.
double moment_growth_rate(const DynParam& dyn);

/// Stationary moments from a dense 4x4 solve. Throws when the flow has no
/// stable fixed point.
MomentState steady_moments(const DynParam& dyn);

/// Fixed-step RK4 from vacuum. Returns the initial state, then every
/// `record_every`-th step, then the final state.
std::vector<MomentState> integrate_moments(const DynParam& dyn, double t_end, double dt,
                                           std::size_t record_every = 1);

/// 2 Gamma <b_S^dagger b_S> of the stationary state.
double oracle_flux(const DynParam& dyn);

/// g1 and the outgoing pair amplitude built from stationary moments and
/// exp(M tau) via the regression theorem.
cplx oracle_g1(const DynParam& dyn, double tau);
cplx oracle_pair_amplitude(const DynParam& dyn, double t1, double t2);

struct ValidationSample
{
    double n_p = 0.0;
    double detuning = 0.0;
    double gamma_ext = 0.0;
    double gamma_loss = 0.0;
    double lambda_fwm = 0.0;
    double rho_sq = 0.0;
    RhoRegime regime = RhoRegime::ZeroRho;
    double j_s_closed = 0.0;
    double j_s_oracle = 0.0;
    double flux_rel_dev = 0.0;
    double g1_rel_dev = 0.0;     // g1(0) closed form vs oracle
    double kernel_abs_dev = 0.0; // green_kernels vs expm, relative to the largest entry
    bool pass = false;
};

struct ValidationOptions
{
    std::size_t samples = 100;
    std::uint64_t seed = 20240521;
    double flux_tol = 1e-8;
    double g1_tol = 1e-8;
    double kernel_tol = 1e-10;
    double gamma_tot = 1e9;
    double omega_p = 1.2152e15;
    unsigned threads = 1;
};

struct ValidationReport
{
    ValidationOptions options;
    std::vector<ValidationSample> samples;
    double max_flux_dev = 0.0;
    double median_flux_dev = 0.0;
    double max_g1_dev = 0.0;
    double max_kernel_dev = 0.0;
    std::size_t failures = 0;
    bool pass = false;
};

/// Seeded random below-threshold operating points, a third in each rho regime.
std::vector<ValidationSample> validation_points(const ValidationOptions& opts);

ValidationReport run_validation(const ValidationOptions& opts = {});

} // namespace ringpair
