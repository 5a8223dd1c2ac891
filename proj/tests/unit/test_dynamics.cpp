#include "doctest.h"
#include "quadrature.hpp"

#include <cmath>
#include <random>

#include "ringpair/dynamics.hpp"
#include "ringpair/observables.hpp"
#include "ringpair/oracle.hpp"

using namespace ringpair;
using testsupport::rel_err;

namespace
{

constexpr double kG = 1e9;
constexpr double kOmega = 1.2152e15;

RingParams ring(double lambda = 10.0, double gext = 0.6 * kG, double gloss = 0.4 * kG)
{
    return RingParams::from_lambda(gext, gloss, lambda, kOmega);
}

double max_entry_dev(const KernelEval& k, const Eigen::Matrix2cd& e)
{
    return std::max(std::abs(k.g_d - e(0, 0)), std::abs(k.g_a - e(0, 1))) / e.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("rho^2 vanishes at the optimal detuning and at the regime endpoints")
{
    const RingParams p = ring();
    for (double n : {1.0, 3.3e5, 7.77e7, 2e9})
        CHECK(rho_bar_sq(n, optimal_detuning(n, p), p) == 0.0);
    const double det = 2.6e9;
    // N = det/3L and det/L are not exact in binary, so allow rounding relative to (LN)^2
    for (double n : {det / 30.0, det / 10.0})
        CHECK(std::abs(rho_bar_sq(n, det, p)) <= 1e-14 * (10.0 * n) * (10.0 * n));
    CHECK(rho_bar_sq(det / 20.0, det, p) > 0.0);
    CHECK(rho_bar_sq(det / 40.0, det, p) < 0.0);
    CHECK(rho_bar_sq(det / 5.0, det, p) < 0.0);
    CHECK(DynParam::make(det / 20.0, det, p).regime() == RhoRegime::RealRho);
    CHECK(DynParam::make(det / 40.0, det, p).regime() == RhoRegime::ImaginaryRho);
    CHECK(DynParam::make(det / 10.0, det, p).regime() == RhoRegime::ZeroRho);
}

TEST_CASE("rho^2 equals Gamma^2 at the edges of the stability window")
{
    for (double scale : {1.01, 1.3, 2.0, 4.0})
    {
        const RingParams p = ring(10.0, 0.5 * kG, 0.5 * kG);
        const double det = scale * critical_detuning(p);
        const StabilityWindow w = stability_window(det, p);
        REQUIRE(w.defined);
        CHECK(rel_err(rho_bar_sq(w.n_minus, det, p), kG * kG) < 1e-9);
        CHECK(rel_err(rho_bar_sq(w.n_plus, det, p), kG * kG) < 1e-9);
    }
}

TEST_CASE("hyp_pair")
{
    const HypPair z = hyp_pair(0.0, 3e-9);
    CHECK(z.c == 1.0);
    CHECK(z.s == 3e-9);

    const double w = 2.3e9, tau = 1.7e-9;
    const HypPair im = hyp_pair(-w * w, tau);
    CHECK(rel_err(im.c, std::cos(w * tau)) < 1e-14);
    CHECK(rel_err(im.s, std::sin(w * tau) / w) < 1e-14);
    const HypPair re = hyp_pair(w * w, tau);
    CHECK(rel_err(re.c, std::cosh(w * tau)) < 1e-14);
    CHECK(rel_err(re.s, std::sinh(w * tau) / w) < 1e-14);

    // ten-term Taylor series for small arguments
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k)
    {
        const double t = 1e-9 * (1.0 + u(rng));
        const double r2 = 0.5 * u(rng) / (t * t);
        const double z2 = r2 * t * t;
        double c = 0.0, s = 0.0, term_c = 1.0, term_s = 1.0;
        for (int j = 0; j < 10; ++j)
        {
            c += term_c;
            s += term_s;
            term_c *= z2 / ((2.0 * j + 1) * (2.0 * j + 2));
            term_s *= z2 / ((2.0 * j + 2) * (2.0 * j + 3));
        }
        const HypPair h = hyp_pair(r2, t);
        CHECK(std::abs(h.c - c) < 1e-12);
        CHECK(std::abs(h.s - s * t) < 1e-12 * t);
    }
}

TEST_CASE("green kernels: identity at tau = 0, decoupled without FWM")
{
    const DynParam d = DynParam::make(4e7, 1.5e9, ring());
    const KernelEval k0 = green_kernels(d, 0.0);
    CHECK(k0.g_d == cplx(1.0, 0.0));
    CHECK(k0.g_a == cplx(0.0, 0.0));
    CHECK_THROWS_AS(green_kernels(d, -1e-12), std::domain_error);

    const RingParams free = RingParams::explicit_couplings(0.6 * kG, 0.4 * kG, 0.0, 5.0, 20.0, kOmega);
    const DynParam f = DynParam::make(4e7, 1.5e9, free);
    for (double tau : {1e-10, 1e-9, 4e-9})
    {
        const KernelEval k = green_kernels(f, tau);
        CHECK(k.g_a == cplx(0.0, 0.0));
        CHECK(rel_err(std::abs(k.g_d), std::exp(-kG * tau)) < 1e-13);
    }
}

TEST_CASE("green kernels match exp(M tau) and det = exp(-2 Gamma tau)")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k)
    {
        const RingParams p = ring(10.0 * (1 + 9 * u(rng)));
        const double n = u(rng) * 1.2e9 / p.lambda_fwm();
        const double det = (u(rng) * 8 - 3) * kG;
        const DynParam d = DynParam::make(n, det, p);
        const double tau = 6.0 / kG * u(rng);
        const Eigen::Matrix2cd e = expm(build_M(d) * tau);
        CHECK(max_entry_dev(green_kernels(d, tau), e) < 1e-10);
        CHECK(rel_err(e.determinant(), cplx(std::exp(-2 * kG * tau), 0.0)) < 1e-10);
    }
}

TEST_CASE("green kernels are continuous through rho^2 = 0")
{
    // at N = 1 a one-ulp detuning change moves rho^2 by ~1e-14 s^-2
    const RingParams p = ring();
    const double n = 1.0;
    const double det0 = optimal_detuning(n, p);
    const DynParam zero = DynParam::make(n, det0, p);
    REQUIRE(zero.rho_sq() == 0.0);
    REQUIRE(zero.regime() == RhoRegime::ZeroRho);
    for (double tau : {1e-10, 2e-9})
    {
        const KernelEval k0 = green_kernels(zero, tau);
        for (double dir : {1.0, -1.0})
        {
            double det = det0;
            for (int step = 0; step < 4; ++step)
                det = std::nextafter(det, dir * 1e300);
            const DynParam d = DynParam::make(n, det, p);
            CHECK(d.rho_sq() != 0.0);
            CHECK(std::abs(d.rho_sq()) < 1e-12);
            const KernelEval k = green_kernels(d, tau);
            CHECK(std::abs(k.g_d - k0.g_d) < 1e-10);
            CHECK(std::abs(k.g_a - k0.g_a) < 1e-10);
        }
    }
    for (double tau : {1e-10, 5e-9})
    {
        const HypPair h0 = hyp_pair(0.0, tau);
        for (double r2 : {1e-20, -1e-20})
        {
            const HypPair h = hyp_pair(r2, tau);
            CHECK(std::abs(h.c - h0.c) < 1e-10);
            CHECK(std::abs(h.s - h0.s) < 1e-10 * tau);
        }
    }
}

TEST_CASE("kernels decay below threshold")
{
    for (double det : {-2e9, 0.0, 2.6e9})
    {
        const DynParam d = DynParam::make(6e7, det, ring());
        REQUIRE_FALSE(d.above_threshold());
        const KernelEval k = green_kernels(d, 200.0 / kG);
        CHECK(std::abs(k.g_d) < 1e-20);
        CHECK(std::abs(k.g_a) < 1e-20);
    }
}

TEST_CASE("|q_SI|^2 integrates to the flux closed form")
{
    CHECK(response_qSI_magnitude_sq(DynParam::make(3e7, 1e9, ring()), 0.0) == 0.0);
    const RingParams p = ring();
    // imaginary, zero and real rho; the last one close to threshold
    const double n = 8e7;
    for (double det : {-1e9, optimal_detuning(n, p), p.zeta_xpm() * n, 2.0 * p.zeta_xpm() * n - 0.3e9})
    {
        const DynParam d = DynParam::make(n, det, p);
        REQUIRE_FALSE(d.above_threshold());
        const double gap = kG - std::sqrt(std::max(0.0, d.rho_sq()));
        auto f = [&](double t) { return response_qSI_magnitude_sq(d, t); };
        const double scale = 1.0 / std::max(gap, 1e7);
        const double integral = testsupport::integrate(f, 0.0, 40 * scale, 400)
                                + testsupport::integrate_to_infinity(f, 40 * scale, scale, 100);
        const double j_s = pair_flux(d).j_s;
        CHECK(rel_err(2.0 * kG / p.gamma_ext() * integral, j_s) < 1e-8);
    }
}

TEST_CASE("pair amplitude agrees with the regression-theorem oracle")
{
    const RingParams p = ring(30.0);
    for (double det : {-2e9, 0.0, 1.2e9, 3e9})
    {
        const DynParam d = DynParam::make(2e7, det, p);
        for (double t1 : {0.0, 0.3e-9, -1.1e-9})
            for (double t2 : {0.0, 2e-9})
                CHECK(rel_err(pair_amplitude(d, t1, t2), oracle_pair_amplitude(d, t1, t2)) < 1e-10);
        CHECK(rel_err(pair_amplitude(d, 0.4e-9, 1e-9), pair_amplitude(d, 1e-9, 0.4e-9)) < 1e-14);
    }
}

TEST_CASE("response functions carry the channel couplings")
{
    const RingParams p = ring();
    const DynParam d = DynParam::make(5e7, 1e9, p);
    const double tau = 0.8e-9;
    const KernelEval k = green_kernels(d, tau);
    CHECK(rel_err(std::norm(q_si(d, tau)), response_qSI_magnitude_sq(d, tau)) < 1e-13);
    CHECK(rel_err(std::abs(q_ss_regular(d, tau)), 2 * p.gamma_ext() * std::abs(k.g_d)) < 1e-14);
    const double ratio = std::sqrt(p.gamma_loss() / p.gamma_ext());
    CHECK(rel_err(p_ss(d, tau), ratio * q_ss_regular(d, tau)) < 1e-14);
    CHECK(rel_err(p_si(d, tau), ratio * q_si(d, tau)) < 1e-14);
}

TEST_CASE("pump phase: |beta|^2 = N and the driven steady state holds")
{
    const RingParams p = ring();
    const double n = 3e8, det = 1.1e9;
    const cplx b = pump_amplitude(n, det, p);
    CHECK(rel_err(std::norm(b), n) < 1e-14);
    // (Gamma + i (2 eta N - Delta)) beta = -i p with p real and positive
    const cplx lhs = cplx(kG, 2 * p.eta_spm() * n - det) * b;
    CHECK(std::abs(lhs.real()) < 1e-12 * std::abs(lhs));
    CHECK(lhs.imag() < 0.0);
}
