import math

import numpy as np
import pytest

import ringpair as rp

G = 1e9
OMEGA = 1.2152e15


def ring(lam=10.0):
    return rp.RingParams.from_lambda(0.5 * G, 0.5 * G, lam, OMEGA)


def test_params_and_drive():
    p = ring()
    assert p.gamma_tot == G
    assert p.eta_spm == 5.0
    assert p.zeta_xpm == 20.0
    d = rp.PumpDrive.from_power(1e-3, 0.0, p)
    assert d.p_amp_sq == pytest.approx(2 * 0.5 * G * 1e-3 / (rp.HBAR * OMEGA), rel=1e-14)
    assert rp.power_from_p_amp_sq(d.p_amp_sq, p) == pytest.approx(1e-3, rel=1e-14)


def test_linear_pump_root():
    p = rp.RingParams.explicit_couplings(0.5 * G, 0.5 * G, 10.0, 0.0, 20.0, OMEGA)
    d = rp.PumpDrive.from_power(0.01, 2 * G, p)
    roots = rp.solve_steady_state(d, p)
    assert len(roots) == 1
    assert roots[0].stable
    assert roots[0].n_p == pytest.approx(d.p_amp_sq / (5 * G * G), rel=1e-12)


def test_bistable_branches():
    p = rp.RingParams.explicit_couplings(0.5 * G, 0.5 * G, 2.0, 1.0, 4.0, OMEGA)
    det = 2.0 * rp.critical_detuning(p)
    lo, hi = rp.stability_window(det, p)
    assert 0 < lo < hi
    assert rp.rho_bar_sq(lo, det, p) == pytest.approx(G * G, rel=1e-9)
    powers = np.logspace(-3, 1, 400)
    counts = [len(rp.solve_steady_state(rp.PumpDrive.from_power(x, det, p), p)) for x in powers]
    assert max(counts) == 3
    assert rp.stability_window(0.5 * rp.critical_detuning(p), p) is None


def test_dynamics_and_flux():
    p = ring()
    n = 5e7
    dyn = rp.DynParam(n, rp.optimal_detuning(n, p), p)
    assert dyn.rho_sq == 0.0
    assert dyn.regime == "zero_rho"
    f = rp.pair_flux(dyn)
    assert f["j_s"] == pytest.approx(2 * 0.5 * G * (10 * n) ** 2 / G**2, rel=1e-12)
    assert rp.g1(dyn, 0.0) == pytest.approx(f["j_s"] / 2, rel=1e-14)
    gd, ga = rp.green_kernels(dyn, 0.0)
    assert gd == 1.0 and ga == 0.0
    assert rp.oracle_flux(dyn) == pytest.approx(0.5 * f["j_s"], rel=1e-12)


def test_lineshape_and_jsi():
    p = ring()
    dyn = rp.DynParam(1e6, 3 * G, p)
    w = np.linspace(-3 * G, 9 * G, 1201)
    nu = rp.lineshape(dyn, w)
    assert isinstance(nu, np.ndarray) and nu.shape == w.shape
    assert np.all(nu > 0)
    f = rp.FilterModel.rect(0.05 * G, 0.05 / G)
    grid = rp.jsi_total(dyn, f, points=41, half_width_gamma=6.0, supersample=10)
    assert grid["i_total"].shape == (41, 41)
    assert np.array_equal(grid["i_total"], grid["i_corr"] + grid["i_uncorr"])
    assert math.isfinite(grid["max_ratio"]) and grid["max_ratio"] > 0
    # subsamples 0.15 Gamma apart miss a 0.05 Gamma band entirely
    coarse = rp.jsi_total(dyn, f, points=41, half_width_gamma=6.0, supersample=2)
    assert not coarse["i_corr"].any()
    assert coarse["max_ratio"] == math.inf


def test_errors_surface_as_exceptions():
    with pytest.raises(Exception):
        rp.FilterModel.rect(-1.0, 0.1)
    p = ring()
    det = 2 * rp.critical_detuning(p)
    lo, hi = rp.stability_window(det, p)
    hot = rp.DynParam(0.5 * (lo + hi), det, p)
    assert hot.above_threshold
    with pytest.raises(Exception):
        rp.oracle_flux(hot)
