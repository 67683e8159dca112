import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracpulse import (DiracParams, SpinorField, charge_density, continuity_residual,
                        current_density, div_current, free_propagate, make_gaussian_packet,
                        make_grid, make_plane_wave)
from diracpulse.dirac import dispersion
from diracpulse.oracle import SIGMA1
from diracpulse.pulse import apply_gauge_phase
from diracpulse.verification import random_real_field, random_spinor


def test_charge_integrates_to_q(packet):
    p = DiracParams(1.0, -2.5)
    assert packet.grid.integrate(charge_density(packet, p)) == pytest.approx(-2.5, abs=1e-12)


def test_plane_wave_uniform_density_and_current():
    p = DiracParams(1.0, 1.5)
    g = make_grid(64, 20.0)
    n = 3
    psi = make_plane_wave(g, n, "+", p)
    k = 2 * np.pi * n / g.length
    assert np.allclose(charge_density(psi, p), p.charge / g.length, atol=1e-15)
    # analytic group velocity k/E
    J_expected = p.charge * k / (dispersion(k, 1.0) * g.length)
    assert np.allclose(current_density(psi, p), J_expected, atol=1e-15)
    # cross-check with the dense sigma1 quadratic form, site by site
    vec = psi.flatten().reshape(-1, 2)
    dense_J = p.charge * np.einsum("ja,ab,jb->j", vec.conj(), SIGMA1, vec).real
    assert np.allclose(current_density(psi, p), dense_J, atol=1e-15)


def test_zero_current_cases(params):
    g = make_grid(32, 8.0)
    psi = SpinorField(g, np.exp(1j * g.x), np.zeros(32))
    assert np.all(current_density(psi, params) == 0)
    rest = make_plane_wave(g, 0, "+", params)
    assert np.max(np.abs(current_density(rest, params))) < 1e-16


def test_disjoint_packets_additive(params):
    g = make_grid(512, 128.0)
    a = make_gaussian_packet(g, 0.5, 3.0, 32.0, "+", params)
    b = make_gaussian_packet(g, -0.5, 3.0, 96.0, "+", params)
    rho_sum = charge_density(a + b, params)
    far = (np.abs(g.x - 32) < 10) | (np.abs(g.x - 96) < 10)
    assert np.allclose(rho_sum[far], (charge_density(a, params) + charge_density(b, params))[far],
                       rtol=1e-8, atol=1e-14)


@pytest.mark.parametrize("n", [0, 1, 5, -9])
def test_plane_wave_divergence_vanishes(n, params):
    g = make_grid(128, 30.0)
    assert np.max(np.abs(div_current(make_plane_wave(g, n, "+", params), params))) < 1e-12


def test_packet_divergence_nonzero_integrates_to_zero(packet, params):
    div = div_current(packet, params)
    assert np.max(np.abs(div)) > 1e-3
    assert abs(packet.grid.integrate(div)) < 1e-12


def test_mirror_symmetric_packet_divergence_antisymmetric(params):
    g = make_grid(256, 64.0)
    c = g.length / 2
    env = np.exp(-((g.x - c) ** 2) / 16.0)
    psi = SpinorField(g, env, 0.6 * env)  # both components even about the centre
    div = div_current(psi, params)
    mirrored = np.roll(div[::-1], 1)  # x -> L - x on the periodic grid
    assert np.max(np.abs(div + mirrored)) < 1e-10
    assert np.max(np.abs(div)) > 1e-3


def test_continuity_residual_small_at_512(params):
    g = make_grid(512, 64.0)
    psi = free_propagate(make_gaussian_packet(g, 1.0, 4.0, 32.0, "+", params), 0.7, params)
    res = continuity_residual(psi, params)
    assert np.max(np.abs(res)) <= 1e-8 * np.max(np.abs(div_current(psi, params)))


def test_continuity_residual_refinement(params):
    # narrow packet built by hand (below the packet constructor's resolution guard);
    # the residual is pure aliasing and falls faster than any power of the spacing
    errs = []
    sizes = (32, 48, 64, 96)
    for n in sizes:
        g = make_grid(n, 16.0)
        env = np.exp(-((g.x - 8.0) ** 2) / (2 * 0.6 ** 2))
        psi = SpinorField(g, env * np.exp(2j * g.x), 0.5 * env)
        errs.append(np.max(np.abs(continuity_residual(psi, params))))
    assert errs[0] > 1e-2
    assert errs[-1] < 1e-9
    # local power-law exponent keeps growing under refinement
    exps = [np.log(e0 / e1) / np.log(n1 / n0)
            for e0, e1, n0, n1 in zip(errs, errs[1:], sizes, sizes[1:])]
    assert all(b > a for a, b in zip(exps, exps[1:]))


def test_continuity_trivial_cases(params):
    g = make_grid(32, 8.0)
    assert np.max(np.abs(continuity_residual(make_plane_wave(g, 2, "-", params), params))) < 1e-12
    assert np.all(continuity_residual(SpinorField.zeros(g), params) == 0)


def test_charge_conserved_under_free_evolution(packet, params):
    q0 = packet.grid.integrate(charge_density(packet, params))
    q1 = packet.grid.integrate(charge_density(free_propagate(packet, 5.0, params), params))
    assert abs(q1 - q0) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_densities_gauge_invariant(seed):
    p = DiracParams(1.0, 0.8)
    g = make_grid(128, 12.0)
    rng = np.random.default_rng(seed)
    psi = random_spinor(g, rng)
    chi = 3.0 * random_real_field(g, rng, 6)
    out = apply_gauge_phase(psi, chi, p)
    assert np.max(np.abs(charge_density(out, p) - charge_density(psi, p))) < 1e-13 * np.max(charge_density(psi, p))
    assert np.max(np.abs(current_density(out, p) - current_density(psi, p))) < 1e-13 * np.max(charge_density(psi, p))
