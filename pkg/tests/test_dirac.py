import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracpulse import (DiracParams, SpinorField, energy, energy_split, free_propagate,
                        h0_apply, make_gaussian_packet, make_grid, make_plane_wave,
                        project_branch)
from diracpulse.dirac import NumericalCorruptionError, dispersion
from diracpulse.oracle import dense_h0, dense_propagator
from diracpulse.verification import random_spinor


@pytest.mark.parametrize("mass,charge", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (np.nan, 1.0)])
def test_params_rejected(mass, charge):
    with pytest.raises(ValueError):
        DiracParams(mass, charge)


def test_spinor_rejects_bad_input():
    g = make_grid(8, 1.0)
    with pytest.raises(ValueError):
        SpinorField(g, np.zeros(8), np.zeros(7))
    with pytest.raises(ValueError):
        SpinorField(g, np.full(8, np.nan), np.zeros(8))


@pytest.mark.parametrize("n", [0, 1, 3, -5])
def test_plane_wave_is_eigenstate_dense_oracle(n, params):
    g = make_grid(32, 16.0)
    h = dense_h0(g, params)
    w, Q = np.linalg.eigh(h.matrix)
    k = 2 * np.pi * n / g.length
    E = np.sqrt(k * k + 1.0)
    # oracle: the dense spectrum contains +E(k) and the plane wave lies in that eigenspace
    assert np.min(np.abs(w - E)) < 1e-12
    psi = make_plane_wave(g, n, "+", params)
    vec = psi.flatten()
    sel = np.abs(w - E) < 1e-9
    proj = Q[:, sel] @ (Q[:, sel].conj().T @ vec)
    assert np.linalg.norm(proj - vec) < 1e-12 * np.linalg.norm(vec)
    out = h0_apply(psi, params)
    assert (out - psi * E).norm() < 1e-12


def test_zero_momentum_spinor_up_has_eigenvalue_m(params):
    g = make_grid(16, 4.0)
    psi = SpinorField(g, np.ones(16), np.zeros(16))
    out = h0_apply(psi, params)
    assert np.allclose(out.upper, params.mass) and np.allclose(out.lower, 0, atol=1e-15)


def test_h0_linear(rng, params):
    g = make_grid(64, 10.0)
    a, b = 0.3 - 1.2j, 2.0 + 0.5j
    psi, phi = random_spinor(g, rng), random_spinor(g, rng)
    lhs = h0_apply(a * psi + b * phi, params)
    rhs = a * h0_apply(psi, params) + b * h0_apply(phi, params)
    assert (lhs - rhs).norm() / lhs.norm() < 1e-13


def test_free_propagate_identity_and_inverse(rng, params):
    g = make_grid(64, 10.0)
    psi = random_spinor(g, rng)
    assert (free_propagate(psi, 0.0, params) - psi).norm() == 0.0
    back = free_propagate(free_propagate(psi, 3.7, params), -3.7, params)
    assert (back - psi).norm() / psi.norm() < 1e-12


@pytest.mark.parametrize("n", [0, 2, -7])
def test_plane_wave_phase_dense_oracle(n, params):
    g = make_grid(32, 16.0)
    t = 1.9
    psi = make_plane_wave(g, n, "+", params)
    U = dense_propagator(dense_h0(g, params), t)
    oracle = U.apply(psi)
    out = free_propagate(psi, t, params)
    E = dispersion(2 * np.pi * n / g.length, 1.0)
    assert (out - oracle).norm() < 1e-12
    assert (out - psi * np.exp(-1j * E * t)).norm() < 1e-12


def test_energy_plane_waves_at_rest(params):
    g = make_grid(16, 8.0)
    assert energy(make_plane_wave(g, 0, "+", params), params) == pytest.approx(1.0, abs=1e-14)
    assert energy(make_plane_wave(g, 0, "-", params), params) == pytest.approx(-1.0, abs=1e-14)


def test_gaussian_energy_matches_dispersion_sum_and_dense_form(params):
    g = make_grid(64, 32.0)
    psi = make_gaussian_packet(g, 0.8, 3.0, 16.0, "+", params)
    # momentum-space sum sum_k |g(k)|^2 E(k)
    gk = np.exp(-((g.momenta - 0.8) * 3.0) ** 2)
    weights = gk ** 2 / np.sum(gk ** 2)
    expected = np.sum(weights * dispersion(g.momenta, 1.0))
    vec = psi.flatten()
    dense = (g.spacing * np.vdot(vec, dense_h0(g, params).matrix @ vec)).real
    assert energy(psi, params) == pytest.approx(expected, rel=1e-11)
    assert energy(psi, params) == pytest.approx(dense, rel=1e-11)


def test_energy_flags_corruption(params, monkeypatch):
    g = make_grid(16, 8.0)
    psi = make_plane_wave(g, 1, "+", params)
    from diracpulse import dirac
    monkeypatch.setattr(dirac, "_energy_complex", lambda psi, p: (1.0 + 1e-6j, 1.0))
    with pytest.raises(NumericalCorruptionError):
        energy(psi, params)


def test_energy_split_branch_pure(packet, params):
    rep = energy_split(packet, params)
    assert abs(rep.negative_branch) < 1e-12
    assert rep.total == pytest.approx(rep.positive_branch + rep.negative_branch, rel=1e-11)


def test_energy_split_equal_superposition(params):
    g = make_grid(16, 8.0)
    psi = (make_plane_wave(g, 0, "+", params) + make_plane_wave(g, 0, "-", params)) * (1 / np.sqrt(2))
    rep = energy_split(psi, params)
    assert rep.positive_branch == pytest.approx(0.5, abs=1e-13)
    assert rep.negative_branch == pytest.approx(-0.5, abs=1e-13)
    assert abs(rep.total) < 1e-13


def test_make_plane_wave_norm_and_tail(params):
    g = make_grid(32, 10.0)
    for n in (-3, 0, 4):
        psi = make_plane_wave(g, n, "-", params)
        assert psi.norm() == pytest.approx(1.0, abs=1e-14)
        assert psi.tail_fraction() < 1e-28
    with pytest.raises(ValueError):
        make_plane_wave(g, 16, "+", params)


def test_gaussian_normalized_and_branch_pure(params):
    g = make_grid(256, 40.0)
    for branch in ("+", "-"):
        psi = make_gaussian_packet(g, -1.3, 2.5, 12.0, branch, params)
        assert psi.norm() == pytest.approx(1.0, abs=1e-12)
        rep = energy_split(psi, params)
        wrong = rep.negative_branch if branch == "+" else rep.positive_branch
        assert abs(wrong) < 1e-12


def test_gaussian_resolution_guards(params):
    g = make_grid(64, 64.0)
    with pytest.raises(ValueError):
        make_gaussian_packet(g, 0.0, 3.9, 32.0, "+", params)
    with pytest.raises(ValueError):
        make_gaussian_packet(g, 2.2, 4.0, 32.0, "+", params)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=30, deadline=None)
@given(seeds, st.floats(min_value=-50, max_value=50))
def test_conservation_under_free_evolution(seed, t):
    p = DiracParams(0.7, -1.0)
    g = make_grid(128, 20.0)
    psi = random_spinor(g, np.random.default_rng(seed), bandwidth=30)
    out = free_propagate(psi, t, p)
    assert abs(out.norm() - psi.norm()) < 1e-13 * psi.norm()
    e0 = energy(psi, p)
    assert abs(energy(out, p) - e0) <= 1e-12 * abs(e0)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_hermiticity_and_projectors(seed):
    p = DiracParams(1.3, 1.0)
    g = make_grid(64, 9.0)
    rng = np.random.default_rng(seed)
    psi, phi = random_spinor(g, rng), random_spinor(g, rng)
    lhs = phi.inner(h0_apply(psi, p))
    rhs = np.conj(psi.inner(h0_apply(phi, p)))
    assert abs(lhs - rhs) <= 1e-12 * abs(lhs)
    plus, minus = project_branch(psi, "+", p), project_branch(psi, "-", p)
    assert (plus + minus - psi).norm() < 1e-13 * psi.norm()
    assert (project_branch(plus, "+", p) - plus).norm() < 1e-13 * psi.norm()
    assert (project_branch(minus, "-", p) - minus).norm() < 1e-13 * psi.norm()
