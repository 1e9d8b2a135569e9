import numpy as np
import pytest

from entangle_net import tavis
from entangle_net.double_jc import ModelParams, PreparedState
from entangle_net.entanglement import concurrence, concurrence_x_batch
from entangle_net.hilbert import unitarity_defect


@pytest.mark.parametrize("photons", [0, 1, 2])
def test_unitary_closed_form_matches_exponential(photons):
    d = tavis.fock_dim_for(photons)
    for omega in (0.0, 0.8):
        p = ModelParams(omega=omega, fock_dim=d)
        for tau in (0.0, 0.9, 7.2):
            u = tavis.tavis_unitary(p, tau)
            assert unitarity_defect(u) < 1e-12
            assert np.allclose(u, tavis.tavis_unitary_bruteforce(p, tau), atol=1e-11)


@pytest.mark.parametrize("photons", [0, 1, 2])
def test_coefficients_at_zero_time(photons):
    c = tavis.coefficient_set(0.0, photons)
    for name in ("a", "b", "m", "n", "q", "r"):
        assert getattr(c, name) == pytest.approx(1.0)
    for name in ("c", "d", "f", "h", "k", "l", "p"):
        assert getattr(c, name) == pytest.approx(0.0)


@pytest.mark.parametrize("photons", [0, 1, 2])
def test_coefficient_identities(photons):
    taus = np.linspace(0.0, 9.0, 73)
    c = tavis.coefficient_set(taus, photons)
    w = 2 * taus * np.sqrt(photons + 0.5)
    assert np.allclose(c.h - c.b, -np.cos(w), atol=1e-14)
    assert np.allclose(c.m - c.f, np.cos(w), atol=1e-14)


def test_single_photon_free_coefficients():
    taus = np.linspace(0.0, 5.0, 11)
    c = tavis.coefficient_set(taus, 0)
    assert np.allclose(c.k, 0.0) and np.allclose(c.n, 1.0)
    assert np.allclose(c.l, -np.sin(taus / np.sqrt(2)) ** 2)
    assert np.allclose(c.r, np.cos(taus / np.sqrt(2)) ** 2)
    assert tavis.coefficient_set(np.pi / np.sqrt(6), 0).a == pytest.approx(1 / 9, abs=1e-14)


@pytest.mark.parametrize("photons", [0, 1, 2])
def test_v_operator_algebra(photons):
    for tau in (0.3, 2.2, 11.0):
        v = tavis.v_tensor(tau, photons, omega_ratio=0.6)
        for i, j, k, l in np.ndindex(2, 2, 2, 2):  # noqa: E741
            assert np.allclose(v[i, j, k, l].conj().T, v[l, k, j, i], atol=1e-13)
        for i, l in np.ndindex(2, 2):  # noqa: E741
            assert np.allclose(v[i, 0, 0, l] + v[i, 1, 1, l], (i == l) * np.eye(2), atol=1e-13)


def test_v_tensor_matches_unitary_extraction():
    for photons in (0, 1, 2):
        d = tavis.fock_dim_for(photons)
        u = tavis.tavis_unitary_bruteforce(ModelParams(omega=1.3, fock_dim=d), 4.1)
        num = tavis.v_tensor_from_unitary(u, photons, d)
        assert np.allclose(tavis.v_tensor(4.1, photons, 1.3), num, atol=1e-11)


def test_v_operator_indices_are_one_based():
    assert np.allclose(tavis.v_operator(1, 1, 1, 1, 0.5, 0), tavis.v_tensor(0.5, 0)[0, 0, 0, 0])
    with pytest.raises(ValueError):
        tavis.v_operator(0, 1, 1, 1, 0.5, 0)


@pytest.mark.parametrize("family", ["phi", "psi"])
@pytest.mark.parametrize("photons", [0, 1, 2])
def test_pair_states_match_bruteforce(family, photons):
    st = PreparedState(family, 0.47, photons)
    for tau in (0.0, 1.7, 13.4):
        bf = tavis.reduced_pairs_bruteforce(st, tau)
        assert np.allclose(tavis.rho_pair_same(st, tau), bf["A1A2"], atol=1e-12)
        assert np.allclose(tavis.rho_pair_cross(st, tau), bf["A1B2"], atol=1e-12)
        assert np.allclose(tavis.rho_same_elements(st, [tau])[0], bf["A1A2"], atol=1e-12)
        # B1 A2 carries the same matrix as A1 B2 by the A <-> B symmetry
        assert np.allclose(bf["B1A2"], bf["A1B2"], atol=1e-12)


def test_explicit_cross_elements_phi_only():
    st = PreparedState("phi", 0.8, 1)
    bf = tavis.reduced_pairs_bruteforce(st, 2.9)
    assert np.allclose(tavis.rho_cross_elements(st, [2.9])[0], bf["A1B2"], atol=1e-12)
    with pytest.raises(ValueError):
        tavis.rho_cross_elements(PreparedState("psi", 0.8), [2.9])


def test_phi_dominance_of_cross_pair():
    taus = np.linspace(0.0, 20.0, 401)
    for photons in (0, 1):
        for deg in (20, 50, 70):
            st = PreparedState("phi", np.radians(deg), photons)
            same = tavis.rho_pair_same_batch(st, taus)
            cross = tavis.rho_pair_cross_batch(st, taus)
            assert np.all(concurrence_x_batch(cross) <= concurrence_x_batch(same) + 1e-10)
            gap = same[:, 1, 1] - cross[:, 1, 1]
            expected = -0.25 * np.cos(2 * taus * np.sqrt(photons + 0.5)) ** 2 * np.sin(2 * st.alpha) ** 2
            assert np.allclose(gap, expected, atol=1e-12)


@pytest.mark.parametrize("omega", [0.0, 3.0])
def test_total_excitation_conserved(omega):
    st = PreparedState("psi", 1.1, 2)
    n0 = tavis.total_excitation(st, 0.0, omega)
    for tau in (0.5, 4.0, 17.0):
        assert tavis.total_excitation(st, tau, omega) == pytest.approx(n0, abs=1e-10)


@pytest.mark.parametrize("family", ["phi", "psi"])
def test_concurrence_independent_of_atomic_frequency(family):
    taus = np.linspace(0.0, 10.0, 201)
    st = PreparedState(family, 0.7, 1)
    for pair in ("same", "cross"):
        c0 = tavis.concurrence_curve(st, taus, pair, 0.0)
        c1 = tavis.concurrence_curve(st, taus, pair, 2.3)
        assert np.allclose(c0, c1, atol=1e-12)


def test_batch_concurrence_agrees_with_general_routine():
    st = PreparedState("phi", 0.9, 0)
    taus = np.linspace(0.0, 8.0, 17)
    rhos = tavis.rho_pair_same_batch(st, taus)
    fast = tavis.concurrence_curve(st, taus)
    assert np.allclose(fast, [concurrence(r) for r in rhos], atol=1e-10)


def test_psi_curves_distinct_for_pair_types():
    st = PreparedState("psi", np.radians(45))
    taus = np.linspace(0.0, 20.0, 401)
    assert not np.allclose(tavis.concurrence_curve(st, taus, "same"), tavis.concurrence_curve(st, taus, "cross"))


def test_mixed_families_need_bruteforce():
    st = PreparedState("phi", 0.4, family_b="psi")
    with pytest.raises(ValueError):
        tavis.rho_pair_same(st, 1.0)
    bf = tavis.reduced_pairs_bruteforce(st, 1.0)
    assert np.trace(bf["A1A2"]) == pytest.approx(1.0)


def test_minimum_entanglement_and_sweep():
    e, tau = tavis.minimum_entanglement(PreparedState("phi", np.radians(65.5)))
    assert 0.24 < e < 0.2427 and 0.0 <= tau <= 20.0
    res = tavis.min_entanglement_sweep("phi", np.radians([20.0, 65.5]), tau_steps=801, workers=2)
    assert res.e_min[0] == 0.0 and res.e_min[1] > 0.24
    assert np.allclose(res.alpha_deg, [20.0, 65.5])
    with pytest.raises(ValueError):
        tavis.min_entanglement_sweep("phi", [])


def test_sweep_independent_of_worker_count():
    grid = np.radians(np.arange(30.0, 70.0, 5.0))
    one = tavis.min_entanglement_sweep("phi", grid, tau_steps=801, workers=1)
    many = tavis.min_entanglement_sweep("phi", grid, tau_steps=801, workers=4)
    assert np.array_equal(one.e_min, many.e_min)


def test_threshold_none_when_nothing_survives():
    grid = np.radians([10.0, 20.0])
    assert tavis.preservation_threshold("psi", grid, np.zeros(2)) is None
