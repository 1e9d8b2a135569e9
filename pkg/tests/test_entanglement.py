import numpy as np
import pytest

from entangle_net.double_jc import pair_state
from entangle_net.entanglement import (
    XState,
    concurrence,
    concurrence_x,
    concurrence_x_batch,
    is_x_state,
    pair_concurrence,
)


def pure(psi):
    return np.outer(psi, psi.conj())


def test_bell_state_is_maximal():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert concurrence(pure(bell)) == pytest.approx(1.0, abs=1e-14)


def test_maximally_mixed_is_separable():
    assert concurrence(np.eye(4) / 4) == 0.0


def test_product_state():
    assert concurrence(pure(np.kron([1, 0], [0.6, 0.8]))) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("family", ["phi", "psi"])
def test_partial_bell_at_thirty_degrees(family):
    rho = pure(pair_state(family, np.radians(30)))
    assert concurrence(rho) == pytest.approx(np.sqrt(3) / 2, abs=1e-14)
    assert pair_concurrence(rho) == pytest.approx(np.sqrt(3) / 2, abs=1e-14)


def test_x_state_examples():
    # Werner-like mixture p |Phi+><Phi+| + (1 - p) I/4 has C = max(0, (3p - 1)/2)
    for p in (0.2, 0.5, 0.8):
        x = XState(a=(1 + p) / 4, b=(1 - p) / 4, c=(1 - p) / 4, d=(1 + p) / 4, f=p / 2)
        assert concurrence_x(x) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-14)
        assert concurrence(x.to_matrix()) == pytest.approx(concurrence_x(x), abs=1e-12)
    x = XState(a=0.0, b=0.5, c=0.5, d=0.0, e=0.2)
    assert concurrence_x(x) == pytest.approx(0.4)


def test_x_state_roundtrip_and_detection():
    x = XState(0.1, 0.2, 0.3, 0.4, e=0.05j, f=0.1)
    m = x.to_matrix()
    assert is_x_state(m)
    assert XState.from_matrix(m) == x
    m[0, 1] = m[1, 0] = 0.01
    assert not is_x_state(m)


def test_local_phase_invariance(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = m @ m.conj().T
    rho /= np.trace(rho)
    phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=2))
    u = np.kron(np.diag([1, phases[0]]), np.diag([1, phases[1]]))
    assert concurrence(u @ rho @ u.conj().T) == pytest.approx(concurrence(rho), abs=1e-12)


def test_batch_matches_scalar():
    xs = [XState(0.1, 0.2, 0.3, 0.4, f=0.15), XState(0.25, 0.25, 0.25, 0.25, e=0.2)]
    batch = concurrence_x_batch(np.array([x.to_matrix() for x in xs]))
    assert np.allclose(batch, [concurrence_x(x) for x in xs])


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        concurrence(np.eye(2) / 2)
