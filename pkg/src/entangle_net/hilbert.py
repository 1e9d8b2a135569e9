"""Dense linear algebra on tensor-product Hilbert spaces.

Everything is a plain ``numpy.ndarray`` of dtype ``complex128``. Qubit basis
order is ``|e> = 0``, ``|g> = 1``; Fock basis order is ``|0>, |1>, ...``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

DENSITY_TOL = 1e-12
HERMITIAN_TOL = 1e-10

# single-qubit operators in the (e, g) basis
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |e><g|
SIGMA_MINUS = SIGMA_PLUS.T.copy()  # |g><e|
EXCITED = np.array([1, 0], dtype=complex)
GROUND = np.array([0, 1], dtype=complex)


def kron(a: np.ndarray, b: np.ndarray, *rest: np.ndarray) -> np.ndarray:
    """Kronecker product of two or more matrices (or vectors)."""
    out = np.kron(a, b)
    for m in rest:
        out = np.kron(out, m)
    return out


def annihilation(fock_dim: int) -> np.ndarray:
    """Truncated bosonic lowering operator with ``<n-1|a|n> = sqrt(n)``."""
    if fock_dim < 1:
        raise ValueError(f"fock_dim must be >= 1, got {fock_dim}")
    return np.diag(np.sqrt(np.arange(1, fock_dim, dtype=float)), k=1).astype(complex)


def fock_state(n: int, fock_dim: int) -> np.ndarray:
    if not 0 <= n < fock_dim:
        raise ValueError(f"photon number {n} outside truncation {fock_dim}")
    v = np.zeros(fock_dim, dtype=complex)
    v[n] = 1.0
    return v


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def check_density(rho: np.ndarray, tol: float = DENSITY_TOL) -> None:
    """Raise ``ValueError`` unless ``rho`` is a valid density matrix."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"trace {np.trace(rho).real:.3e} != 1")
    if not is_hermitian(rho, tol):
        raise ValueError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -1e-10:
        raise ValueError("density matrix has negative eigenvalues")


def unitarity_defect(u: np.ndarray) -> float:
    """``max |U^dagger U - I|``."""
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def evolve_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i h t)`` for Hermitian ``h`` via eigendecomposition."""
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise ValueError("evolve_hermitian requires a Hermitian generator")
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def _check_layout(dims: Sequence[int], n: int) -> None:
    if int(np.prod(dims)) != n:
        raise ValueError(f"layout {list(dims)} does not match dimension {n}")


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Reduce ``rho`` over ``dims`` to the subsystems listed in ``keep``.

    The kept subsystems appear in the output in their original order,
    whatever order ``keep`` lists them in.
    """
    dims = [int(d) for d in dims]
    keep = sorted(set(int(k) for k in keep))
    for k in keep:
        if not 0 <= k < len(dims):
            raise ValueError(f"subsystem index {k} out of range for {len(dims)} subsystems")
    _check_layout(dims, rho.shape[0])
    n = len(dims)
    traced = [i for i in range(n) if i not in keep]
    t = np.asarray(rho).reshape(dims + dims)
    # move kept row axes, then kept column axes, then traced pairs to the back
    order = keep + [n + k for k in keep] + traced + [n + i for i in traced]
    t = t.transpose(order)
    dk = int(np.prod([dims[k] for k in keep])) if keep else 1
    dt = int(np.prod([dims[i] for i in traced])) if traced else 1
    t = t.reshape(dk, dk, dt, dt)
    return np.trace(t, axis1=2, axis2=3)


def reduce_pure(psi: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix of the pure state ``psi`` without forming ``|psi><psi|``."""
    dims = [int(d) for d in dims]
    keep = sorted(set(int(k) for k in keep))
    for k in keep:
        if not 0 <= k < len(dims):
            raise ValueError(f"subsystem index {k} out of range for {len(dims)} subsystems")
    _check_layout(dims, psi.shape[0])
    traced = [i for i in range(len(dims)) if i not in keep]
    m = np.asarray(psi).reshape(dims).transpose(keep + traced)
    dk = int(np.prod([dims[k] for k in keep])) if keep else 1
    m = m.reshape(dk, -1)
    return m @ m.conj().T
