"""Two-qubit concurrence: Wootters' general formula and the X-state shortcut."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import SIGMA_Y, check_density

EIG_FLOOR = 16 * np.finfo(float).eps
_YY = np.kron(SIGMA_Y, SIGMA_Y)
# positions that must vanish in an X-shaped 4x4 matrix
_OFF_X = ~np.array(
    [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]], dtype=bool
)
X_TOL = 1e-10


@dataclass(frozen=True)
class XState:
    """Populations ``a..d`` on the diagonal, coherences ``f = rho[0,3]`` and ``e = rho[1,2]``."""

    a: float
    b: float
    c: float
    d: float
    e: complex = 0.0
    f: complex = 0.0

    def to_matrix(self) -> np.ndarray:
        m = np.diag([self.a, self.b, self.c, self.d]).astype(complex)
        m[0, 3], m[3, 0] = self.f, np.conj(self.f)
        m[1, 2], m[2, 1] = self.e, np.conj(self.e)
        return m

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> "XState":
        return cls(
            a=float(rho[0, 0].real),
            b=float(rho[1, 1].real),
            c=float(rho[2, 2].real),
            d=float(rho[3, 3].real),
            e=complex(rho[1, 2]),
            f=complex(rho[0, 3]),
        )


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    With ``rho = W W^dag`` built from the eigendecomposition, the square roots
    of the eigenvalues of ``rho @ rho_tilde`` are the singular values of
    ``W^T (sigma_y x sigma_y) W``. Eigenvalues at round-off level are treated
    as zero so that pure states keep full precision.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 matrix, got {rho.shape}")
    check_density(rho, tol=1e-9)
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    w = np.where(w > EIG_FLOOR * max(w[-1], 1.0), w, 0.0)
    factor = v * np.sqrt(w)
    lam = np.linalg.svd(factor.T @ _YY @ factor, compute_uv=False)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def concurrence_x(x: XState) -> float:
    """Closed-form concurrence ``2 max(0, |f| - sqrt(bc), |e| - sqrt(ad))``."""
    bc = max(x.b * x.c, 0.0)
    ad = max(x.a * x.d, 0.0)
    c = 2.0 * max(0.0, abs(x.f) - np.sqrt(bc), abs(x.e) - np.sqrt(ad))
    return float(min(c, 1.0))


def is_x_state(rho: np.ndarray, tol: float = X_TOL) -> bool:
    rho = np.asarray(rho)
    return rho.shape == (4, 4) and bool(np.max(np.abs(rho[_OFF_X])) < tol)


def pair_concurrence(rho: np.ndarray) -> float:
    """Concurrence using the X-state formula whenever the matrix is X-shaped."""
    if is_x_state(rho):
        return concurrence_x(XState.from_matrix(rho))
    return concurrence(rho)


def concurrence_x_batch(rho: np.ndarray) -> np.ndarray:
    """X-state concurrence of a stack of 4x4 matrices (shape ``(..., 4, 4)``).

    Off-X entries are ignored; callers only pass matrices already known to be
    X-shaped.
    """
    rho = np.asarray(rho)
    pop = np.clip(np.real(np.diagonal(rho, axis1=-2, axis2=-1)), 0.0, None)
    f = np.abs(rho[..., 0, 3])
    e = np.abs(rho[..., 1, 2])
    c = 2.0 * np.maximum(
        0.0,
        np.maximum(f - np.sqrt(pop[..., 1] * pop[..., 2]), e - np.sqrt(pop[..., 0] * pop[..., 3])),
    )
    return np.minimum(c, 1.0)
