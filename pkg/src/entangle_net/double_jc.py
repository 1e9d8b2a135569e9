"""Two atoms, each in its own single-mode cavity (the double JC model).

Time is dimensionless throughout: ``tau = lambda * t``. The mode frequency
only enters as ``omega / lambda`` and never changes a concurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import hilbert
from .entanglement import pair_concurrence
from .hilbert import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z

Family = Literal["phi", "psi"]
FAMILIES: tuple[str, ...] = ("phi", "psi")


@dataclass(frozen=True)
class PreparedState:
    """Initial preparation of the atom pairs and the cavities.

    ``family`` picks ``cos(a)|ee> + sin(a)|gg>`` (``"phi"``) or
    ``cos(a)|eg> + sin(a)|ge>`` (``"psi"``) for the pair ``A1 A2``;
    ``family_b`` does the same for ``B1 B2`` and defaults to ``family``.
    Both cavities start in the Fock state ``|photons>``.
    """

    family: Family
    alpha: float
    photons: int = 0
    family_b: Family | None = None

    def __post_init__(self) -> None:
        for f in (self.family, self.pair_b_family):
            if f not in FAMILIES:
                raise ValueError(f"family must be 'phi' or 'psi', got {f!r}")
        if not -1e-12 <= self.alpha <= np.pi / 2 + 1e-12:
            raise ValueError(f"alpha must lie in [0, pi/2], got {self.alpha}")
        if self.photons < 0:
            raise ValueError(f"photons must be >= 0, got {self.photons}")

    @property
    def pair_b_family(self) -> str:
        return self.family if self.family_b is None else self.family_b

    @property
    def symmetric(self) -> bool:
        return self.pair_b_family == self.family


def amplitudes(alpha: float) -> np.ndarray:
    """``(s_1, s_2) = (cos alpha, sin alpha)``."""
    return np.array([np.cos(alpha), np.sin(alpha)])


def partner_map(family: str) -> tuple[int, int]:
    """Index of the second qubit's basis state paired with the first qubit's state ``k``."""
    return (0, 1) if family == "phi" else (1, 0)


def pair_state(family: str, alpha: float) -> np.ndarray:
    """Two-qubit ket of the requested family (length 4, basis ee, eg, ge, gg)."""
    s = amplitudes(alpha)
    pi = partner_map(family)
    psi = np.zeros(4, dtype=complex)
    for k in range(2):
        psi[2 * k + pi[k]] = s[k]
    return psi


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``lam``, mode frequency ``omega`` and Fock truncation.

    Only the zero-detuning case is modelled, so ``detuning`` must stay 0.
    """

    lam: float = 1.0
    omega: float = 0.0
    fock_dim: int = 3
    detuning: float = 0.0

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.detuning != 0:
            raise ValueError("only zero detuning is supported")
        if self.fock_dim < 1:
            raise ValueError(f"fock_dim must be >= 1, got {self.fock_dim}")

    @property
    def omega_ratio(self) -> float:
        return self.omega / self.lam


def fock_dim_for(photons: int) -> int:
    """Exact truncation for one atom per cavity: photons never exceed ``N + 1``."""
    return photons + 2


def _sin_over_root(x: np.ndarray, tau: float) -> np.ndarray:
    """``sin(tau sqrt(x)) / sqrt(x)`` with its limit ``tau`` at ``x = 0``."""
    r = np.sqrt(x)
    out = np.full_like(r, float(tau))
    nz = r > 0
    out[nz] = np.sin(tau * r[nz]) / r[nz]
    return out


def number_operator(fock_dim: int) -> np.ndarray:
    """Excitation number ``a^dag a + sigma_z / 2`` on qubit x Fock."""
    a = hilbert.annihilation(fock_dim)
    return hilbert.kron(np.eye(2), a.conj().T @ a) + 0.5 * hilbert.kron(SIGMA_Z, np.eye(fock_dim))


def jc_hamiltonian(params: ModelParams) -> np.ndarray:
    """Resonant JC Hamiltonian (hbar = 1) on qubit x Fock."""
    d = params.fock_dim
    a = hilbert.annihilation(d)
    coupling = hilbert.kron(SIGMA_PLUS, a) + hilbert.kron(SIGMA_MINUS, a.conj().T)
    return params.omega * number_operator(d) + params.lam * coupling


def jc_unitary(params: ModelParams, tau: float) -> np.ndarray:
    """Closed-form JC propagator at ``tau = lambda t`` on qubit x Fock.

    The functions of ``a a^dag`` and ``a^dag a`` are applied to their
    (diagonal) spectra, so the result is exact on the truncated space.
    """
    d = params.fock_dim
    if d < 2:
        raise ValueError("jc_unitary needs fock_dim >= 2")
    a = hilbert.annihilation(d)
    ad = a.conj().T
    n_aad = np.real(np.diag(a @ ad))
    n_ada = np.real(np.diag(ad @ a))
    u = np.zeros((2 * d, 2 * d), dtype=complex)
    u[:d, :d] = np.diag(np.cos(tau * np.sqrt(n_aad)))
    u[:d, d:] = -1j * np.diag(_sin_over_root(n_aad, tau)) @ a
    u[d:, :d] = -1j * np.diag(_sin_over_root(n_ada, tau)) @ ad
    u[d:, d:] = np.diag(np.cos(tau * np.sqrt(n_ada)))
    phase = np.exp(-1j * params.omega_ratio * tau * np.real(np.diag(number_operator(d))))
    return phase[:, None] * u


def initial_state(state: PreparedState, fock_dim: int) -> np.ndarray:
    """Ket on ``A1 F1 A2 F2``."""
    if not state.symmetric:
        raise ValueError("the double JC model has a single atom pair")
    pair = pair_state(state.family, state.alpha).reshape(2, 2)
    fock = hilbert.fock_state(state.photons, fock_dim)
    psi = np.einsum("ab,f,g->afbg", pair, fock, fock)
    return psi.reshape(-1)


def double_jc_reduced(
    state: PreparedState, params: ModelParams | None = None, tau: float = 0.0
) -> np.ndarray:
    """Atomic ``A1 A2`` density matrix from the closed-form propagators."""
    params = params or ModelParams(fock_dim=fock_dim_for(state.photons))
    d = params.fock_dim
    u = jc_unitary(params, tau)
    psi = initial_state(state, d).reshape(2 * d, 2 * d)
    psi = u @ psi @ u.T  # U1 (x) U2 acting on the two cavity blocks
    return hilbert.reduce_pure(psi.reshape(-1), [2, d, 2, d], keep=[0, 2])


def double_jc_reduced_bruteforce(
    state: PreparedState, params: ModelParams | None = None, tau: float = 0.0
) -> np.ndarray:
    """Same quantity via kron, exponentiation of H and a density-matrix partial trace."""
    params = params or ModelParams(fock_dim=fock_dim_for(state.photons))
    d = params.fock_dim
    u1 = hilbert.evolve_hermitian(jc_hamiltonian(params), tau / params.lam)
    u = hilbert.kron(u1, u1)
    psi = u @ initial_state(state, d)
    rho = np.outer(psi, psi.conj())
    return hilbert.partial_trace(rho, [2, d, 2, d], keep=[0, 2])


def concurrence_curve(
    state: PreparedState, taus: np.ndarray, params: ModelParams | None = None
) -> np.ndarray:
    return np.array([pair_concurrence(double_jc_reduced(state, params, t)) for t in taus])


__all__ = [
    "ModelParams",
    "PreparedState",
    "concurrence_curve",
    "double_jc_reduced",
    "double_jc_reduced_bruteforce",
    "fock_dim_for",
    "jc_hamiltonian",
    "jc_unitary",
    "pair_state",
]
