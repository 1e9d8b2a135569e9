"""Atom pairs coupled to Lorentzian multimode baths.

Three pieces live here:

* the deterministic coefficient ODEs of the non-Markovian diffusion
  equation for one bath (``F1``, ``F2``, ``Ubar``), integrated as written;
* the analytic long-time pair states and their concurrence;
* a Markov-limit master equation for the four qubits ``A1 B1 A2 B2`` with
  collective jump operators ``L_i = sigma_-^{A_i} + sigma_-^{B_i}``, used as
  an independent check of the long-time states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import hilbert
from .double_jc import PreparedState, pair_state
from .entanglement import concurrence
from .hilbert import SIGMA_MINUS

STATIONARY_TOL = 1e-8
BLOWUP_NORM = 1e6


class IntegrationError(RuntimeError):
    """An integration diverged or lost trace/Hermiticity."""

    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


def rk4_step(rhs, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    k1 = rhs(t, y)
    k2 = rhs(t + dt / 2, y + dt / 2 * k1)
    k3 = rhs(t + dt / 2, y + dt / 2 * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _n_steps(t_max: float, dt: float) -> int:
    if dt <= 0 or t_max < 0:
        raise ValueError("need dt > 0 and t_max >= 0")
    n = int(round(t_max / dt))
    if not np.isclose(n * dt, t_max, rtol=1e-9, atol=1e-12):
        raise ValueError(f"t_max={t_max} is not a whole number of steps of dt={dt}")
    return n


# ---------------------------------------------------------------------------
# coefficient ODEs


@dataclass(frozen=True)
class BathParams:
    """Overall decay rate ``Gamma``, memory rate ``gamma`` and qubit frequency ``omega``."""

    Gamma: float
    gamma: float
    omega: float = 0.0

    def __post_init__(self) -> None:
        if self.Gamma <= 0:
            raise ValueError(f"Gamma must be positive, got {self.Gamma}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


@dataclass(frozen=True)
class QsdCoefficients:
    t: np.ndarray
    F1: np.ndarray
    F2: np.ndarray
    U_bar: np.ndarray
    derivative_norm: float

    @property
    def converged(self) -> bool:
        return self.derivative_norm < STATIONARY_TOL

    @property
    def final(self) -> np.ndarray:
        return np.array([self.F1[-1], self.F2[-1], self.U_bar[-1]])


def _qsd_derivs(bath: BathParams, f1: complex, f2: complex, u: complex) -> tuple[complex, complex, complex]:
    g, big = bath.gamma, bath.Gamma
    decay = complex(-g, bath.omega)
    return (
        big * g / 2 + decay * f1 + f1 * f1 + 3 * f2 * f2 - 0.5j * u,
        decay * f2 - f1 * f1 + 4 * f1 * f2 + f2 * f2 - 0.5j * u,
        -2j * g * f2 + 2 * decay * u + 4 * f1 * u,
    )


def qsd_rhs(bath: BathParams, y: np.ndarray) -> np.ndarray:
    """Time derivative of ``(F1, F2, Ubar)`` for one Lorentzian bath."""
    return np.array(_qsd_derivs(bath, complex(y[0]), complex(y[1]), complex(y[2])))


def qsd_coefficients(
    bath: BathParams, t_max: float, dt: float, sample_every: int = 1
) -> QsdCoefficients:
    """Integrate the coefficient ODEs from ``F1 = F2 = Ubar = 0`` with fixed-step RK4.

    Raises :class:`IntegrationError` (carrying the blow-up time) if any
    coefficient exceeds ``1e6`` in magnitude.
    """
    n = _n_steps(t_max, dt)
    rhs = _qsd_derivs
    y = (0j, 0j, 0j)
    h2, h6 = dt / 2, dt / 6
    ts, ys = [0.0], [y]
    for step in range(1, n + 1):
        # scalar RK4; numpy arrays of length 3 are an order of magnitude slower here
        k1 = rhs(bath, *y)
        k2 = rhs(bath, *(a + h2 * b for a, b in zip(y, k1)))
        k3 = rhs(bath, *(a + h2 * b for a, b in zip(y, k2)))
        k4 = rhs(bath, *(a + dt * b for a, b in zip(y, k3)))
        y = tuple(
            a + h6 * (b1 + 2 * b2 + 2 * b3 + b4) for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
        )
        big = max(abs(v) for v in y)
        if not big <= BLOWUP_NORM:
            raise IntegrationError(
                f"coefficient ODEs diverged at t={step * dt:.6g} "
                f"(Gamma={bath.Gamma}, gamma={bath.gamma})",
                time=step * dt,
            )
        if step % sample_every == 0 or step == n:
            ts.append(step * dt)
            ys.append(y)
    arr = np.array(ys, dtype=complex)
    return QsdCoefficients(
        t=np.array(ts),
        F1=arr[:, 0],
        F2=arr[:, 1],
        U_bar=arr[:, 2],
        derivative_norm=float(max(abs(v) for v in rhs(bath, *y))),
    )


def qsd_refinement_drift(bath: BathParams, t_max: float, dt: float) -> float:
    """Largest change of the endpoint coefficients when ``dt`` is halved."""
    coarse = qsd_coefficients(bath, t_max, dt, sample_every=10**9).final
    fine = qsd_coefficients(bath, t_max, dt / 2, sample_every=10**9).final
    return float(np.max(np.abs(coarse - fine)))


# ---------------------------------------------------------------------------
# analytic long-time states


@dataclass(frozen=True)
class SteadyState:
    y: float
    x_abs: float
    rho_same: np.ndarray
    rho_cross: np.ndarray


def steady_state_pair(alpha: float, family: str) -> SteadyState:
    """Long-time ``A1 A2`` and ``A1 B2`` states for equal preparations of both pairs.

    The coherence ``x`` is stored real and non-negative in the ``A1 A2`` state
    and with the opposite sign in the ``A1 B2`` state.
    """
    if family not in ("phi", "psi"):
        raise ValueError(f"family must be 'phi' or 'psi', got {family!r}")
    co, si = np.cos(alpha), np.sin(alpha)
    y = 0.25 * co**2 * si**2
    x = 0.5 * co * si**3
    diag = np.diag([y, y, y, 1 - 3 * y]).astype(complex)
    same, cross = diag.copy(), diag.copy()
    if family == "phi":
        same[0, 3] = same[3, 0] = x
        cross[0, 3] = cross[3, 0] = -x
    return SteadyState(y=float(y), x_abs=float(abs(x)), rho_same=same, rho_cross=cross)


def steady_concurrence(alpha: float, family: str) -> float:
    """``2 max(|x| - y, 0)`` for the phi family, zero for psi."""
    if family == "psi":
        return 0.0
    s = steady_state_pair(alpha, family)
    return float(2 * max(s.x_abs - s.y, 0.0))


def steady_optimum() -> tuple[float, float]:
    """Angle (radians) maximising the long-time phi-family concurrence, and the maximum."""
    res = minimize_scalar(
        lambda a: -steady_concurrence(a, "phi"),
        bounds=(np.arctan(0.5), np.pi / 2),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return float(res.x), float(-res.fun)


# ---------------------------------------------------------------------------
# Markov-limit master equation on A1 B1 A2 B2

QUBIT_LAYOUT = [2, 2, 2, 2]


def four_qubit_state(state: PreparedState) -> np.ndarray:
    """Ket on ``A1 B1 A2 B2``."""
    pa = pair_state(state.family, state.alpha).reshape(2, 2)
    pb = pair_state(state.pair_b_family, state.alpha).reshape(2, 2)
    return np.einsum("ac,bd->abcd", pa, pb).reshape(-1)


def jump_operators() -> list[np.ndarray]:
    i2 = np.eye(2)
    l1 = hilbert.kron(SIGMA_MINUS, i2, i2, i2) + hilbert.kron(i2, SIGMA_MINUS, i2, i2)
    l2 = hilbert.kron(i2, i2, SIGMA_MINUS, i2) + hilbert.kron(i2, i2, i2, SIGMA_MINUS)
    return [l1, l2]


def lindblad_rhs(gamma_rate: float, hamiltonian: np.ndarray | None = None):
    ls = jump_operators()
    lds = [l.conj().T for l in ls]
    ldl = sum(ld @ l for l, ld in zip(ls, lds))

    def rhs(_t: float, rho: np.ndarray) -> np.ndarray:
        out = -0.5 * gamma_rate * (ldl @ rho + rho @ ldl)
        for l, ld in zip(ls, lds):
            out += gamma_rate * (l @ rho @ ld)
        if hamiltonian is not None:
            out += -1j * (hamiltonian @ rho - rho @ hamiltonian)
        return out

    return rhs


def generator_norm(rho: np.ndarray, gamma_rate: float) -> float:
    return float(np.max(np.abs(lindblad_rhs(gamma_rate)(0.0, rho))))


def lindblad_trajectory(
    state: PreparedState, Gamma: float, t_max: float, dt: float, sample_every: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Sampled times and four-qubit density matrices from fixed-step RK4.

    Trace and Hermiticity are checked at every step; a drift beyond 1e-9
    raises :class:`IntegrationError`.
    """
    if Gamma <= 0:
        raise ValueError(f"Gamma must be positive, got {Gamma}")
    n = _n_steps(t_max, dt)
    rhs = lindblad_rhs(Gamma)
    psi = four_qubit_state(state)
    rho = np.outer(psi, psi.conj())
    ts, rhos = [0.0], [rho]
    for step in range(1, n + 1):
        rho = rk4_step(rhs, (step - 1) * dt, rho, dt)
        t = step * dt
        if not np.all(np.isfinite(rho)) or abs(np.trace(rho) - 1.0) > 1e-9:
            raise IntegrationError(f"master equation lost trace at t={t:.6g}; reduce dt", time=t)
        if not hilbert.is_hermitian(rho, 1e-10):
            raise IntegrationError(f"master equation lost Hermiticity at t={t:.6g}", time=t)
        if step % sample_every == 0 or step == n:
            ts.append(t)
            rhos.append(rho)
    return np.array(ts), np.array(rhos)


def lindblad_evolve(state: PreparedState, Gamma: float, t_max: float, dt: float) -> np.ndarray:
    """Four-qubit density matrix (``A1 B1 A2 B2``) at ``t_max``."""
    _, rhos = lindblad_trajectory(state, Gamma, t_max, dt, sample_every=10**9)
    return rhos[-1]


def lindblad_refinement_drift(state: PreparedState, Gamma: float, t_max: float, dt: float) -> float:
    coarse = lindblad_evolve(state, Gamma, t_max, dt)
    fine = lindblad_evolve(state, Gamma, t_max, dt / 2)
    return float(np.max(np.abs(coarse - fine)))


def pair_reductions(rho: np.ndarray) -> dict[str, np.ndarray]:
    """``A1A2`` and ``A1B2`` reductions of a four-qubit state."""
    return {
        "same": hilbert.partial_trace(rho, QUBIT_LAYOUT, keep=[0, 2]),
        "cross": hilbert.partial_trace(rho, QUBIT_LAYOUT, keep=[0, 3]),
    }


def block_relation_defects(rho: np.ndarray) -> dict[str, float]:
    """Deviations from the long-time block pattern of the 16x16 state.

    Blocks are indexed by the ``A1 B1`` state (ee, eg, ge, gg) and act on
    ``A2 B2``; letters follow the row-major labelling a..p of the 4x4 grid.
    """
    blk = rho.reshape(4, 4, 4, 4).transpose(0, 2, 1, 3)
    F, G, H = blk[1, 1], blk[1, 2], blk[1, 3]
    J, K, L = blk[2, 1], blk[2, 2], blk[2, 3]
    N, O = blk[3, 1], blk[3, 2]
    first = np.concatenate([blk[0].reshape(-1), blk[:, 0].reshape(-1)])
    m = lambda x: float(np.max(np.abs(x)))  # noqa: E731
    return {
        "first_row_col": m(first),
        "F=K": m(F - K),
        "F=-G": m(F + G),
        "F=-J": m(F + J),
        "H=-L": m(H + L),
        "H=N^dag": m(H - N.conj().T),
        "H=-O^dag": m(H + O.conj().T),
    }


def lindblad_steady_concurrence(rho: np.ndarray) -> dict[str, float]:
    red = pair_reductions(rho)
    return {k: concurrence(v) for k, v in red.items()}
