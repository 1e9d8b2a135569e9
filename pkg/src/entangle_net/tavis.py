"""Two atom pairs sharing two cavities: A1 B1 in cavity F1, A2 B2 in cavity F2.

Entangled pairs are ``A1 A2`` and ``B1 B2``; each cavity couples its two
atoms resonantly with equal strength. The full layout is
``A1 B1 F1 A2 B2 F2`` and the propagator factorises as ``U1 (x) U2``.

Reduced pair states are built from partner-qubit operators

    V[i, j, k, l] = <N| <i|U^dag|j>_A <k|U|l>_A |N>        (2x2 on B)

whose entries are the closed-form functions returned by
:func:`coefficient_set`. All functions here accept scalar or array ``tau``
where noted, so whole time grids are evaluated in one pass.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np
from scipy.optimize import minimize_scalar

from . import hilbert
from .double_jc import ModelParams, PreparedState, amplitudes, pair_state, partner_map
from .entanglement import concurrence_x_batch
from .hilbert import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z

LAYOUT_NAMES = ("A1", "B1", "F1", "A2", "B2", "F2")


def fock_dim_for(photons: int) -> int:
    """Two atoms per cavity: photons never exceed ``N + 2``."""
    return photons + 3


def layout(fock_dim: int) -> list[int]:
    return [2, 2, fock_dim, 2, 2, fock_dim]


# ---------------------------------------------------------------------------
# propagator of one cavity block (A, B, F)


def number_operator(fock_dim: int) -> np.ndarray:
    """``a^dag a + (sigma_z^A + sigma_z^B) / 2`` on A x B x F."""
    a = hilbert.annihilation(fock_dim)
    i2, i_f = np.eye(2), np.eye(fock_dim)
    return (
        hilbert.kron(i2, i2, a.conj().T @ a)
        + 0.5 * hilbert.kron(SIGMA_Z, i2, i_f)
        + 0.5 * hilbert.kron(i2, SIGMA_Z, i_f)
    )


def tavis_hamiltonian(params: ModelParams) -> np.ndarray:
    """Resonant two-atom Hamiltonian (hbar = 1) on A x B x F."""
    d = params.fock_dim
    a = hilbert.annihilation(d)
    ad = a.conj().T
    i2 = np.eye(2)
    coupling = (
        hilbert.kron(SIGMA_PLUS, i2, a)
        + hilbert.kron(SIGMA_MINUS, i2, ad)
        + hilbert.kron(i2, SIGMA_PLUS, a)
        + hilbert.kron(i2, SIGMA_MINUS, ad)
    )
    return params.omega * number_operator(d) + params.lam * coupling


def _series_limit(values: np.ndarray, fn, limit: float) -> np.ndarray:
    out = np.full(values.shape, limit, dtype=float)
    nz = values > 0
    out[nz] = fn(values[nz])
    return out


def tavis_unitary(params: ModelParams, tau: float) -> np.ndarray:
    """Closed-form propagator of one cavity block at ``tau = lambda t``.

    The 4x4 block structure runs over the atomic states ee, eg, ge, gg, with
    each entry an operator on the Fock space built from ``S = a a^dag + a^dag a``.
    ``S`` is diagonal, so its functions are evaluated on the spectrum; the
    removable singularities at ``S = 0`` take their series limits.
    """
    d = params.fock_dim
    a = hilbert.annihilation(d)
    ad = a.conj().T
    s = np.real(np.diag(a @ ad + ad @ a))
    half_sin2 = _series_limit(s, lambda x: -2.0 * np.sin(tau * np.sqrt(x / 2)) ** 2 / x, -tau**2)
    sinc = np.diag(_series_limit(s, lambda x: np.sin(tau * np.sqrt(2 * x)) / np.sqrt(2 * x), tau))
    g = np.diag(half_sin2)
    cos2 = np.diag(np.cos(tau * np.sqrt(s / 2)) ** 2)
    sin2 = np.diag(np.sin(tau * np.sqrt(s / 2)) ** 2)
    eye = np.eye(d)

    blocks = [[None] * 4 for _ in range(4)]
    blocks[0][0] = eye + a @ g @ ad
    blocks[0][1] = blocks[0][2] = -1j * a @ sinc
    blocks[0][3] = a @ g @ a
    blocks[1][0] = blocks[2][0] = -1j * sinc @ ad
    blocks[1][1] = blocks[2][2] = cos2
    blocks[1][2] = blocks[2][1] = -sin2
    blocks[1][3] = blocks[2][3] = -1j * sinc @ a
    blocks[3][0] = ad @ g @ ad
    blocks[3][1] = blocks[3][2] = -1j * ad @ sinc
    blocks[3][3] = eye + ad @ g @ a
    u = np.block(blocks).astype(complex)
    phase = np.exp(-1j * params.omega_ratio * tau * np.real(np.diag(number_operator(d))))
    return phase[:, None] * u


def tavis_unitary_bruteforce(params: ModelParams, tau: float) -> np.ndarray:
    return hilbert.evolve_hermitian(tavis_hamiltonian(params), tau / params.lam)


# ---------------------------------------------------------------------------
# closed-form partner operators


@dataclass(frozen=True)
class CoefficientSet:
    """Entries of the partner operators for a cavity prepared in ``|N>``.

    Fields are floats, or arrays when evaluated on a time grid.
    ``gamma_phase`` is ``omega t``.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    f: np.ndarray
    h: np.ndarray
    k: np.ndarray
    l: np.ndarray  # noqa: E741
    m: np.ndarray
    n: np.ndarray
    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    gamma_phase: np.ndarray

    def as_dict(self) -> dict[str, np.ndarray]:
        return {fl.name: getattr(self, fl.name) for fl in fields(self)}


def coefficient_set(tau, photons: int, omega_ratio: float = 0.0) -> CoefficientSet:
    """Evaluate the thirteen coefficient functions at ``tau`` (scalar or array).

    Terms carrying a factor ``N`` vanish identically for ``N = 0`` (they come
    from ``a|0> = 0``), even though ``sqrt(N - 1/2)`` is imaginary there;
    likewise the ``N (N - 1)`` term vanishes for ``N = 1``.
    """
    if photons < 0:
        raise ValueError(f"photons must be >= 0, got {photons}")
    tau = np.asarray(tau, dtype=float)
    n = float(photons)
    w_lo = np.sqrt(n + 0.5)
    w_hi = np.sqrt(n + 1.5)
    s_lo, c_lo = np.sin(tau * w_lo), np.cos(tau * w_lo)
    s_hi = np.sin(tau * w_hi)
    s2_lo = np.sin(2 * tau * w_lo)
    s2_hi = np.sin(2 * tau * w_hi)

    top = 1 - (n + 1) / (n + 1.5) * s_hi**2
    cross_hi = (n + 1) / (4 * np.sqrt((n + 1) ** 2 - 0.25)) * s2_lo * s2_hi

    a = top**2 + (n + 1) / (4 * (n + 1.5)) * s2_hi**2
    b = c_lo**4 + n / (4 * (n + 0.5)) * s2_lo**2
    c = cross_hi - s_lo**2 * top
    d = (n + 1) / (4 * (n + 1.5)) * s2_hi**2 + (n + 1) * (n + 2) / (n + 1.5) ** 2 * s_hi**4
    f = s_lo**4 + (n + 1) / (4 * (n + 0.5)) * s2_lo**2
    h = s_lo**4 + n / (4 * (n + 0.5)) * s2_lo**2
    m = c_lo**4 + (n + 1) / (4 * (n + 0.5)) * s2_lo**2
    p = -1 / (8 * (n + 0.5)) * s2_lo**2
    q = c_lo**2 * top + cross_hi

    if photons == 0:
        zero = np.zeros_like(tau)
        k = zero
        n_ = np.ones_like(tau)
        l = -(s_lo**2)  # noqa: E741
        r = c_lo**2
    else:
        w_m = np.sqrt(n - 0.5)
        s_m = np.sin(tau * w_m)
        s2_m = np.sin(2 * tau * w_m)
        bottom = 1 - n / (n - 0.5) * s_m**2
        cross_lo = n / (4 * np.sqrt(n**2 - 0.25)) * s2_m * s2_lo
        k = n / (4 * (n - 0.5)) * s2_m**2 + n * (n - 1) / (n - 0.5) ** 2 * s_m**4
        n_ = n / (4 * (n - 0.5)) * s2_m**2 + bottom**2
        l = cross_lo - s_lo**2 * bottom  # noqa: E741
        r = c_lo**2 * bottom + cross_lo

    return CoefficientSet(
        a=a, b=b, c=c, d=d, f=f, h=h, k=k, l=l, m=m, n=n_, p=p, q=q, r=r,
        gamma_phase=omega_ratio * tau,
    )


def v_tensor(tau, photons: int, omega_ratio: float = 0.0) -> np.ndarray:
    """All sixteen partner operators from the closed forms.

    Returns shape ``tau.shape + (2, 2, 2, 2, 2, 2)`` indexed
    ``[..., i, j, k, l, beta, beta']`` with 0 = e and 1 = g.
    """
    cs = coefficient_set(tau, photons, omega_ratio)
    shape = np.shape(cs.a)
    v = np.zeros(shape + (2,) * 6, dtype=complex)
    ph = np.exp(1j * np.asarray(cs.gamma_phase))
    lead = (slice(None),) * len(shape)

    def put(idx, entries):
        for (bb, bp), val in entries:
            v[lead + idx + (bb, bp)] = val

    put((0, 0, 0, 0), [((0, 0), cs.a), ((1, 1), cs.b)])
    put((0, 0, 1, 0), [((0, 1), cs.c * ph)])
    put((0, 1, 1, 0), [((0, 0), cs.d), ((1, 1), cs.f)])
    put((1, 0, 0, 1), [((0, 0), cs.h), ((1, 1), cs.k)])
    put((1, 0, 1, 1), [((0, 1), cs.l * ph)])
    put((1, 1, 1, 1), [((0, 0), cs.m), ((1, 1), cs.n)])
    put((0, 0, 0, 1), [((1, 0), cs.p)])
    put((0, 0, 1, 1), [((0, 0), cs.q * ph), ((1, 1), cs.r * ph)])
    put((0, 1, 1, 1), [((1, 0), -cs.p)])
    # the remaining entries follow from V[ijkl]^dag = V[lkji]
    for src in [(0, 0, 1, 0), (1, 0, 1, 1), (0, 0, 1, 1), (0, 0, 0, 1), (0, 1, 1, 1)]:
        dst = src[::-1]
        v[lead + dst] = np.swapaxes(v[lead + src], -1, -2).conj()
    return v


def v_operator(i: int, j: int, k: int, l: int, tau: float, photons: int, omega_ratio: float = 0.0) -> np.ndarray:  # noqa: E741
    """Partner operator ``V_ijkl`` (indices 1 = e, 2 = g) as a 2x2 matrix."""
    idx = (i, j, k, l)
    if any(x not in (1, 2) for x in idx):
        raise ValueError(f"V-operator indices must be 1 or 2, got {idx}")
    return v_tensor(float(tau), photons, omega_ratio)[tuple(x - 1 for x in idx)]


def v_tensor_from_unitary(u: np.ndarray, photons: int, fock_dim: int) -> np.ndarray:
    """Partner operators extracted numerically from a propagator on A x B x F."""
    w = u.reshape(2, 2, fock_dim, 2, 2, fock_dim)[..., photons]  # [a, b, n, a0, b0]
    # V[i,j,k,l][beta, beta'] = sum_{b,n} conj(W[j,b,n,i,beta]) W[k,b,n,l,beta']
    return np.einsum("jbnix,kbnly->ijklxy", w.conj(), w)


# ---------------------------------------------------------------------------
# reduced pair states


def _check_symmetric(state: PreparedState) -> None:
    if not state.symmetric:
        raise ValueError(
            "closed forms need both pairs in the same family; use the brute-force pipeline"
        )


def rho_pair_same_batch(state: PreparedState, taus, omega_ratio: float = 0.0) -> np.ndarray:
    """``A1 A2`` density matrices on a grid of ``tau`` from the partner operators.

    rho[(k,l),(m,n)] = sum_ij s_i s_j Tr_B[rho_B V_{j m k i} (x) V_{pi(j) n l pi(i)}]
    """
    _check_symmetric(state)
    v = v_tensor(np.atleast_1d(np.asarray(taus, dtype=float)), state.photons, omega_ratio)
    s = amplitudes(state.alpha)
    pi = partner_map(state.family)
    # rho_B[(p, pi p), (q, pi q)] = s_p s_q, so Tr(rho_B X1 (x) X2) = sum s_p s_q X1[q,p] X2[pi q, pi p]
    out = np.zeros(v.shape[:1] + (2, 2, 2, 2), dtype=complex)  # [t, k, l, m, n]
    for i in range(2):
        for j in range(2):
            for p in range(2):
                for q in range(2):
                    w = s[i] * s[j] * s[p] * s[q]
                    v1 = v[:, j, :, :, i, q, p]  # [t, m, k]
                    v2 = v[:, pi[j], :, :, pi[i], pi[q], pi[p]]  # [t, n, l]
                    out += w * np.einsum("tmk,tnl->tklmn", v1, v2)
    return out.reshape(-1, 4, 4)


def rho_pair_cross_batch(state: PreparedState, taus, omega_ratio: float = 0.0) -> np.ndarray:
    """``A1 B2`` density matrices on a grid of ``tau``.

    The contraction is fixed as

        rho[(k,l),(m,n)] = sum_ijpq s_i s_j s_p s_q
                           <q| V_{j m k i} |p> <pi(j)| V_{pi(q) n l pi(p)} |pi(i)>

    where the second factor traces ``A2 F2`` instead of ``B2 F2``; the block
    propagator is symmetric under exchanging its two atoms, which turns that
    trace back into a partner operator with the roles of the atoms swapped.
    """
    _check_symmetric(state)
    v = v_tensor(np.atleast_1d(np.asarray(taus, dtype=float)), state.photons, omega_ratio)
    s = amplitudes(state.alpha)
    pi = partner_map(state.family)
    out = np.zeros(v.shape[:1] + (2, 2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for p in range(2):
                for q in range(2):
                    w = s[i] * s[j] * s[p] * s[q]
                    v1 = v[:, j, :, :, i, q, p]  # [t, m, k]
                    v2 = v[:, pi[q], :, :, pi[p], pi[j], pi[i]]  # [t, n, l]
                    out += w * np.einsum("tmk,tnl->tklmn", v1, v2)
    return out.reshape(-1, 4, 4)


def rho_pair_same(state: PreparedState, tau: float, omega_ratio: float = 0.0) -> np.ndarray:
    """Density matrix of ``A1 A2`` (equal to that of ``B1 B2``) at ``tau``."""
    return rho_pair_same_batch(state, [tau], omega_ratio)[0]


def rho_pair_cross(state: PreparedState, tau: float, omega_ratio: float = 0.0) -> np.ndarray:
    """Density matrix of ``A1 B2`` (equal to that of ``B1 A2``) at ``tau``."""
    return rho_pair_cross_batch(state, [tau], omega_ratio)[0]


def _x_matrix(d11, d22, d33, d44, c14=0.0, c23=0.0) -> np.ndarray:
    d11 = np.asarray(d11)
    out = np.zeros(d11.shape + (4, 4), dtype=complex)
    for i, val in enumerate((d11, d22, d33, d44)):
        out[..., i, i] = val
    out[..., 0, 3] = c14
    out[..., 3, 0] = np.conj(c14)
    out[..., 1, 2] = c23
    out[..., 2, 1] = np.conj(c23)
    return out


def rho_same_elements(state: PreparedState, taus, omega_ratio: float = 0.0) -> np.ndarray:
    """Explicit element formulas for ``A1 A2`` (both families)."""
    _check_symmetric(state)
    cs = coefficient_set(np.asarray(taus, dtype=float), state.photons, omega_ratio)
    a, b, c, d, f, h, k, l, m, n, p, q, r = (
        cs.a, cs.b, cs.c, cs.d, cs.f, cs.h, cs.k, cs.l, cs.m, cs.n, cs.p, cs.q, cs.r
    )
    co, si = np.cos(state.alpha), np.sin(state.alpha)
    c4, s4, s2a = co**4, si**4, np.sin(2 * state.alpha)
    if state.family == "phi":
        d11 = a**2 * c4 + (b**2 + h**2 + 2 * p**2) / 4 * s2a**2 + k**2 * s4
        d22 = a * d * c4 + (b * f + h * m - 2 * p**2) / 4 * s2a**2 + k * n * s4
        d44 = d**2 * c4 + (f**2 + 2 * p**2 + m**2) / 4 * s2a**2 + n**2 * s4
        c14 = 0.5 * np.exp(-2j * cs.gamma_phase) * ((c**2 + q**2) * co**2 + (l**2 + r**2) * si**2) * s2a
        return _x_matrix(d11, d22, d22, d44, c14=c14)
    d11 = a * k * c4 + (b * h + p**2) / 2 * s2a**2 + a * k * s4
    d22 = a * n * c4 + (f * h + b * m - 2 * p**2) / 4 * s2a**2 + d * k * s4
    d33 = d * k * c4 + (f * h + b * m - 2 * p**2) / 4 * s2a**2 + a * n * s4
    d44 = d * n * c4 + (f * m + p**2) / 2 * s2a**2 + d * n * s4
    c23 = (c * l + q * r) / 2 * s2a
    return _x_matrix(d11, d22, d33, d44, c23=c23)


def rho_cross_elements(state: PreparedState, taus, omega_ratio: float = 0.0) -> np.ndarray:
    """Explicit element formulas for ``A1 B2`` (phi family only)."""
    _check_symmetric(state)
    if state.family != "phi":
        raise ValueError("explicit A1 B2 elements are only available for the phi family")
    cs = coefficient_set(np.asarray(taus, dtype=float), state.photons, omega_ratio)
    a, b, c, d, f, h, k, l, m, n, p, q, r = (
        cs.a, cs.b, cs.c, cs.d, cs.f, cs.h, cs.k, cs.l, cs.m, cs.n, cs.p, cs.q, cs.r
    )
    co, si = np.cos(state.alpha), np.sin(state.alpha)
    c4, s4, s2a = co**4, si**4, np.sin(2 * state.alpha)
    d11 = a**2 * c4 + (b * h + p**2) / 2 * s2a**2 + k**2 * s4
    d22 = a * d * c4 + (f * h + b * m - 2 * p**2) / 4 * s2a**2 + k * n * s4
    d44 = d**2 * c4 + (f * m + p**2) / 2 * s2a**2 + n**2 * s4
    c14 = np.exp(-2j * cs.gamma_phase) * (c * q * co**2 + l * r * si**2) * s2a
    return _x_matrix(d11, d22, d22, d44, c14=c14)


# ---------------------------------------------------------------------------
# brute-force oracle


def initial_state(state: PreparedState, fock_dim: int) -> np.ndarray:
    """Ket on ``A1 B1 F1 A2 B2 F2``."""
    pa = pair_state(state.family, state.alpha).reshape(2, 2)  # [a1, a2]
    pb = pair_state(state.pair_b_family, state.alpha).reshape(2, 2)  # [b1, b2]
    fock = hilbert.fock_state(state.photons, fock_dim)
    return np.einsum("ac,bd,f,g->abfcdg", pa, pb, fock, fock).reshape(-1)


def evolved_density_bruteforce(
    state: PreparedState, tau: float, omega_ratio: float = 0.0, fock_dim: int | None = None
) -> np.ndarray:
    """Full six-party density matrix from ``exp(-iHt)`` of each block and a Kronecker product."""
    d = fock_dim or fock_dim_for(state.photons)
    params = ModelParams(lam=1.0, omega=omega_ratio, fock_dim=d)
    u1 = tavis_unitary_bruteforce(params, tau)
    u = hilbert.kron(u1, u1)
    psi0 = initial_state(state, d)
    rho0 = np.outer(psi0, psi0.conj())
    return u @ rho0 @ u.conj().T


def reduced_pairs_bruteforce(
    state: PreparedState, tau: float, omega_ratio: float = 0.0, fock_dim: int | None = None
) -> dict[str, np.ndarray]:
    """Pair density matrices ``A1A2``, ``B1B2``, ``A1B2``, ``B1A2`` from the full evolution.

    ``B1A2`` keeps the B1 qubit first; in that ordering it equals ``A1B2``
    for both families.
    """
    d = fock_dim or fock_dim_for(state.photons)
    rho = evolved_density_bruteforce(state, tau, omega_ratio, d)
    dims = layout(d)
    out = {
        "A1A2": hilbert.partial_trace(rho, dims, keep=[0, 3]),
        "B1B2": hilbert.partial_trace(rho, dims, keep=[1, 4]),
        "A1B2": hilbert.partial_trace(rho, dims, keep=[0, 4]),
    }
    out["B1A2"] = hilbert.partial_trace(rho, dims, keep=[1, 3])
    return out


def total_excitation(state: PreparedState, tau: float, omega_ratio: float = 0.0) -> float:
    d = fock_dim_for(state.photons)
    rho = evolved_density_bruteforce(state, tau, omega_ratio, d)
    n1 = number_operator(d)
    eye = np.eye(n1.shape[0])
    total = hilbert.kron(n1, eye) + hilbert.kron(eye, n1)
    return float(np.real(np.trace(total @ rho)))


# ---------------------------------------------------------------------------
# concurrence curves and minimum-entanglement sweep


def concurrence_curve(
    state: PreparedState, taus, pair: str = "same", omega_ratio: float = 0.0
) -> np.ndarray:
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    if pair == "same":
        rho = rho_pair_same_batch(state, taus, omega_ratio)
    elif pair == "cross":
        rho = rho_pair_cross_batch(state, taus, omega_ratio)
    else:
        raise ValueError(f"pair must be 'same' or 'cross', got {pair!r}")
    return concurrence_x_batch(rho)


def minimum_entanglement(
    state: PreparedState, tau_max: float = 20.0, tau_steps: int = 4001, polish: bool = True
) -> tuple[float, float]:
    """Smallest ``A1 A2`` concurrence over ``[0, tau_max]`` and where it occurs.

    The grid minimum is refined by a bounded golden-section search between the
    neighbouring grid points.
    """
    if tau_steps < 2 or tau_max <= 0:
        raise ValueError("need tau_max > 0 and tau_steps >= 2")
    taus = np.linspace(0.0, tau_max, tau_steps)
    conc = concurrence_curve(state, taus)
    i = int(np.argmin(conc))
    best_tau, best = float(taus[i]), float(conc[i])
    if polish and best > 0.0:
        lo, hi = taus[max(i - 1, 0)], taus[min(i + 1, tau_steps - 1)]
        res = minimize_scalar(
            lambda t: float(concurrence_curve(state, [t])[0]),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-10},
        )
        if res.fun < best:
            best_tau, best = float(res.x), float(res.fun)
    return best, best_tau


@dataclass(frozen=True)
class SweepResult:
    alpha: np.ndarray  # radians
    e_min: np.ndarray
    tau_at_min: np.ndarray

    @property
    def alpha_deg(self) -> np.ndarray:
        return np.degrees(self.alpha)


def worker_count() -> int:
    env = os.environ.get("ENTANGLE_NET_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def min_entanglement_sweep(
    family: str,
    alpha_grid,
    tau_max: float = 20.0,
    tau_steps: int = 4001,
    photons: int = 0,
    workers: int | None = None,
) -> SweepResult:
    """Minimum ``A1 A2`` concurrence over time for each preparation angle (radians)."""
    alphas = np.asarray(alpha_grid, dtype=float)
    if alphas.size == 0:
        raise ValueError("alpha grid is empty")
    if tau_steps < 2:
        raise ValueError("tau grid needs at least two points")

    def one(alpha: float) -> tuple[float, float]:
        st = PreparedState(family, float(alpha), photons)
        return minimum_entanglement(st, tau_max, tau_steps)

    workers = workers or worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, alphas))
    else:
        results = [one(a) for a in alphas]
    return SweepResult(
        alpha=alphas,
        e_min=np.array([r[0] for r in results]),
        tau_at_min=np.array([r[1] for r in results]),
    )


def preservation_threshold(
    family: str,
    alpha_grid,
    e_min: np.ndarray,
    tau_max: float = 20.0,
    tau_steps: int = 4001,
    photons: int = 0,
    cutoff: float = 1e-6,
    refine_steps: int = 20,
) -> float | None:
    """Smallest angle (radians) at which ``E_min`` exceeds ``cutoff``.

    Takes the first qualifying grid angle and bisects towards its lower
    neighbour. Returns ``None`` if no grid angle qualifies.
    """
    alphas = np.asarray(alpha_grid, dtype=float)
    above = np.nonzero(np.asarray(e_min) > cutoff)[0]
    if above.size == 0:
        return None
    first = int(above[0])
    if first == 0:
        return float(alphas[0])
    lo, hi = alphas[first - 1], alphas[first]
    for _ in range(refine_steps):
        mid = 0.5 * (lo + hi)
        e, _ = minimum_entanglement(PreparedState(family, mid, photons), tau_max, tau_steps)
        if e > cutoff:
            hi = mid
        else:
            lo = mid
    return float(hi)
