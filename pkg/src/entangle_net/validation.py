"""Invariant suites run by ``entangle-net validate``.

Each suite returns a list of :class:`Check` records; a check passes when its
measured defect is at or below its tolerance.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import hilbert, multimode, tavis
from .double_jc import ModelParams, PreparedState, jc_hamiltonian, jc_unitary

SUITES = ("unitarity", "voperators", "oracle", "steady")
SEED = 20120601


@dataclass(frozen=True)
class Check:
    name: str
    defect: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.defect) and self.defect <= self.tol)

    def to_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def suite_unitarity() -> list[Check]:
    checks = []
    for tau in (0.3, 1.0, 2.5):
        p = ModelParams(fock_dim=5)
        u = tavis.tavis_unitary(p, tau)
        checks.append(Check(f"tavis unitarity tau={tau}", hilbert.unitarity_defect(u), 1e-10))
        bf = tavis.tavis_unitary_bruteforce(p, tau)
        checks.append(Check(f"tavis closed form vs exp(-iHt) tau={tau}", float(np.max(np.abs(u - bf))), 1e-10))
        pj = ModelParams(fock_dim=4)
        uj = jc_unitary(pj, tau)
        ref = hilbert.evolve_hermitian(jc_hamiltonian(pj), tau)
        checks.append(Check(f"jc closed form vs exp(-iHt) tau={tau}", float(np.max(np.abs(uj - ref))), 1e-10))
    rng = np.random.default_rng(SEED)
    for trial in range(5):
        m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
        h = m + m.conj().T
        t = float(rng.uniform(0, 10))
        checks.append(
            Check(f"evolve_hermitian unitarity #{trial}", hilbert.unitarity_defect(hilbert.evolve_hermitian(h, t)), 1e-10)
        )
    return checks


def suite_voperators(points: int = 10) -> list[Check]:
    rng = np.random.default_rng(SEED + 1)
    checks = []
    for _ in range(points):
        tau = float(rng.uniform(0, 20))
        n = int(rng.integers(0, 3))
        v = tavis.v_tensor(tau, n)
        herm = max(
            float(np.max(np.abs(v[i, j, k, l].conj().T - v[l, k, j, i])))
            for i, j, k, l in np.ndindex(2, 2, 2, 2)
        )
        comp = max(
            float(np.max(np.abs(v[i, 0, 0, l] + v[i, 1, 1, l] - (i == l) * np.eye(2))))
            for i in range(2)
            for l in range(2)  # noqa: E741
        )
        d = tavis.fock_dim_for(n)
        num = tavis.v_tensor_from_unitary(
            tavis.tavis_unitary_bruteforce(ModelParams(fock_dim=d), tau), n, d
        )
        label = f"tau={tau:.4f} N={n}"
        checks.append(Check(f"hermiticity pairing {label}", herm, 1e-12))
        checks.append(Check(f"completeness {label}", comp, 1e-12))
        checks.append(Check(f"closed form vs extracted {label}", float(np.max(np.abs(v - num))), 1e-10))
    return checks


def random_oracle_cases(count: int = 50, seed: int = SEED + 2):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        family = str(rng.choice(["phi", "psi"]))
        alpha = float(rng.uniform(0, np.pi / 2))
        tau = float(rng.uniform(0, 20))
        n = int(rng.integers(0, 3))
        yield PreparedState(family, alpha, n), tau


def suite_oracle(count: int = 50) -> list[Check]:
    checks = []
    for state, tau in random_oracle_cases(count):
        bf = tavis.reduced_pairs_bruteforce(state, tau)
        same = tavis.rho_pair_same(state, tau)
        cross = tavis.rho_pair_cross(state, tau)
        err = max(
            float(np.max(np.abs(same - bf["A1A2"]))),
            float(np.max(np.abs(cross - bf["A1B2"]))),
        )
        label = f"{state.family} alpha={np.degrees(state.alpha):.3f} tau={tau:.4f} N={state.photons}"
        checks.append(Check(f"closed form vs brute force {label}", err, 1e-9))
    return checks


def suite_steady(gamma_rate: float = 1.0, t_max: float = 50.0, dt: float = 0.01) -> list[Check]:
    checks = []
    for family in ("phi", "psi"):
        for deg in (15, 30, 45, 60, 75):
            alpha = np.radians(deg)
            rho = multimode.lindblad_evolve(PreparedState(family, alpha), gamma_rate, t_max, dt)
            red = multimode.pair_reductions(rho)
            ss = multimode.steady_state_pair(alpha, family)
            label = f"{family} alpha={deg}"
            err = max(
                float(np.max(np.abs(red["same"] - ss.rho_same))),
                float(np.max(np.abs(red["cross"] - ss.rho_cross))),
            )
            checks.append(Check(f"analytic vs master equation {label}", err, 1e-6))
            checks.append(Check(f"block pattern {label}", max(multimode.block_relation_defects(rho).values()), 1e-6))
            checks.append(Check(f"stationary {label}", multimode.generator_norm(rho, gamma_rate), 1e-8))
    return checks


_RUNNERS = {
    "unitarity": suite_unitarity,
    "voperators": suite_voperators,
    "oracle": suite_oracle,
    "steady": suite_steady,
}


def run_suites(names) -> dict:
    report: dict = {"suites": {}}
    for name in names:
        checks = _RUNNERS[name]()
        report["suites"][name] = {
            "passed": all(c.passed for c in checks),
            "max_defect": max(c.defect for c in checks),
            "checks": [c.to_dict() for c in checks],
        }
    report["passed"] = all(s["passed"] for s in report["suites"].values())
    return report
