"""
Invariant suite for the search simulator.

Each check returns its worst observed deviation and the tolerance it must
meet; :func:`verify_suite` bundles them into a JSON-ready report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coins import TAU, CoinParams, PhaseRelation, Relation, traversing_coin
from .landscape import check_phase_equivalence
from .walk import (
    Circuit,
    WalkConfig,
    WalkState,
    apply_shift,
    dense_success_probability,
    max_norm_drift,
    success_probabilities,
)

ALGEBRAIC_TOL = 1e-12
NORM_TOL = 1e-10
ORACLE_DIMS = (2, 3, 4)
DEFAULT_ALPHA = -1.0 / (2.0 * math.pi)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "max_deviation": float(self.max_deviation),
            "tolerance": float(self.tolerance),
            "passed": self.passed,
        }


def coin_unitarity(ms=(2, 4, 7), n: int = 32) -> CheckResult:
    worst = 0.0
    grid = TAU * np.arange(n) / n
    for m in ms:
        eye = np.eye(m)
        for phi in grid:
            for zeta in grid:
                c = traversing_coin(phi, zeta, m).dense()
                worst = max(worst, float(np.abs(c.conj().T @ c - eye).max()))
    return CheckResult("coin_unitarity", worst, ALGEBRAIC_TOL)


def shift_involution(m: int, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=m << m) + 1j * rng.normal(size=m << m)
    state = WalkState(m, amps / np.linalg.norm(amps))
    back = apply_shift(apply_shift(state)).amplitudes
    # bit-exact: any difference at all is a failure
    return CheckResult("shift_involution", float(np.abs(back - state.amplitudes).max()), 0.0)


def norm_preservation(m: int, n_samples: int, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    phi, zeta, omega = rng.uniform(0.0, TAU, size=(3, n_samples))
    return CheckResult("norm_preservation", max_norm_drift(m, phi, zeta, omega), NORM_TOL)


def oracle_equivalence(n_samples: int, seed: int, ms=ORACLE_DIMS) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for m in ms:
        for phi, zeta, omega in rng.uniform(0.0, TAU, size=(n_samples, 3)):
            cfg = WalkConfig(m, CoinParams(phi, zeta, omega, m))
            fast = success_probabilities(m, phi, zeta, omega)
            worst = max(worst, abs(float(fast) - dense_success_probability(cfg)))
    return CheckResult("oracle_equivalence", worst, ALGEBRAIC_TOL)


def phase_equivalence(m: int, n_samples: int, seed: int) -> CheckResult:
    return CheckResult("phase_equivalence", check_phase_equivalence(m, n_samples, seed), ALGEBRAIC_TOL)


def circuit_equivalence(m: int, alpha: float = DEFAULT_ALPHA, n_phi: int = 64) -> CheckResult:
    """Marking-coin-free circuit on the ω = π relation vs the standard circuit at ω = 0."""
    phi = TAU * np.arange(n_phi) / n_phi
    zeta_std = PhaseRelation(Relation.EQ6, alpha)(phi)
    zeta_alt = PhaseRelation(Relation.EQ14, alpha)(phi)
    p_std = success_probabilities(m, phi, zeta_std, 0.0, Circuit.STANDARD)
    p_alt = success_probabilities(m, phi, zeta_alt, 0.0, Circuit.ALTERNATIVE)
    return CheckResult("circuit_equivalence", float(np.abs(p_std - p_alt).max()), ALGEBRAIC_TOL)


def marked_symmetry(m: int, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    phi, zeta, omega = rng.uniform(0.0, TAU, size=3)
    p = [float(success_probabilities(m, phi, zeta, omega, marked=x)) for x in range(1 << m)]
    return CheckResult("marked_node_symmetry", max(p) - min(p), ALGEBRAIC_TOL)


def verify_suite(m: int = 4, n_samples: int = 50, seed: int = 0) -> dict:
    """Run every invariant check; ``report["passed"]`` is the conjunction."""
    checks = [
        coin_unitarity(),
        shift_involution(m, seed),
        norm_preservation(m, n_samples, seed),
        oracle_equivalence(min(n_samples, 20), seed),
        phase_equivalence(m, n_samples, seed),
        circuit_equivalence(m),
        marked_symmetry(min(m, 3), seed),
    ]
    return {
        "m": m,
        "samples": n_samples,
        "seed": seed,
        "passed": all(c.passed for c in checks),
        "checks": [c.as_dict() for c in checks],
    }
