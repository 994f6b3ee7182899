"""
Phase-landscape studies built on the batched search simulator.

* Monte Carlo and lattice sampling of the success probability over (φ, ζ).
* Probability curves along a phase relation ζ(φ).
* Plateau-width robustness metric and a deterministic α optimizer.
* Numerical check that only the phase difference ζ - ω matters.

Random sampling uses ``numpy.random.default_rng(seed)`` (PCG64). All draws for
a call are made up front in index order, so results do not depend on how the
evaluation is chunked.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .coins import TAU, PhaseRelation, Relation, eval_phase_relation, reduce_angle
from .walk import Circuit, iteration_count, success_probabilities

__all__ = [
    "LandscapeSample",
    "ProbabilityCurve",
    "ThresholdMode",
    "RobustnessReport",
    "sample_landscape",
    "landscape_grid",
    "probability_curve",
    "robustness_width",
    "optimize_alpha",
    "check_phase_equivalence",
    "DEFAULT_N_PHI",
    "DEFAULT_THRESHOLD",
]

DEFAULT_N_PHI = 512
DEFAULT_THRESHOLD = 0.9
SCAN_STEP = 0.01
ALPHA_TOL = 1e-4
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LandscapeSample:
    phi: float
    zeta: float
    omega: float
    m: int
    k: int
    p: float


@dataclass
class ProbabilityCurve:
    m: int
    omega: float
    relation: Optional[PhaseRelation]
    phi: np.ndarray
    zeta: np.ndarray
    p: np.ndarray
    circuit: Circuit = Circuit.STANDARD

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=float)
        self.zeta = np.asarray(self.zeta, dtype=float)
        self.p = np.asarray(self.p, dtype=float)
        if not (self.phi.shape == self.zeta.shape == self.p.shape) or self.phi.ndim != 1:
            raise ValueError("phi, zeta and p must be 1-D arrays of equal length")
        if self.phi.size > 1 and np.any(np.diff(self.phi) <= 0):
            raise ValueError("phi values must be strictly increasing")

    def __len__(self):
        return self.phi.size

    @property
    def points(self) -> list[tuple[float, float, float]]:
        return list(zip(self.phi.tolist(), self.zeta.tolist(), self.p.tolist()))


class ThresholdMode(str, enum.Enum):
    RELATIVE = "relative"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class RobustnessReport:
    alpha: Optional[float]
    width: float
    p_max: float
    phi_max: float
    threshold_mode: ThresholdMode
    threshold_value: float
    cutoff: float = field(default=float("nan"))

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "width": self.width,
            "p_max": self.p_max,
            "phi_max": self.phi_max,
            "threshold_mode": self.threshold_mode.value,
            "threshold_value": self.threshold_value,
            "cutoff": self.cutoff,
        }


def landscape_grid(n_phi: int, n_zeta: int, m: int, omega: float = 0.0, **run_kw):
    """
    Success probabilities on the lattice ``φ_i = 2π i / n_phi``, ``ζ_j = 2π j / n_zeta``.

    Returns ``(phi, zeta, p)`` where ``p[i, j]`` belongs to ``(phi[i], zeta[j])``.
    """
    if n_phi < 1 or n_zeta < 1:
        raise ValueError("grid sizes must be >= 1")
    phi = TAU * np.arange(n_phi) / n_phi
    zeta = TAU * np.arange(n_zeta) / n_zeta
    p = success_probabilities(m, phi[:, None], zeta[None, :], omega, **run_kw)
    return phi, zeta, p


def sample_landscape(
    m: int,
    omega: float = 0.0,
    *,
    grid: Optional[tuple[int, int]] = None,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> list[LandscapeSample]:
    """
    Sample the success probability over the (φ, ζ) torus.

    Exactly one of ``grid=(n_phi, n_zeta)`` or ``n_samples`` must be given. Grid
    samples are ordered φ-major. Random samples draw φ then ζ uniformly from
    [0, 2π] with ``default_rng(seed)``.
    """
    if (grid is None) == (n_samples is None):
        raise ValueError("give exactly one of grid or n_samples")
    k = iteration_count(m)
    omega = reduce_angle(float(omega))
    if grid is not None:
        phi, zeta, p = landscape_grid(grid[0], grid[1], m, omega)
        phis = np.repeat(phi, zeta.size)
        zetas = np.tile(zeta, phi.size)
        ps = p.reshape(-1)
    else:
        if n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        rng = np.random.default_rng(seed)
        draws = rng.uniform(0.0, TAU, size=(n_samples, 2))
        phis, zetas = draws[:, 0], draws[:, 1]
        ps = success_probabilities(m, phis, zetas, omega)
    return [
        LandscapeSample(float(a), float(b), omega, m, k, float(c))
        for a, b, c in zip(phis, zetas, ps)
    ]


def _phi_grid(n_phi: int) -> np.ndarray:
    if n_phi < 2:
        raise ValueError(f"n_phi must be >= 2 (got {n_phi})")
    return np.linspace(0.0, TAU, n_phi)


def _default_circuit(variant: Relation, circuit) -> Circuit:
    # the EQ14 rule is written for the circuit without a marking coin
    if circuit is None:
        return Circuit.ALTERNATIVE if variant is Relation.EQ14 else Circuit.STANDARD
    return Circuit(circuit)


def probability_curve(
    m: int,
    omega: float = 0.0,
    relation: PhaseRelation = PhaseRelation(),
    n_phi: int = DEFAULT_N_PHI,
    circuit: Optional[Circuit | str] = None,
) -> ProbabilityCurve:
    """
    Success probability along ``ζ = relation(φ)`` for ``n_phi`` points over [0, 2π].

    ``circuit`` defaults to the marking-coin-free circuit for the EQ14 rule and
    to the standard circuit otherwise.
    """
    circuit = _default_circuit(relation.variant, circuit)
    phi = _phi_grid(n_phi)
    zeta = eval_phase_relation(relation, phi)
    p = success_probabilities(m, phi, zeta, omega, circuit)
    return ProbabilityCurve(m, reduce_angle(float(omega)), relation, phi, zeta, p, circuit)


def _width(phi: np.ndarray, p: np.ndarray, cutoff: float) -> float:
    n = phi.size
    if n == 1:
        return 0.0 if p[0] < cutoff else TAU
    spacing = (phi[-1] - phi[0]) / (n - 1)
    counted = p
    # a grid closing the period lists φ = 0 and φ = 2π, which are one point
    if math.isclose(phi[-1] - phi[0], TAU, rel_tol=1e-12):
        counted = p[:-1]
    return float(min(TAU, int(np.count_nonzero(counted >= cutoff)) * spacing))


def robustness_width(
    curve: ProbabilityCurve,
    threshold_mode: ThresholdMode | str = ThresholdMode.RELATIVE,
    threshold_value: float = DEFAULT_THRESHOLD,
) -> RobustnessReport:
    """
    Measure of the φ set where the curve stays above a cutoff.

    The cutoff is ``threshold_value * p_max`` in relative mode and
    ``threshold_value`` in absolute mode. The width is the number of qualifying
    grid points times the grid spacing; when the grid spans the full period its
    two endpoints count once. ``phi_max`` is the first grid point attaining
    ``p_max``.
    """
    if len(curve) == 0:
        raise ValueError("empty curve")
    mode = ThresholdMode(threshold_mode)
    i_max = int(np.argmax(curve.p))
    p_max = float(curve.p[i_max])
    cutoff = threshold_value * p_max if mode is ThresholdMode.RELATIVE else float(threshold_value)
    alpha = curve.relation.alpha if curve.relation is not None else None
    return RobustnessReport(
        alpha=alpha,
        width=_width(curve.phi, curve.p, cutoff),
        p_max=p_max,
        phi_max=float(curve.phi[i_max]),
        threshold_mode=mode,
        threshold_value=float(threshold_value),
        cutoff=float(cutoff),
    )


def _better(a: tuple[float, float], b: tuple[float, float]) -> bool:
    """Is (width, alpha) candidate ``a`` preferred over ``b``?"""
    if a[0] != b[0]:
        return a[0] > b[0]
    if abs(a[1]) != abs(b[1]):
        return abs(a[1]) < abs(b[1])
    return a[1] < b[1]


def optimize_alpha(
    m: int,
    omega: float = 0.0,
    relation_family: Relation | str = Relation.EQ6,
    alpha_range: Sequence[float] = (-1.0, 1.0),
    n_phi: int = DEFAULT_N_PHI,
    threshold_mode: ThresholdMode | str = ThresholdMode.RELATIVE,
    threshold_value: float = DEFAULT_THRESHOLD,
    circuit: Optional[Circuit | str] = None,
) -> RobustnessReport:
    """
    Find the α that maximizes the plateau width of ``relation_family``.

    A coarse scan with step 0.01 over ``alpha_range`` is followed by a
    golden-section search on the bracket around the best scan point, stopped
    once the bracket is narrower than 1e-4. The returned α is the best of all
    evaluated candidates; equal widths prefer the smaller ``|α|``.
    """
    family = Relation(relation_family)
    if family is Relation.CONSTANT_PI:
        raise ValueError("constant-π relation has no α to optimize")
    circuit = _default_circuit(family, circuit)
    lo, hi = (float(a) for a in alpha_range)
    if lo > hi:
        raise ValueError(f"alpha_range must satisfy lo <= hi (got {lo}, {hi})")
    phi = _phi_grid(n_phi)
    omega = reduce_angle(float(omega))
    evaluated: dict[float, RobustnessReport] = {}

    def curves(alphas):
        alphas = [a for a in alphas if a not in evaluated]
        if not alphas:
            return
        rels = [PhaseRelation(family, a, omega) for a in alphas]
        zeta = np.stack([eval_phase_relation(r, phi) for r in rels])
        p = success_probabilities(m, phi[None, :], zeta, omega, circuit)
        for a, r, z, row in zip(alphas, rels, zeta, p):
            curve = ProbabilityCurve(m, omega, r, phi, z, row, circuit)
            evaluated[a] = robustness_width(curve, threshold_mode, threshold_value)

    def best():
        top = None
        for a, rep in evaluated.items():
            if top is None or _better((rep.width, a), (evaluated[top].width, top)):
                top = a
        return top

    n_steps = int(math.floor((hi - lo) / SCAN_STEP + 1e-9))
    scan = [round(lo + i * SCAN_STEP, 12) + 0.0 for i in range(n_steps + 1)]
    if scan[-1] < hi:
        scan.append(hi)
    curves(scan)

    if hi > lo:
        a0 = best()
        a, b = max(lo, a0 - SCAN_STEP), min(hi, a0 + SCAN_STEP)
        c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
        while b - a > ALPHA_TOL:
            curves([c, d])
            if _better((evaluated[c].width, c), (evaluated[d].width, d)):
                b, d = d, c
                c = b - _INVPHI * (b - a)
            else:
                a, c = c, d
                d = a + _INVPHI * (b - a)
        curves([0.5 * (a + b)])
    return evaluated[best()]


def check_phase_equivalence(m: int, n_samples: int, seed: Optional[int] = None) -> float:
    """
    Largest ``|p(φ, ζ, ω) - p(φ, ζ - ω, 0)|`` over uniformly drawn phase triples.

    Only the difference between walk-coin and marking-coin phases should
    matter, so the result is expected to sit at rounding level.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    phi, zeta, omega = rng.uniform(0.0, TAU, size=(3, n_samples))
    p_full = success_probabilities(m, phi, zeta, omega)
    p_diff = success_probabilities(m, phi, reduce_angle(zeta - omega), 0.0)
    return float(np.max(np.abs(p_full - p_diff)))
