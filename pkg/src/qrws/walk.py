"""
Coined quantum random-walk search on the m-dimensional hypercube.

State layout
------------
Amplitudes are indexed ``d * 2**m + x`` for direction ``d`` in ``[0, m)`` and
node ``x`` in ``[0, 2**m)``. Internally they are handled as arrays of shape
``(..., m, 2**m)`` so that a leading batch axis can carry many phase settings
through the same circuit at once.

One iteration applies the node-conditional coins (walk coin on unmarked
nodes, marking coin on the marked node) followed by the shift
``|d, x> -> |d, x XOR 2**d>``.

Two circuits are supported:

``Circuit.STANDARD``
    walk coin ``e^{iζ} M(φ)``, marking coin ``-e^{iω} I``.
``Circuit.ALTERNATIVE``
    no marking coin (identity on the marked node); walk coin ``e^{iζ} M(φ)``.
    This is the ``ω = π`` member of the standard family, so it reproduces the
    standard circuit at phase difference ``ζ - π``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from .coins import CoinMatrix, CoinParams, identity_coin, reduce_angle

__all__ = [
    "Circuit",
    "WalkState",
    "WalkConfig",
    "RunResult",
    "ConsistencyError",
    "iteration_count",
    "uniform_initial_state",
    "apply_shift",
    "apply_conditional_coins",
    "qrws_run",
    "success_probabilities",
    "build_full_step_unitary",
    "dense_success_probability",
    "max_norm_drift",
    "MAX_DENSE_DIM",
]

NORM_TOL = 1e-8
MAX_DENSE_DIM = 4096
# complex128 entries per batch chunk (~64 MB)
_CHUNK_ENTRIES = 1 << 22


class ConsistencyError(RuntimeError):
    """Raised when a run drifts from unit norm beyond tolerance."""


class Circuit(str, enum.Enum):
    STANDARD = "standard"
    ALTERNATIVE = "alt"


def _check_walk_dim(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"hypercube dimension must be an int, got {type(m).__name__}")
    if m < 2:
        raise ValueError(f"hypercube dimension must be >= 2 (got {m})")


def iteration_count(m: int) -> int:
    """Number of search iterations ``ceil(π/2 * sqrt(2**(m-1)))``."""
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"dimension must be an int, got {type(m).__name__}")
    if m < 1:
        raise ValueError(f"dimension must be >= 1 (got {m})")
    return math.ceil(math.pi / 2.0 * math.sqrt(2.0 ** (m - 1)))


@dataclass
class WalkState:
    m: int
    amplitudes: NDArray[np.complex128]

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.m << self.m,):
            raise ValueError(
                f"expected {self.m << self.m} amplitudes for m={self.m}, "
                f"got shape {self.amplitudes.shape}"
            )

    @classmethod
    def basis(cls, m: int, d: int, x: int) -> "WalkState":
        amps = np.zeros(m << m, dtype=np.complex128)
        amps[d * (1 << m) + x] = 1.0
        return cls(m, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def grid(self) -> NDArray[np.complex128]:
        """View of the amplitudes as a ``(m, 2**m)`` direction-by-node array."""
        return self.amplitudes.reshape(self.m, 1 << self.m)

    def node_distribution(self) -> NDArray[np.float64]:
        return (np.abs(self.grid()) ** 2).sum(axis=0)


@dataclass(frozen=True)
class WalkConfig:
    """
    Everything needed for one search run.

    ``iterations`` defaults to :func:`iteration_count`.
    """

    m: int
    coin: CoinParams
    circuit: Circuit = Circuit.STANDARD
    marked: int = 0
    iterations: Optional[int] = None

    def __post_init__(self):
        _check_walk_dim(self.m)
        object.__setattr__(self, "circuit", Circuit(self.circuit))
        if self.coin.m != self.m:
            raise ValueError(f"coin dimension {self.coin.m} does not match m={self.m}")
        if not 0 <= self.marked < (1 << self.m):
            raise ValueError(f"marked node {self.marked} outside [0, {1 << self.m})")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError(f"iterations must be >= 0 (got {self.iterations})")

    @property
    def k(self) -> int:
        return iteration_count(self.m) if self.iterations is None else int(self.iterations)

    def coins(self) -> tuple[CoinMatrix, CoinMatrix]:
        """(unmarked coin, marked coin) for this circuit."""
        walk = self.coin.walk_coin()
        if self.circuit is Circuit.ALTERNATIVE:
            return walk, identity_coin(self.m)
        return walk, self.coin.mark_coin()


@dataclass(frozen=True)
class RunResult:
    success_probability: float
    node_distribution: NDArray[np.float64]
    iterations_used: int


def uniform_initial_state(m: int) -> WalkState:
    _check_walk_dim(m)
    dim = m << m
    return WalkState(m, np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128))


@lru_cache(maxsize=None)
def _shift_index(m: int) -> tuple[NDArray[np.intp], NDArray[np.intp]]:
    rows = np.arange(m)[:, None]
    cols = np.arange(1 << m)[None, :] ^ (1 << np.arange(m))[:, None]
    return rows, cols


def _shift(amps: NDArray[np.complex128], m: int) -> NDArray[np.complex128]:
    # gather == scatter since each bit flip is an involution
    rows, cols = _shift_index(m)
    return amps[..., rows, cols]


def apply_shift(state: WalkState) -> WalkState:
    """Move the amplitude at ``(d, x)`` to ``(d, x XOR 2**d)``."""
    return WalkState(state.m, _shift(state.grid(), state.m).reshape(-1))


def _coins(amps, marked, ua, ub, ma, mb):
    # amps: (B, m, N); coin coefficients: (B,) complex arrays
    total = amps.sum(axis=1, keepdims=True)
    fiber = amps[:, :, marked]
    out = (ua - ub)[:, None, None] * amps + ub[:, None, None] * total
    out[:, :, marked] = (ma - mb)[:, None] * fiber + mb[:, None] * total[:, :, marked]
    return out


def apply_conditional_coins(
    state: WalkState, unmarked_coin: CoinMatrix, marked_coin: CoinMatrix, marked: int
) -> WalkState:
    """
    Apply ``unmarked_coin`` to the direction fiber of every node except
    ``marked``, which receives ``marked_coin``.
    """
    m = state.m
    if unmarked_coin.dim != m or marked_coin.dim != m:
        raise ValueError(
            f"coin dimensions ({unmarked_coin.dim}, {marked_coin.dim}) do not match m={m}"
        )
    if not 0 <= marked < (1 << m):
        raise ValueError(f"marked node {marked} outside [0, {1 << m})")
    c = lambda z: np.array([z], dtype=np.complex128)  # noqa: E731
    out = _coins(
        state.grid()[None],
        marked,
        c(unmarked_coin.diag),
        c(unmarked_coin.offdiag),
        c(marked_coin.diag),
        c(marked_coin.offdiag),
    )
    return WalkState(m, out.reshape(-1))


def _coin_coefficients(phi, zeta, omega, m, circuit):
    """Rank-one coefficients of (walk coin, marking coin) for arrays of phases."""
    t = (1.0 - np.exp(1j * phi)) / m
    rot = np.exp(1j * zeta)
    ua, ub = rot * (1.0 - t), -rot * t
    if circuit is Circuit.ALTERNATIVE:
        ma = np.ones_like(ua)
    else:
        ma = -np.exp(1j * omega) * np.ones_like(ua)
    return ua, ub, ma, np.zeros_like(ua)


def _evolve(m, k, marked, coeffs):
    n_batch = coeffs[0].shape[0]
    dim = m << m
    amps = np.full((n_batch, m, 1 << m), 1.0 / math.sqrt(dim), dtype=np.complex128)
    for _ in range(k):
        amps = _shift(_coins(amps, marked, *coeffs), m)
    return amps


def success_probabilities(
    m: int,
    phi,
    zeta,
    omega=0.0,
    circuit: Circuit | str = Circuit.STANDARD,
    marked: int = 0,
    iterations: Optional[int] = None,
) -> NDArray[np.float64]:
    """
    Success probability of the search for many phase settings at once.

    ``phi``, ``zeta`` and ``omega`` broadcast against each other; the result has
    the broadcast shape. Work is chunked along the flattened batch so memory
    stays bounded, and each entry is computed independently of the others.

    Raises
    ------
    ConsistencyError
        If any final state drifts from unit norm by more than 1e-8.
    """
    _check_walk_dim(m)
    circuit = Circuit(circuit)
    if not 0 <= marked < (1 << m):
        raise ValueError(f"marked node {marked} outside [0, {1 << m})")
    k = iteration_count(m) if iterations is None else int(iterations)
    phi, zeta, omega = np.broadcast_arrays(
        np.asarray(phi, dtype=float), np.asarray(zeta, dtype=float), np.asarray(omega, dtype=float)
    )
    shape = phi.shape
    phi, zeta, omega = (reduce_angle(a.reshape(-1)) for a in (phi, zeta, omega))
    out = np.empty(phi.size)
    chunk = max(1, _CHUNK_ENTRIES // (m << m))
    for lo in range(0, phi.size, chunk):
        sl = slice(lo, lo + chunk)
        coeffs = _coin_coefficients(phi[sl], zeta[sl], omega[sl], m, circuit)
        probs = np.abs(_evolve(m, k, marked, coeffs)) ** 2
        drift = np.abs(probs.sum(axis=(1, 2)) - 1.0)
        if drift.max(initial=0.0) > NORM_TOL:
            raise ConsistencyError(f"norm drift {drift.max():.3e} exceeds {NORM_TOL:g}")
        out[sl] = probs[:, :, marked].sum(axis=1)
    return out.reshape(shape)


def qrws_run(config: WalkConfig) -> RunResult:
    """
    Run the search circuit described by ``config``.

    Starts from the uniform superposition and applies ``config.k`` iterations
    of conditional coins followed by the shift.
    """
    unmarked, marked_coin = config.coins()
    state = uniform_initial_state(config.m)
    for _ in range(config.k):
        state = apply_shift(apply_conditional_coins(state, unmarked, marked_coin, config.marked))
    drift = abs(state.norm - 1.0)
    if drift > NORM_TOL:
        raise ConsistencyError(f"norm drift {drift:.3e} exceeds {NORM_TOL:g}")
    dist = state.node_distribution()
    return RunResult(float(dist[config.marked]), dist, config.k)


def build_full_step_unitary(config: WalkConfig) -> NDArray[np.complex128]:
    """
    Dense matrix of one search iteration (shift after conditional coins).

    Assembled from the dense coin matrices and an explicit shift permutation,
    independently of the fast path, for differential testing.

    Raises
    ------
    ValueError
        If the state dimension ``m * 2**m`` exceeds 4096.
    """
    m = config.m
    n_nodes = 1 << m
    dim = m * n_nodes
    if dim > MAX_DENSE_DIM:
        raise ValueError(f"dense step of size {dim} exceeds the {MAX_DENSE_DIM} guard")
    unmarked, marked_coin = config.coins()
    coin_op = np.zeros((dim, dim), dtype=np.complex128)
    for x in range(n_nodes):
        block = (marked_coin if x == config.marked else unmarked).dense()
        sites = np.arange(m) * n_nodes + x
        coin_op[np.ix_(sites, sites)] = block
    shift_op = np.zeros((dim, dim))
    for d in range(m):
        for x in range(n_nodes):
            shift_op[d * n_nodes + (x ^ (1 << d)), d * n_nodes + x] = 1.0
    return shift_op @ coin_op


def dense_success_probability(config: WalkConfig) -> float:
    """Success probability from a matrix power of :func:`build_full_step_unitary`."""
    step = build_full_step_unitary(config)
    psi = uniform_initial_state(config.m).amplitudes
    psi = np.linalg.matrix_power(step, config.k) @ psi
    return float((np.abs(psi.reshape(config.m, -1)[:, config.marked]) ** 2).sum())


def max_norm_drift(m: int, phi, zeta, omega=0.0, circuit=Circuit.STANDARD, iterations=None) -> float:
    """Largest ``| ||psi|| - 1 |`` seen at any step boundary across a batch of runs."""
    _check_walk_dim(m)
    k = 2 * iteration_count(m) if iterations is None else int(iterations)
    phi, zeta, omega = (
        reduce_angle(a.reshape(-1).astype(float))
        for a in np.broadcast_arrays(np.asarray(phi), np.asarray(zeta), np.asarray(omega))
    )
    coeffs = _coin_coefficients(phi, zeta, omega, m, Circuit(circuit))
    amps = np.full((phi.size, m, 1 << m), 1.0 / math.sqrt(m << m), dtype=np.complex128)
    worst = 0.0
    for _ in range(k):
        amps = _shift(_coins(amps, 0, *coeffs), m)
        norms = np.sqrt((np.abs(amps) ** 2).sum(axis=(1, 2)))
        worst = max(worst, float(np.abs(norms - 1.0).max()))
    return worst
