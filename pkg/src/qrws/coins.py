"""
Coin operators for quantum random-walk search on the hypercube.

All coins used by the search share the structure of an identity-plus-rank-one
operator: one value ``a`` on the main diagonal and one value ``b`` everywhere
else. They are stored in that compact form and only materialized densely on
request, so applying a coin to an ``m``-dimensional direction fiber costs O(m).

The reflection vector is always the equal-weight superposition of the coin
basis states.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "TAU",
    "reduce_angle",
    "CoinMatrix",
    "CoinParams",
    "Relation",
    "PhaseRelation",
    "householder_reflection",
    "traversing_coin",
    "marking_coin",
    "alt_traversing_coin",
    "identity_coin",
    "eval_phase_relation",
]

TAU = 2.0 * math.pi


def reduce_angle(theta):
    """
    Map an angle (scalar or array) onto the canonical interval [0, 2π).

    ``np.mod`` can round a tiny negative input up to exactly 2π; such values
    are folded back to 0.
    """
    r = np.mod(theta, TAU)
    if np.ndim(r) == 0:
        r = float(r)
        return 0.0 if r >= TAU else r
    return np.where(r >= TAU, 0.0, r)


def _check_dim(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"coin dimension must be an int, got {type(m).__name__}")
    if m < 1:
        raise ValueError(f"coin dimension must be >= 1 (got {m})")


@dataclass(frozen=True)
class CoinMatrix:
    """
    An ``dim x dim`` coin with ``diag`` on the main diagonal and ``offdiag`` elsewhere.
    """

    dim: int
    diag: complex
    offdiag: complex

    def dense(self) -> NDArray[np.complex128]:
        mat = np.full((self.dim, self.dim), self.offdiag, dtype=np.complex128)
        np.fill_diagonal(mat, self.diag)
        return mat

    def apply(self, fibers: NDArray[np.complex128], axis: int = 0) -> NDArray[np.complex128]:
        """
        Multiply the coin into every fiber laid out along ``axis``.

        Uses ``C v = (a - b) v + b * sum(v)``.
        """
        fibers = np.asarray(fibers)
        if fibers.shape[axis] != self.dim:
            raise ValueError(
                f"fiber length {fibers.shape[axis]} does not match coin dimension {self.dim}"
            )
        total = fibers.sum(axis=axis, keepdims=True)
        return (self.diag - self.offdiag) * fibers + self.offdiag * total

    def scaled(self, factor: complex) -> "CoinMatrix":
        return CoinMatrix(self.dim, self.diag * factor, self.offdiag * factor)


@dataclass(frozen=True)
class CoinParams:
    """
    Phase parameters that fully determine the walk and marking coins.

    Angles are reduced to [0, 2π) on construction. ``m = 1`` is accepted here
    (coins degenerate to scalars) but rejected by the walk engine.
    """

    phi: float
    zeta: float
    omega: float = 0.0
    m: int = 2

    def __post_init__(self):
        _check_dim(self.m)
        for name in ("phi", "zeta", "omega"):
            object.__setattr__(self, name, reduce_angle(float(getattr(self, name))))

    def walk_coin(self) -> CoinMatrix:
        return traversing_coin(self.phi, self.zeta, self.m)

    def mark_coin(self) -> CoinMatrix:
        return marking_coin(self.omega, self.m)


def householder_reflection(phi: float, m: int) -> CoinMatrix:
    """
    Generalized Householder reflection ``I - (1 - e^{iφ}) |χ><χ|``.

    Parameters
    ----------
    phi : float
        Reflection phase in radians.
    m : int
        Coin dimension.

    Returns
    -------
    CoinMatrix
        ``a = 1 - (1 - e^{iφ})/m`` and ``b = -(1 - e^{iφ})/m``.

    Raises
    ------
    ValueError
        If ``m < 1``.
    """
    _check_dim(m)
    t = (1.0 - np.exp(1j * reduce_angle(phi))) / m
    return CoinMatrix(int(m), complex(1.0 - t), complex(-t))


def traversing_coin(phi: float, zeta: float, m: int) -> CoinMatrix:
    """Walk coin ``e^{iζ} M(φ)``; ``φ = ζ = π`` gives the Grover coin."""
    return householder_reflection(phi, m).scaled(np.exp(1j * reduce_angle(zeta)))


def marking_coin(omega: float, m: int) -> CoinMatrix:
    """Marking coin ``-e^{iω} I``; ``ω = 0`` is the usual ``-I``."""
    _check_dim(m)
    return CoinMatrix(int(m), complex(-np.exp(1j * reduce_angle(omega))), 0j)


def alt_traversing_coin(phi: float, zeta: float, m: int) -> CoinMatrix:
    """
    Walk coin ``e^{i(ζ - π)} M(φ)`` written for a circuit without a marking coin.

    Identical to ``traversing_coin(phi, zeta - π, m)``. At ``φ = ζ = π`` it is
    the minus Grover coin. Paired with an identity marking coin it reproduces
    the standard circuit run at the *same* ``ζ`` (the ``e^{-iπ}`` is a global
    sign on the coin block).
    """
    return traversing_coin(phi, reduce_angle(zeta - math.pi), m)


def identity_coin(m: int) -> CoinMatrix:
    _check_dim(m)
    return CoinMatrix(int(m), 1.0 + 0j, 0j)


class Relation(str, enum.Enum):
    """Rules tying the walk-coin phase ζ to the reflection phase φ."""

    CONSTANT_PI = "const-pi"
    EQ6 = "eq6"
    EQ12 = "eq12"
    EQ14 = "eq14"


@dataclass(frozen=True)
class PhaseRelation:
    """
    ``ζ(φ)`` rule.

    ``CONSTANT_PI``: ζ = π.
    ``EQ6``: ζ = -2φ + π + α sin 2φ.
    ``EQ12``: ζ = -2φ + ω + π + α sin 2φ (keeps ζ - ω equal to the EQ6 value).
    ``EQ14``: ζ = -2φ + α sin 2φ (the EQ12 rule at ω = π).
    """

    variant: Relation = Relation.CONSTANT_PI
    alpha: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "variant", Relation(self.variant))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "omega", reduce_angle(float(self.omega)))

    def __call__(self, phi):
        return eval_phase_relation(self, phi)


def eval_phase_relation(relation: PhaseRelation, phi):
    """Evaluate ``relation`` at ``phi`` (scalar or array); the result is reduced to [0, 2π)."""
    phi = np.asarray(phi, dtype=float) if np.ndim(phi) else float(phi)
    v = relation.variant
    if v is Relation.CONSTANT_PI:
        if np.ndim(phi):
            return np.full(np.shape(phi), math.pi)
        return math.pi
    wobble = -2.0 * phi + relation.alpha * np.sin(2.0 * phi)
    if v is Relation.EQ6:
        return reduce_angle(wobble + math.pi)
    if v is Relation.EQ12:
        return reduce_angle(wobble + relation.omega + math.pi)
    return reduce_angle(wobble)
