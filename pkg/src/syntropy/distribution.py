"""Empirical distributions over the joint support of two symbol multisets.

The joint support is the sorted union of the two key sets, so probability
vectors are index-aligned and bit-reproducible across runs. The second
distribution of a directed comparison gets floor smoothing
``q_i = max(q_i, epsilon)`` with no renormalization by default: for any
sane epsilon the excess mass is negligible, and an optional
``renormalize`` flag restores the sum-to-one constraint for sensitivity
studies.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .codec import SubtreeMultiset, SubtreeSymbol
from .errors import EmptyDistributionError, InvalidEpsilonError, SupportMismatchError

DEFAULT_EPSILON = 1e-12


@dataclass(frozen=True)
class JointSupport:
    """Sorted, distinct symbols indexing the probability vectors."""

    symbols: tuple[SubtreeSymbol, ...]
    _index: dict[SubtreeSymbol, int] = field(repr=False, compare=False, default_factory=dict)

    @classmethod
    def from_symbols(cls, symbols) -> "JointSupport":
        ordered = tuple(sorted(symbols))
        return cls(symbols=ordered, _index={s: i for i, s in enumerate(ordered)})

    @property
    def m(self) -> int:
        return len(self.symbols)

    def index_of(self, symbol: SubtreeSymbol) -> int:
        return self._index[symbol]

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """Probability vector over a joint support.

    ``total`` is the occurrence count of the source multiset (the n the
    probabilities were divided by). Smoothed instances keep a reference to
    their unsmoothed original so symmetric metrics can opt out of the
    smoothing applied for directed ones.
    """

    support: JointSupport
    probs: np.ndarray
    total: int
    smoothed: bool = False
    epsilon: float = 0.0
    unsmoothed: Optional["EmpiricalDistribution"] = None

    def __post_init__(self):
        self.probs.setflags(write=False)

    @property
    def m(self) -> int:
        return self.support.m


def joint_support(a: SubtreeMultiset, b: SubtreeMultiset) -> JointSupport:
    """Union of both key sets, sorted by canonical form."""
    if not a.counts or not b.counts:
        raise EmptyDistributionError("cannot build a joint support from an empty multiset")
    return JointSupport.from_symbols(set(a.counts) | set(b.counts))


def empirical(mult: SubtreeMultiset, support: JointSupport) -> EmpiricalDistribution:
    """Relative frequencies of ``mult`` on ``support``; absent symbols get 0."""
    if not mult.counts:
        raise EmptyDistributionError("cannot build a distribution from an empty multiset")
    probs = np.zeros(len(support), dtype=np.float64)
    try:
        for symbol, count in mult.counts.items():
            probs[support.index_of(symbol)] = count / mult.total
    except KeyError as exc:
        raise SupportMismatchError(f"symbol {exc.args[0]!r} missing from joint support") from None
    return EmpiricalDistribution(support=support, probs=probs, total=mult.total)


def smooth(
    dist: EmpiricalDistribution, epsilon: float = DEFAULT_EPSILON, renormalize: bool = False
) -> EmpiricalDistribution:
    """Floor every entry at ``epsilon``; idempotent for a fixed epsilon."""
    if not epsilon > 0.0:
        raise InvalidEpsilonError(f"epsilon must be positive, got {epsilon}")
    if epsilon >= 1.0 / dist.total:
        warnings.warn(
            f"epsilon {epsilon} is not small against 1/n = {1.0 / dist.total}; "
            "smoothing will visibly distort the distribution",
            stacklevel=2,
        )
    probs = np.maximum(dist.probs, epsilon)
    if renormalize:
        probs = probs / probs.sum()
    base = dist.unsmoothed if dist.smoothed else dist
    return EmpiricalDistribution(
        support=dist.support,
        probs=probs,
        total=dist.total,
        smoothed=True,
        epsilon=epsilon,
        unsmoothed=base,
    )


def same_support(p: EmpiricalDistribution, q: EmpiricalDistribution) -> bool:
    return p.support is q.support or p.support.symbols == q.support.symbols
