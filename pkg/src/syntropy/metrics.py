"""Entropy-based similarity scores over paired distributions.

All logarithms are base 2, terms with zero probability in their own
distribution contribute nothing, and reductions use exact compensated
summation (math.fsum) over support order, which keeps results
reproducible across platforms and makes the self-comparison identities
exact: comparing a distribution against itself produces the same term
sequence in numerator and denominator, so the directed ratio is exactly
1.0 and the symmetric divergence exactly 0.0.

The directed score is the ratio H(Q)/H(P,Q): 1.0 when Q encodes P as
efficiently as it encodes itself, falling toward 0 as Q fails to explain
P. The raw ratio can exceed 1 (a low-entropy Q that still covers P's
mass), so scores are clamped into [0, 1] by default with the raw value
retained. The symmetric score is 1 minus the Jensen-Shannon divergence of
the midpoint distribution, which is finite without smoothing; smoothed
inputs are transparently swapped for their unsmoothed originals there.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .distribution import EmpiricalDistribution, same_support
from .errors import MetricDomainError, SupportMismatchError, UnsmoothedZeroError


class MetricKind(enum.Enum):
    SCE = "sce"
    JSD_SIM = "jsd"


@dataclass(frozen=True)
class MetricScore:
    value: float
    metric_kind: MetricKind
    clamped: bool
    raw_value: float


def _require_same_support(p: EmpiricalDistribution, q: EmpiricalDistribution) -> None:
    if not same_support(p, q):
        raise SupportMismatchError("distributions are defined over different joint supports")


def _entropy_bits(probs: np.ndarray) -> float:
    mask = probs > 0.0
    masked = probs[mask]
    terms = masked * np.log2(masked)
    return 0.0 - math.fsum(terms.tolist())


def shannon_entropy(p: EmpiricalDistribution) -> float:
    """H(P) in bits; 0 for a point mass, log2(m) for uniform."""
    return _entropy_bits(p.probs)


def cross_entropy(p: EmpiricalDistribution, q: EmpiricalDistribution) -> float:
    """H(P, Q) = -sum p_i log2 q_i over p's support, in bits.

    Raises:
        UnsmoothedZeroError: if q has a zero where p has mass; smooth q
            first (or guarantee coverage) for directed comparisons.
    """
    _require_same_support(p, q)
    mask = p.probs > 0.0
    q_masked = q.probs[mask]
    if np.any(q_masked == 0.0):
        raise UnsmoothedZeroError("q(u) = 0 where p(u) > 0; apply smoothing to q first")
    terms = p.probs[mask] * np.log2(q_masked)
    return 0.0 - math.fsum(terms.tolist())


def kl_divergence(p: EmpiricalDistribution, q: EmpiricalDistribution) -> float:
    """D_KL(P || Q) = H(P,Q) - H(P), clamping float dust above -1e-9 to 0."""
    divergence = cross_entropy(p, q) - shannon_entropy(p)
    if -1e-9 <= divergence < 0.0:
        return 0.0
    return divergence


def js_divergence(
    p: EmpiricalDistribution, q: EmpiricalDistribution, method: str = "entropy"
) -> float:
    """Jensen-Shannon divergence in bits, in [0, 1] with base-2 logs.

    ``method`` picks the formulation: "entropy" computes
    H(M) - (H(P) + H(Q)) / 2 from the midpoint M, "two_kl" averages the
    two KL divergences against M. Both agree to well under 1e-9; the
    entropy form is the default because it is exactly symmetric. Smoothed
    inputs are replaced by their unsmoothed originals.
    """
    p = p.unsmoothed if p.smoothed and p.unsmoothed is not None else p
    q = q.unsmoothed if q.smoothed and q.unsmoothed is not None else q
    _require_same_support(p, q)
    midpoint = (p.probs + q.probs) / 2.0
    if method == "entropy":
        divergence = _entropy_bits(midpoint) - (_entropy_bits(p.probs) + _entropy_bits(q.probs)) / 2.0
    elif method == "two_kl":
        divergence = (_kl_against(p.probs, midpoint) + _kl_against(q.probs, midpoint)) / 2.0
    else:
        raise ValueError(f"unknown method {method!r}")
    return min(max(divergence, 0.0), 1.0)


def _kl_against(probs: np.ndarray, reference: np.ndarray) -> float:
    mask = probs > 0.0
    masked = probs[mask]
    terms = masked * (np.log2(masked) - np.log2(reference[mask]))
    return math.fsum(terms.tolist())


def sce_similarity(
    p: EmpiricalDistribution, q: EmpiricalDistribution, clamp: bool = True
) -> MetricScore:
    """Directed ratio H(Q)/H(P,Q), with exact degenerate handling.

    A point-mass q (some entry exactly 1.0, which smoothing preserves) has
    zero entropy up to the smoothing floor, so the ratio is taken at its
    limits instead of numerically: 1.0 when p is the same point mass,
    0.0 when p puts mass anywhere else.
    """
    _require_same_support(p, q)
    peak = int(np.argmax(q.probs))
    if q.probs[peak] == 1.0:
        value = 1.0 if p.probs[peak] == 1.0 else 0.0
        return MetricScore(value=value, metric_kind=MetricKind.SCE, clamped=False, raw_value=value)

    hq = shannon_entropy(q)
    hpq = cross_entropy(p, q)
    if hpq == 0.0:
        raise MetricDomainError("H(P,Q) = 0 with non-degenerate q; inputs are not distributions")
    raw = hq / hpq
    if clamp and raw > 1.0:
        return MetricScore(value=1.0, metric_kind=MetricKind.SCE, clamped=True, raw_value=raw)
    return MetricScore(value=raw, metric_kind=MetricKind.SCE, clamped=False, raw_value=raw)


def jsd_similarity(p: EmpiricalDistribution, q: EmpiricalDistribution) -> MetricScore:
    """Symmetric similarity 1 - D_JS(P || Q), in [0, 1]; 1 exactly iff P = Q."""
    value = 1.0 - js_divergence(p, q)
    return MetricScore(value=value, metric_kind=MetricKind.JSD_SIM, clamped=False, raw_value=value)
