"""Independent reference implementations used to pin expected test values.

Everything here is deliberately written against the math, not against the
library: distributions are exact fractions, entropies use 60-digit mpmath
logs, and subtree enumeration walks trees directly into nested tuples.
None of these functions share code with the package under test.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

import mpmath

mpmath.mp.dps = 60

_TWO = mpmath.mpf(2)


def _mpf(x: Fraction | float | int) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)
    return mpmath.mpf(x)


def _log2(x: Fraction | float) -> mpmath.mpf:
    return mpmath.log(_mpf(x)) / mpmath.log(_TWO)


# ---------------------------------------------------------------------------
# Exact distribution construction


def joint_support(counts_a: dict[str, int], counts_b: dict[str, int]) -> list[str]:
    return sorted(set(counts_a) | set(counts_b))


def exact_probs(counts: dict[str, int], support: list[str]) -> list[Fraction]:
    total = sum(counts.values())
    return [Fraction(counts.get(u, 0), total) for u in support]


def exact_smooth(probs: list[Fraction], epsilon: float) -> list[Fraction]:
    # Fraction(float) is the exact binary value the implementation uses
    eps = Fraction(epsilon)
    return [p if p > eps else eps for p in probs]


# ---------------------------------------------------------------------------
# High-precision information measures (bits)


def entropy_bits(probs: list[Fraction]) -> mpmath.mpf:
    return -mpmath.fsum(_mpf(p) * _log2(p) for p in probs if p > 0)


def cross_entropy_bits(p: list[Fraction], q: list[Fraction]) -> mpmath.mpf:
    assert all(qi > 0 for pi, qi in zip(p, q) if pi > 0), "q must be positive on p's support"
    return -mpmath.fsum(_mpf(pi) * _log2(qi) for pi, qi in zip(p, q) if pi > 0)


def kl_bits(p: list[Fraction], q: list[Fraction]) -> mpmath.mpf:
    return cross_entropy_bits(p, q) - entropy_bits(p)


def js_bits(p: list[Fraction], q: list[Fraction]) -> mpmath.mpf:
    mid = [(pi + qi) / 2 for pi, qi in zip(p, q)]
    return entropy_bits(mid) - (entropy_bits(p) + entropy_bits(q)) / 2


def sce_ratio(p: list[Fraction], q_smoothed: list[Fraction]) -> mpmath.mpf | None:
    """Raw H(Q)/H(P,Q) ratio; None marks the point-mass degenerate case."""
    if max(q_smoothed) == 1:
        return None
    return entropy_bits(q_smoothed) / cross_entropy_bits(p, q_smoothed)


def pipeline_scores(
    counts_a: dict[str, int],
    counts_b: dict[str, int],
    epsilon: float = 1e-12,
    clamp: bool = True,
) -> dict[str, float]:
    """Full pair scoring from two symbol multisets, entirely in exact/mp math.

    Mirrors the documented pipeline semantics: the directed score smooths
    the second distribution, the symmetric score uses both unsmoothed.
    """
    support = joint_support(counts_a, counts_b)
    p = exact_probs(counts_a, support)
    q = exact_probs(counts_b, support)
    q_s = exact_smooth(q, epsilon)

    jsd_sim = 1 - js_bits(p, q)

    ratio = sce_ratio(p, q_s)
    if ratio is None:
        j = q_s.index(max(q_s))
        sce_raw = mpmath.mpf(1) if p[j] == 1 else mpmath.mpf(0)
    else:
        sce_raw = ratio
    sce = min(sce_raw, mpmath.mpf(1)) if clamp else sce_raw

    return {
        "jsd": float(jsd_sim),
        "sce": float(sce),
        "sce_raw": float(sce_raw),
    }


def pair_task_scores(
    multisets: list[dict[str, int]], epsilon: float = 1e-12, clamp: bool = True
) -> dict[str, float]:
    """Task-level averages: unordered pairs for jsd, ordered pairs for sce."""
    k = len(multisets)
    jsd_vals = []
    sce_vals = []
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            s = pipeline_scores(multisets[i], multisets[j], epsilon, clamp)
            sce_vals.append(s["sce"])
            if i < j:
                jsd_vals.append(s["jsd"])
    return {
        "jsd": float(mpmath.fsum(jsd_vals) / len(jsd_vals)),
        "sce": float(mpmath.fsum(sce_vals) / len(sce_vals)),
    }


# ---------------------------------------------------------------------------
# Independent subtree enumeration (the tree-walk oracle)


def walk_symbol_shapes(tree, depth: int, scheme: str) -> Counter:
    """Enumerate one depth-bounded subtree shape per node, as nested tuples.

    Shapes: frontier nodes are ``(type,)``; interior nodes are
    ``(type, children)`` for the structural scheme and
    ``(type, lexeme_or_None, children)`` for the value scheme, with None
    standing in for the internal-node sentinel.
    """
    assert scheme in ("structural", "value")

    def shape(nid: int, remaining: int):
        node = tree.nodes[nid]
        if remaining == 0:
            return (node.node_type,)
        kids = tuple(shape(c, remaining - 1) for c in node.children)
        if scheme == "value":
            lex = tree.lexeme(nid) if not node.children else None
            return (node.node_type, lex, kids)
        return (node.node_type, kids)

    return Counter(shape(nid, depth) for nid in range(len(tree.nodes)))


# ---------------------------------------------------------------------------
# Exact Pearson correlation


def pearson_exact(xs: list[float], ys: list[float]) -> float:
    n = len(xs)
    fx = [Fraction(x) for x in xs]
    fy = [Fraction(y) for y in ys]
    mx = sum(fx, Fraction(0)) / n
    my = sum(fy, Fraction(0)) / n
    sxy = sum(((x - mx) * (y - my) for x, y in zip(fx, fy)), Fraction(0))
    sxx = sum(((x - mx) ** 2 for x in fx), Fraction(0))
    syy = sum(((y - my) ** 2 for y in fy), Fraction(0))
    if sxx == 0 or syy == 0:
        return float("nan")
    return float(_mpf(sxy) / mpmath.sqrt(_mpf(sxx * syy)))
