from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from syntropy.distribution import EmpiricalDistribution, JointSupport
from syntropy.frontend.tree import Node, ParseTree

FIXTURE_DIR = Path(__file__).parent / "fixtures"
GOLDEN_DIR = Path(__file__).parent / "golden"


def fixture_files() -> list[tuple[str, Path]]:
    files = [("python", p) for p in sorted((FIXTURE_DIR / "python").glob("*.py"))]
    files += [("sql", p) for p in sorted((FIXTURE_DIR / "sql").glob("*.sql"))]
    return files


def build_tree(shape, language: str = "synthetic") -> ParseTree:
    """Tree from nested tuples: (type, "lexeme") for leaves, (type, [children]).

    Leaf lexemes are laid out left to right to form the source string, so
    spans nest by construction.
    """
    nodes: list[Node | None] = []
    chunks: list[str] = []
    offset = 0

    def walk(sh) -> int:
        nonlocal offset
        my_id = len(nodes)
        nodes.append(None)
        node_type, payload = sh
        if isinstance(payload, str):
            start = offset
            chunks.append(payload)
            offset += len(payload.encode("utf-8"))
            nodes[my_id] = Node(node_type, (start, offset), ())
            return my_id
        start = offset
        child_ids = tuple(walk(c) for c in payload)
        nodes[my_id] = Node(node_type, (start, offset), child_ids)
        return my_id

    walk(shape)
    return ParseTree.build(nodes, root=0, source="".join(chunks), language=language)


def heap_tree(n: int, branching: int = 8, type_cycle: int = 17) -> ParseTree:
    """Synthetic n-node tree shaped like a b-ary heap, built without recursion."""
    nodes = []
    for i in range(n):
        kids = tuple(j for j in range(branching * i + 1, branching * i + branching + 1) if j < n)
        nodes.append(Node(f"T{i % type_cycle}", (0, 1), kids))
    return ParseTree.build(nodes, root=0, source="x", language="synthetic")


def make_dist(probs, support: JointSupport | None = None, total: int = 1000) -> EmpiricalDistribution:
    probs = np.asarray(probs, dtype=np.float64)
    if support is None:
        support = JointSupport.from_symbols([f"s{i:03d}" for i in range(len(probs))])
    return EmpiricalDistribution(support=support, probs=probs, total=total)


def dist_pair(p_vals, q_vals, total: int = 1000):
    support = JointSupport.from_symbols([f"s{i:03d}" for i in range(len(p_vals))])
    return make_dist(p_vals, support, total), make_dist(q_vals, support, total)


def counts_dist(counts: dict[str, int], support_symbols) -> EmpiricalDistribution:
    support = JointSupport.from_symbols(support_symbols)
    total = sum(counts.values())
    probs = np.zeros(len(support), dtype=np.float64)
    for sym, c in counts.items():
        probs[support.index_of(sym)] = c / total
    return EmpiricalDistribution(support=support, probs=probs, total=total)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def random_dist_pair(rng: np.random.Generator, m: int):
    """Random pair of count-based distributions on a shared support of size m."""
    support = JointSupport.from_symbols([f"s{i:03d}" for i in range(m)])
    while True:
        counts_p = rng.integers(0, 8, size=m)
        counts_q = rng.integers(0, 8, size=m)
        # every support symbol must occur in at least one side
        if counts_p.sum() > 0 and counts_q.sum() > 0 and np.all(counts_p + counts_q > 0):
            break
    p = EmpiricalDistribution(
        support=support,
        probs=counts_p / counts_p.sum(),
        total=int(counts_p.sum()),
    )
    q = EmpiricalDistribution(
        support=support,
        probs=counts_q / counts_q.sum(),
        total=int(counts_q.sum()),
    )
    return p, q
