"""Structural stability metrics for code samples.

Parses repeated generations of a program into language-agnostic trees,
turns each tree into a multiset of depth-bounded subtree symbols, and
scores pairwise similarity of the resulting empirical distributions with
a directed cross-entropy ratio and a symmetric Jensen-Shannon similarity.
"""

from .codec import (
    EncodingScheme,
    SubtreeMultiset,
    SubtreeSymbol,
    decode_symbol,
    encode_subtree,
    extract_symbols,
)
from .distribution import (
    DEFAULT_EPSILON,
    EmpiricalDistribution,
    JointSupport,
    empirical,
    joint_support,
    smooth,
)
from .frontend import (
    GrammarRegistry,
    LanguageId,
    Node,
    ParseTree,
    default_registry,
    node_count,
    parse,
    register_grammar,
)
from .harness import (
    CorrelationMatrix,
    RunConfig,
    SkippedTask,
    StabilityReport,
    TaskRecord,
    TaskScore,
    load_tasks_jsonl,
    pearson_matrix,
    run_dataset,
    score_pair,
    score_task,
    write_report,
)
from .metrics import (
    MetricKind,
    MetricScore,
    cross_entropy,
    js_divergence,
    jsd_similarity,
    kl_divergence,
    sce_similarity,
    shannon_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationMatrix",
    "DEFAULT_EPSILON",
    "EmpiricalDistribution",
    "EncodingScheme",
    "GrammarRegistry",
    "JointSupport",
    "LanguageId",
    "MetricKind",
    "MetricScore",
    "Node",
    "ParseTree",
    "RunConfig",
    "SkippedTask",
    "StabilityReport",
    "SubtreeMultiset",
    "SubtreeSymbol",
    "TaskRecord",
    "TaskScore",
    "cross_entropy",
    "decode_symbol",
    "default_registry",
    "empirical",
    "encode_subtree",
    "extract_symbols",
    "joint_support",
    "js_divergence",
    "jsd_similarity",
    "kl_divergence",
    "load_tasks_jsonl",
    "node_count",
    "parse",
    "pearson_matrix",
    "register_grammar",
    "run_dataset",
    "sce_similarity",
    "score_pair",
    "score_task",
    "shannon_entropy",
    "smooth",
    "write_report",
]
