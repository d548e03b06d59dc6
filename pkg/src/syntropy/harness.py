"""Dataset-level stability scoring and correlation analysis.

For each task (one prompt's k generated samples) every pair of parseable
samples is scored under the requested encodings: the symmetric score is
averaged over unordered pairs, the directed score over all ordered pairs,
which makes task scores invariant to sample order. Unparseable samples
are dropped and counted; a task proceeds while at least two samples
remain. Reports are fully deterministic: tasks are merged in task_id
order, means use exact summation, and serialization is key-sorted with no
timestamps, so identical inputs produce byte-identical report files.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, TextIO

import numpy as np

from .codec import EncodingScheme, SubtreeMultiset, extract_symbols
from .distribution import DEFAULT_EPSILON, empirical, joint_support, smooth
from .errors import (
    DatasetFormatError,
    EmptyReportError,
    EmptySourceError,
    InsufficientDataError,
    ParseFailureError,
    UnknownLanguageError,
)
from .frontend import GrammarRegistry, default_registry
from .metrics import jsd_similarity, sce_similarity

logger = logging.getLogger(__name__)

ENCODING_NAMES = ("structural", "value")
METRIC_NAMES = ("sce", "jsd")


@dataclass(frozen=True)
class RunConfig:
    """Pipeline knobs; defaults mirror the shipped protocol (k=5, d=1)."""

    depth: int = 1
    epsilon: float = DEFAULT_EPSILON
    encodings: tuple[str, ...] = ENCODING_NAMES
    metrics: tuple[str, ...] = METRIC_NAMES
    clamp_sce: bool = True
    strict_parse: bool = False
    workers: int = 1
    max_samples: int | None = 5
    renormalize_smoothing: bool = False

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.max_samples is not None and self.max_samples < 2:
            raise ValueError("max_samples must be >= 2")
        if not self.encodings or any(e not in ENCODING_NAMES for e in self.encodings):
            raise ValueError(f"encodings must be a non-empty subset of {ENCODING_NAMES}")
        if not self.metrics or any(m not in METRIC_NAMES for m in self.metrics):
            raise ValueError(f"metrics must be a non-empty subset of {METRIC_NAMES}")

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "epsilon": self.epsilon,
            "encodings": list(self.encodings),
            "metrics": list(self.metrics),
            "clamp_sce": self.clamp_sce,
            "strict_parse": self.strict_parse,
            "workers": self.workers,
            "max_samples": self.max_samples,
            "renormalize_smoothing": self.renormalize_smoothing,
        }


@dataclass(frozen=True)
class TaskRecord:
    """One prompt's samples; external metric columns ride along for correlation."""

    task_id: str
    language: str
    samples: tuple[str, ...]
    external_metrics: Mapping[str, float] | None = None

    def __post_init__(self):
        if not self.task_id:
            raise ValueError("task_id must be non-empty")
        if len(self.samples) < 2:
            raise ValueError(f"task {self.task_id!r} needs >= 2 samples")


@dataclass(frozen=True)
class TaskScore:
    task_id: str
    scores: dict[str, float]
    pair_count: int
    ordered_pair_count: int
    parse_failures: int
    external_metrics: Mapping[str, float] | None = None


@dataclass(frozen=True)
class SkippedTask:
    task_id: str
    reason: str
    parse_failures: int = 0


@dataclass(frozen=True)
class StabilityReport:
    per_task: tuple[TaskScore, ...]
    skipped: tuple[SkippedTask, ...]
    aggregate: dict[str, float]
    config: RunConfig
    provenance: dict[str, object]

    def to_dict(self) -> dict:
        return {
            "aggregate": self.aggregate,
            "config": self.config.to_dict(),
            "per_task": [
                {
                    "task_id": t.task_id,
                    "scores": t.scores,
                    "pair_count": t.pair_count,
                    "ordered_pair_count": t.ordered_pair_count,
                    "parse_failures": t.parse_failures,
                    "external_metrics": dict(t.external_metrics) if t.external_metrics else None,
                }
                for t in self.per_task
            ],
            "skipped_tasks": [
                {"task_id": s.task_id, "reason": s.reason, "parse_failures": s.parse_failures}
                for s in self.skipped
            ],
            "provenance": self.provenance,
        }


def _score_key(metric: str, encoding: str) -> str:
    return metric if encoding == "value" else f"{metric}_structural"


def score_pair(
    a: SubtreeMultiset,
    b: SubtreeMultiset,
    epsilon: float = DEFAULT_EPSILON,
    clamp: bool = True,
    renormalize: bool = False,
) -> dict[str, float]:
    """All pair scores for two multisets: symmetric plus both directions."""
    support = joint_support(a, b)
    p = empirical(a, support)
    q = empirical(b, support)
    p_s = smooth(p, epsilon, renormalize=renormalize)
    q_s = smooth(q, epsilon, renormalize=renormalize)
    sce_ab = sce_similarity(p, q_s, clamp=clamp)
    sce_ba = sce_similarity(q, p_s, clamp=clamp)
    return {
        "jsd": jsd_similarity(p, q).value,
        "sce_ab": sce_ab.value,
        "sce_ba": sce_ba.value,
        "sce_ab_raw": sce_ab.raw_value,
        "sce_ba_raw": sce_ba.raw_value,
    }


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values)


def score_task(
    task: TaskRecord, config: RunConfig, registry: GrammarRegistry | None = None
) -> TaskScore | SkippedTask:
    """Average pairwise scores for one task, or a skip record."""
    registry = registry or default_registry()
    samples = task.samples[: config.max_samples] if config.max_samples else task.samples

    trees = []
    failures = 0
    for source in samples:
        try:
            trees.append(registry.parse(task.language, source, strict=config.strict_parse))
        except (ParseFailureError, EmptySourceError) as exc:
            logger.debug("task %s: sample failed to parse: %s", task.task_id, exc)
            failures += 1
        except UnknownLanguageError as exc:
            return SkippedTask(task_id=task.task_id, reason=str(exc))
    if len(trees) < 2:
        return SkippedTask(
            task_id=task.task_id,
            reason=f"only {len(trees)} of {len(samples)} samples parsed",
            parse_failures=failures,
        )

    k = len(trees)
    scores: dict[str, float] = {}
    for encoding in config.encodings:
        scheme = EncodingScheme.from_name(encoding)
        multisets = [extract_symbols(tree, config.depth, scheme) for tree in trees]
        jsd_values: list[float] = []
        sce_values: list[float] = []
        for i in range(k):
            for j in range(i + 1, k):
                pair = score_pair(
                    multisets[i],
                    multisets[j],
                    epsilon=config.epsilon,
                    clamp=config.clamp_sce,
                    renormalize=config.renormalize_smoothing,
                )
                jsd_values.append(pair["jsd"])
                sce_values.append(pair["sce_ab"])
                sce_values.append(pair["sce_ba"])
        if "jsd" in config.metrics:
            scores[_score_key("jsd", encoding)] = _mean(jsd_values)
        if "sce" in config.metrics:
            scores[_score_key("sce", encoding)] = _mean(sce_values)

    return TaskScore(
        task_id=task.task_id,
        scores=scores,
        pair_count=k * (k - 1) // 2,
        ordered_pair_count=k * (k - 1),
        parse_failures=failures,
        external_metrics=task.external_metrics,
    )


def run_dataset(
    tasks: Iterable[TaskRecord],
    config: RunConfig,
    registry: GrammarRegistry | None = None,
    dataset_path: str = "",
) -> StabilityReport:
    """Score every task and aggregate; deterministic given inputs and config."""
    registry = registry or default_registry()
    task_list = list(tasks)
    if not task_list:
        raise EmptyReportError("dataset contains no tasks")

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(lambda t: score_task(t, config, registry), task_list))
    else:
        outcomes = [score_task(t, config, registry) for t in task_list]

    scored = sorted((o for o in outcomes if isinstance(o, TaskScore)), key=lambda t: t.task_id)
    skipped = sorted((o for o in outcomes if isinstance(o, SkippedTask)), key=lambda s: s.task_id)
    if not scored:
        raise EmptyReportError("no task had two parseable samples")

    metric_keys = sorted(scored[0].scores)
    aggregate = {key: _mean([t.scores[key] for t in scored]) for key in metric_keys}
    return StabilityReport(
        per_task=tuple(scored),
        skipped=tuple(skipped),
        aggregate=aggregate,
        config=config,
        provenance={"dataset": dataset_path, "grammar_versions": registry.grammar_versions()},
    )


# ---------------------------------------------------------------------------
# Pearson correlation


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric Pearson matrix; NaN marks undefined (zero-variance) entries."""

    metric_names: tuple[str, ...]
    entries: np.ndarray

    def write_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow([""] + list(self.metric_names))
        for name, row in zip(self.metric_names, self.entries):
            writer.writerow([name] + ["" if math.isnan(v) else repr(float(v)) for v in row])


def _pearson(xs: list[float], ys: list[float]) -> float:
    n = len(xs)
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    dx = [x - mean_x for x in xs]
    dy = [y - mean_y for y in ys]
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    if sxx == 0.0 or syy == 0.0:
        return math.nan
    return sxy / math.sqrt(sxx * syy)


def pearson_matrix(report: StabilityReport, include_external: bool = True) -> CorrelationMatrix:
    """Pearson coefficients between per-task metric columns.

    Columns are the internal metric keys plus, when requested, every
    external metric present on all scored tasks (externals with gaps are
    dropped with a warning so all retained columns are complete).
    """
    tasks = report.per_task
    if len(tasks) < 2:
        raise InsufficientDataError("correlation requires at least 2 scored tasks")

    columns: dict[str, list[float]] = {
        key: [t.scores[key] for t in tasks] for key in sorted(tasks[0].scores)
    }
    if include_external:
        names = sorted({name for t in tasks for name in (t.external_metrics or {})})
        for name in names:
            values = [
                (t.external_metrics or {}).get(name) for t in tasks
            ]
            if any(v is None for v in values):
                logger.warning("external metric %r missing for some tasks; column dropped", name)
                continue
            columns[f"external:{name}"] = [float(v) for v in values]

    names = tuple(columns)
    size = len(names)
    entries = np.full((size, size), math.nan, dtype=np.float64)
    for i in range(size):
        xi = columns[names[i]]
        mean_i = math.fsum(xi) / len(xi)
        var_i = math.fsum((x - mean_i) ** 2 for x in xi)
        entries[i, i] = 1.0 if var_i > 0.0 else math.nan
        for j in range(i + 1, size):
            r = _pearson(xi, columns[names[j]])
            entries[i, j] = r
            entries[j, i] = r
    return CorrelationMatrix(metric_names=names, entries=entries)


# ---------------------------------------------------------------------------
# Dataset and report I/O


def load_tasks_jsonl(path: str | Path) -> list[TaskRecord]:
    """Read one task per line; raises DatasetFormatError with the line number."""
    tasks: list[TaskRecord] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"invalid JSON: {exc.msg}", line=lineno) from None
            tasks.append(_task_from_obj(obj, lineno))
    return tasks


def _task_from_obj(obj: object, lineno: int) -> TaskRecord:
    if not isinstance(obj, dict):
        raise DatasetFormatError("task record must be a JSON object", line=lineno)
    task_id = obj.get("task_id")
    language = obj.get("language")
    samples = obj.get("samples")
    external = obj.get("external_metrics")
    if not isinstance(task_id, str) or not task_id:
        raise DatasetFormatError("task_id must be a non-empty string", line=lineno)
    if not isinstance(language, str) or not language:
        raise DatasetFormatError("language must be a non-empty string", line=lineno)
    if (
        not isinstance(samples, list)
        or len(samples) < 2
        or any(not isinstance(s, str) for s in samples)
    ):
        raise DatasetFormatError("samples must be a list of >= 2 strings", line=lineno)
    if external is not None:
        if not isinstance(external, dict) or any(
            not isinstance(k, str) or isinstance(v, bool) or not isinstance(v, (int, float))
            for k, v in external.items()
        ):
            raise DatasetFormatError("external_metrics must map names to numbers", line=lineno)
        external = {k: float(v) for k, v in external.items()}
    return TaskRecord(
        task_id=task_id, language=language, samples=tuple(samples), external_metrics=external
    )


def report_json(report: StabilityReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def write_report(report: StabilityReport, path: str | Path) -> None:
    Path(path).write_text(report_json(report), encoding="utf-8")


def write_scores_csv(report: StabilityReport, path: str | Path) -> None:
    metric_keys = sorted(report.per_task[0].scores) if report.per_task else []
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["task_id", *metric_keys, "pair_count", "ordered_pair_count", "parse_failures"]
        )
        for t in report.per_task:
            writer.writerow(
                [
                    t.task_id,
                    *[repr(t.scores[k]) for k in metric_keys],
                    t.pair_count,
                    t.ordered_pair_count,
                    t.parse_failures,
                ]
            )


def load_report_json(path: str | Path) -> StabilityReport:
    """Rehydrate a report written by :func:`write_report` (for correlation)."""
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    try:
        config = RunConfig(
            depth=data["config"]["depth"],
            epsilon=data["config"]["epsilon"],
            encodings=tuple(data["config"]["encodings"]),
            metrics=tuple(data["config"]["metrics"]),
            clamp_sce=data["config"]["clamp_sce"],
            strict_parse=data["config"]["strict_parse"],
            workers=data["config"]["workers"],
            max_samples=data["config"]["max_samples"],
            renormalize_smoothing=data["config"].get("renormalize_smoothing", False),
        )
        per_task = tuple(
            TaskScore(
                task_id=t["task_id"],
                scores=dict(t["scores"]),
                pair_count=t["pair_count"],
                ordered_pair_count=t["ordered_pair_count"],
                parse_failures=t["parse_failures"],
                external_metrics=t.get("external_metrics"),
            )
            for t in data["per_task"]
        )
        skipped = tuple(
            SkippedTask(
                task_id=s["task_id"], reason=s["reason"], parse_failures=s["parse_failures"]
            )
            for s in data.get("skipped_tasks", [])
        )
        return StabilityReport(
            per_task=per_task,
            skipped=skipped,
            aggregate=dict(data["aggregate"]),
            config=config,
            provenance=dict(data.get("provenance", {})),
        )
    except (KeyError, TypeError) as exc:
        raise DatasetFormatError(f"report file is missing field: {exc}") from None
