"""Precision / recall / F-measure against reference alignments, suite-level
CSV reporting, and the homogeneous-weight sweep experiment."""

from __future__ import annotations

from dataclasses import dataclass

from .aggregate import constant_weight_matrix, twostage_aggregate
from .alignment import Alignment, extract_alignment
from .ontology import Ontology


@dataclass(frozen=True)
class EvaluationReport:
    precision: float
    recall: float
    fmeasure: float
    alpha: float
    found: int
    reference: int
    correct: int


def evaluate(found: Alignment, reference: Alignment, alpha: float = 1.0) -> EvaluationReport:
    """Compare entity-pair sets; confidence values are ignored.

    An empty side scores 1.0 when the other side is empty too, else 0.0.
    F = (1 + alpha) * P * R / (alpha * P + R), 0 when P = R = 0.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if found.source_onto_names != reference.source_onto_names:
        raise ValueError(
            f"alignments cover different ontology pairs: "
            f"{found.source_onto_names} vs {reference.source_onto_names}"
        )
    f_pairs = found.pair_set()
    r_pairs = reference.pair_set()
    correct = len(f_pairs & r_pairs)
    if f_pairs:
        precision = correct / len(f_pairs)
    else:
        precision = 1.0 if not r_pairs else 0.0
    if r_pairs:
        recall = correct / len(r_pairs)
    else:
        recall = 1.0 if not f_pairs else 0.0
    denom = alpha * precision + recall
    fmeasure = (1 + alpha) * precision * recall / denom if denom > 0 else 0.0
    return EvaluationReport(precision=precision, recall=recall, fmeasure=fmeasure,
                            alpha=alpha, found=len(f_pairs), reference=len(r_pairs),
                            correct=correct)


MEAN_ROW = "__mean__"


def evaluate_suite(
    results: list[tuple[str, str, Alignment, Alignment]],
    alpha: float = 1.0,
    suite_name: str = "suite",
) -> str:
    """CSV report with one row per (test, strategy) plus per-strategy mean
    rows. Rows are sorted by (test, strategy); means use test '__mean__'."""
    if not results:
        raise ValueError("no results to report")
    scored = []
    for test, strategy, found, reference in results:
        rep = evaluate(found, reference, alpha)
        scored.append((test, strategy, rep))
    scored.sort(key=lambda t: (t[0], t[1]))

    lines = ["suite,test,strategy,precision,recall,fmeasure"]
    by_strategy: dict[str, list[EvaluationReport]] = {}
    for test, strategy, rep in scored:
        by_strategy.setdefault(strategy, []).append(rep)
        lines.append(f"{suite_name},{test},{strategy},"
                     f"{rep.precision:.4f},{rep.recall:.4f},{rep.fmeasure:.4f}")
    for strategy in sorted(by_strategy):
        reps = by_strategy[strategy]
        mp = sum(r.precision for r in reps) / len(reps)
        mr = sum(r.recall for r in reps) / len(reps)
        mf = sum(r.fmeasure for r in reps) / len(reps)
        lines.append(f"{suite_name},{MEAN_ROW},{strategy},{mp:.4f},{mr:.4f},{mf:.4f}")
    return "\n".join(lines) + "\n"


def weight_sweep(
    ont1: Ontology,
    ont2: Ontology,
    reference: Alignment,
    weights: list[float],
    threshold: float = 0.5,
    *,
    matrices=None,
) -> list[tuple[float, float]]:
    """F-measure of the full pipeline under a homogeneous constant weight,
    for each requested weight. The matcher matrices are computed once and
    shared across weights."""
    if not weights:
        raise ValueError("weights must be non-empty")
    for w in weights:
        if not 0.0 <= w <= 1.0:
            raise ValueError(f"weight out of range: {w!r}")
    if matrices is None:
        from .pipeline import PipelineConfig, compute_matcher_matrices

        matrices = compute_matcher_matrices(ont1, ont2, PipelineConfig(threshold=threshold))
    points = []
    for w in weights:
        W = constant_weight_matrix(ont1, ont2, w)
        combined = twostage_aggregate(matrices.gmo, matrices.vdoc, matrices.isub, W)
        found = extract_alignment(combined, threshold)
        rep = evaluate(found, reference, alpha=1.0)
        points.append((w, rep.fmeasure))
    return points


def sweep_csv(points: list[tuple[float, float]]) -> str:
    lines = ["weight,fmeasure"]
    for w, f in points:
        lines.append(f"{w:.4f},{f:.4f}")
    return "\n".join(lines) + "\n"
