"""Similarity aggregation: per-class-pair structural combination weights,
the two-stage weighted combination, and the pointwise / harmony baseline
strategies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alignment import SimilarityMatrix, same_kind_mask
from .errors import ContractViolationError
from .ontology import CLASS, Ontology, StructuralProfile, structural_profile

STRATEGIES = ("hscw", "max", "min", "average", "sigmoid", "experimental", "harmony")
POINTWISE_MODES = ("max", "min", "average", "sigmoid")


@dataclass(frozen=True)
class StrategyConfig:
    strategy: str = "hscw"
    experimental_w: float = 0.5
    non_class_w: float = 0.5
    sigmoid_slope: float = 12.0
    sigmoid_center: float = 0.5

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy: {self.strategy!r}")
        if not 0.0 <= self.experimental_w <= 1.0:
            raise ValueError("experimental_w must lie in [0, 1]")
        if not 0.0 <= self.non_class_w <= 1.0:
            raise ValueError("non_class_w must lie in [0, 1]")
        if self.sigmoid_slope <= 0:
            raise ValueError("sigmoid_slope must be positive")


DEFAULT_STRATEGY = StrategyConfig()


@dataclass(frozen=True)
class StructuralDelta:
    """The six normalized count differences, their average, and the
    resulting combination weight (1 - average)."""

    sup: float
    sub: float
    depth: float
    ins: float
    prop: float
    sib: float
    ave: float
    hscw: float


@dataclass
class WeightMatrix:
    """Per-cell combination weights, shaped like the similarity matrices
    for the same ontology pair. The complementary weight is 1 - cell."""

    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    row_kinds: tuple[str, ...]
    col_kinds: tuple[str, ...]
    cells: np.ndarray

    def __post_init__(self):
        self.cells = np.asarray(self.cells, dtype=np.float64)
        if self.cells.shape != (len(self.row_ids), len(self.col_ids)):
            raise ContractViolationError("weight shape does not match id lists")
        if self.cells.size and (self.cells.min() < 0.0 or self.cells.max() > 1.0):
            raise ContractViolationError("weight values outside [0, 1]")


def feature_term(a: int, b: int) -> float:
    """|a - b| / (a + b), with 0 when both counts are zero."""
    if a < 0 or b < 0:
        raise ValueError("counts must be non-negative")
    total = a + b
    if total == 0:
        return 0.0
    return abs(a - b) / total


def hscw_pair(p1: StructuralProfile, p2: StructuralProfile) -> StructuralDelta:
    """Structural combination weight for one class pair: one minus the
    average of the six normalized count differences."""
    sup = feature_term(p1.sup, p2.sup)
    sub = feature_term(p1.sub, p2.sub)
    depth = feature_term(p1.depth, p2.depth)
    ins = feature_term(p1.ins, p2.ins)
    prop = feature_term(p1.prop, p2.prop)
    sib = feature_term(p1.sib, p2.sib)
    ave = (sup + sub + depth + ins + prop + sib) / 6
    return StructuralDelta(sup=sup, sub=sub, depth=depth, ins=ins, prop=prop,
                           sib=sib, ave=ave, hscw=1 - ave)


def hscw_matrix(
    ont1: Ontology, ont2: Ontology, cfg: StrategyConfig = DEFAULT_STRATEGY
) -> WeightMatrix:
    """Weight matrix over all entity pairs: structural weights on the
    class block, the configured homogeneous weight on the property and
    instance blocks, zero across kinds."""
    rows, cols = ont1.entity_ids, ont2.entity_ids
    rkinds, ckinds = ont1.entity_kinds, ont2.entity_kinds
    profiles1 = {c.id: structural_profile(ont1, c.id) for c in ont1.classes}
    profiles2 = {c.id: structural_profile(ont2, c.id) for c in ont2.classes}
    cells = np.zeros((len(rows), len(cols)))
    for i, (e1, k1) in enumerate(zip(rows, rkinds)):
        for j, (e2, k2) in enumerate(zip(cols, ckinds)):
            if k1 != k2:
                continue
            if k1 == CLASS:
                cells[i, j] = hscw_pair(profiles1[e1], profiles2[e2]).hscw
            else:
                cells[i, j] = cfg.non_class_w
    return WeightMatrix(rows, cols, rkinds, ckinds, cells)


def constant_weight_matrix(ont1: Ontology, ont2: Ontology, w: float) -> WeightMatrix:
    """Homogeneous weight matrix: every cell equal to w."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"weight out of range: {w!r}")
    rows, cols = ont1.entity_ids, ont2.entity_ids
    return WeightMatrix(rows, cols, ont1.entity_kinds, ont2.entity_kinds,
                        np.full((len(rows), len(cols)), w))


def _check_same_grid(matrices: list[SimilarityMatrix]):
    first = matrices[0]
    for m in matrices[1:]:
        if m.row_ids != first.row_ids or m.col_ids != first.col_ids:
            raise ContractViolationError("matrices cover different entity grids")


def _result(like: SimilarityMatrix, cells: np.ndarray) -> SimilarityMatrix:
    # Aggregation must preserve kind blocking even for maps (sigmoid) that
    # send 0 to a positive value.
    blocked = cells * same_kind_mask(like.row_kinds, like.col_kinds)
    return SimilarityMatrix(like.row_ids, like.col_ids, like.row_kinds,
                            like.col_kinds, like.onto_names,
                            np.clip(blocked, 0.0, 1.0))


def twostage_aggregate(
    gmo: SimilarityMatrix,
    vdoc: SimilarityMatrix,
    isub: SimilarityMatrix,
    W: WeightMatrix,
) -> SimilarityMatrix:
    """Two-stage weighted combination: the structural matrix first blends
    with the document matrix under W, then the result blends with the
    string matrix under W again."""
    _check_same_grid([gmo, vdoc, isub])
    if W.cells.shape != gmo.cells.shape:
        raise ContractViolationError("weight matrix shape mismatch")
    w = W.cells
    s1 = w * gmo.cells + (1.0 - w) * vdoc.cells
    out = w * s1 + (1.0 - w) * isub.cells
    # Roundoff guard: a nested convex combination must stay within the
    # cellwise envelope of its inputs.
    stack = np.stack([gmo.cells, vdoc.cells, isub.cells])
    out = np.clip(out, stack.min(axis=0), stack.max(axis=0))
    return _result(gmo, out)


def pointwise_aggregate(
    mode: str,
    matrices: list[SimilarityMatrix],
    cfg: StrategyConfig = DEFAULT_STRATEGY,
) -> SimilarityMatrix:
    """Cellwise max / min / mean, or the mean of a sigmoid applied to each
    input matrix."""
    if mode not in POINTWISE_MODES:
        raise ValueError(f"unknown mode: {mode!r}")
    if len(matrices) < 2:
        raise ValueError("need at least two matrices")
    _check_same_grid(matrices)
    stack = np.stack([m.cells for m in matrices])
    if mode == "max":
        cells = stack.max(axis=0)
    elif mode == "min":
        cells = stack.min(axis=0)
    elif mode == "average":
        cells = stack.mean(axis=0)
    else:
        cells = (1.0 / (1.0 + np.exp(-cfg.sigmoid_slope * (stack - cfg.sigmoid_center)))).mean(axis=0)
    return _result(matrices[0], cells)


def harmony_of(M: SimilarityMatrix) -> float:
    """Fraction of cells that are the strict maximum of both their row and
    their column, out of min(rows, cols)."""
    cells = M.cells
    if cells.size == 0:
        raise ValueError("harmony of an empty matrix is undefined")
    row_max = cells.max(axis=1, keepdims=True)
    col_max = cells.max(axis=0, keepdims=True)
    row_unique = (cells == row_max).sum(axis=1, keepdims=True) == 1
    col_unique = (cells == col_max).sum(axis=0, keepdims=True) == 1
    double = (cells == row_max) & (cells == col_max) & row_unique & col_unique
    return float(double.sum()) / min(cells.shape)


def harmony_aggregate(matrices: list[SimilarityMatrix]) -> SimilarityMatrix:
    """Harmony-weighted mean of the input matrices; plain mean when every
    harmony is zero."""
    if len(matrices) < 2:
        raise ValueError("need at least two matrices")
    _check_same_grid(matrices)
    hs = [harmony_of(m) for m in matrices]
    total = sum(hs)
    stack = np.stack([m.cells for m in matrices])
    if total == 0.0:
        cells = stack.mean(axis=0)
    else:
        weights = np.array(hs)[:, None, None] / total
        cells = (weights * stack).sum(axis=0)
    return _result(matrices[0], cells)
