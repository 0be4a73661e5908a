"""Similarity matrices, one-to-one alignment extraction, and alignment
file I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import AlignmentFormatError, ContractViolationError
from .ontology import Ontology

EQUIVALENCE = "="


@dataclass(frozen=True)
class Correspondence:
    e1: str
    e2: str
    sim: float
    relation: str = EQUIVALENCE

    def __post_init__(self):
        if not 0.0 <= self.sim <= 1.0:
            raise ValueError(f"sim out of range: {self.sim!r}")
        if self.relation != EQUIVALENCE:
            raise ValueError(f"unsupported relation: {self.relation!r}")


@dataclass(frozen=True)
class Alignment:
    """One-to-one set of correspondences between two ontologies."""

    pairs: tuple[Correspondence, ...]
    source_onto_names: tuple[str, str]

    def __post_init__(self):
        seen1, seen2 = set(), set()
        for c in self.pairs:
            if c.e1 in seen1:
                raise ValueError(f"entity matched twice: {c.e1!r}")
            if c.e2 in seen2:
                raise ValueError(f"entity matched twice: {c.e2!r}")
            seen1.add(c.e1)
            seen2.add(c.e2)

    def pair_set(self) -> set[tuple[str, str]]:
        return {(c.e1, c.e2) for c in self.pairs}


@dataclass
class SimilarityMatrix:
    """Kind-blocked grid of per-pair scores in [0, 1].

    Rows follow the first ontology's declaration order, columns the
    second's; cells for entities of different kinds are zero.
    """

    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    row_kinds: tuple[str, ...]
    col_kinds: tuple[str, ...]
    onto_names: tuple[str, str]
    cells: np.ndarray
    _row_index: dict = field(init=False, repr=False, compare=False)
    _col_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.cells = np.asarray(self.cells, dtype=np.float64)
        if self.cells.shape != (len(self.row_ids), len(self.col_ids)):
            raise ContractViolationError(
                f"cell shape {self.cells.shape} does not match id lists "
                f"({len(self.row_ids)} x {len(self.col_ids)})"
            )
        if len(self.row_kinds) != len(self.row_ids) or len(self.col_kinds) != len(self.col_ids):
            raise ContractViolationError("kind lists do not match id lists")
        if self.cells.size and (self.cells.min() < 0.0 or self.cells.max() > 1.0):
            raise ContractViolationError("cell values outside [0, 1]")
        self._row_index = {e: i for i, e in enumerate(self.row_ids)}
        self._col_index = {e: j for j, e in enumerate(self.col_ids)}

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def cell(self, e1: str, e2: str) -> float:
        return float(self.cells[self._row_index[e1], self._col_index[e2]])

    def same_kind_mask(self) -> np.ndarray:
        rk = np.array(self.row_kinds, dtype=object)
        ck = np.array(self.col_kinds, dtype=object)
        return (rk[:, None] == ck[None, :]).astype(np.float64)


def same_kind_mask(row_kinds, col_kinds) -> np.ndarray:
    rk = np.array(tuple(row_kinds), dtype=object)
    ck = np.array(tuple(col_kinds), dtype=object)
    return (rk[:, None] == ck[None, :]).astype(np.float64)


def pairwise_matrix(
    scorer: Callable[[str, str], float], ont1: Ontology, ont2: Ontology
) -> SimilarityMatrix:
    """Lift a per-pair scorer to a full kind-blocked matrix."""
    rows, cols = ont1.entity_ids, ont2.entity_ids
    rkinds, ckinds = ont1.entity_kinds, ont2.entity_kinds
    cells = np.zeros((len(rows), len(cols)))
    for i, (e1, k1) in enumerate(zip(rows, rkinds)):
        for j, (e2, k2) in enumerate(zip(cols, ckinds)):
            if k1 != k2:
                continue
            v = scorer(e1, e2)
            if not 0.0 <= v <= 1.0:
                raise ContractViolationError(
                    f"scorer returned {v!r} for ({e1!r}, {e2!r})"
                )
            cells[i, j] = v
    return SimilarityMatrix(rows, cols, rkinds, ckinds, (ont1.name, ont2.name), cells)


def extract_alignment(S: SimilarityMatrix, threshold: float) -> Alignment:
    """Greedy one-to-one extraction, highest cells first.

    Ties break by (row index, column index) ascending, so extraction is
    deterministic and independent of the threshold value.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold out of range: {threshold!r}")
    cells = S.cells
    candidates = sorted(
        ((-cells[i, j], i, j)
         for i, j in zip(*np.nonzero(cells >= threshold))),
        key=lambda t: (t[0], t[1], t[2]),
    )
    used_rows: set[int] = set()
    used_cols: set[int] = set()
    pairs = []
    for neg, i, j in candidates:
        i, j = int(i), int(j)
        if i in used_rows or j in used_cols:
            continue
        used_rows.add(i)
        used_cols.add(j)
        pairs.append(Correspondence(S.row_ids[i], S.col_ids[j], float(-neg)))
    return Alignment(tuple(pairs), S.onto_names)


# -- alignment file format --------------------------------------------------

def write_alignment(a: Alignment, path) -> None:
    """Write the alignment file, pairs sorted by (e1, e2) for stable bytes."""
    doc = {
        "onto1": a.source_onto_names[0],
        "onto2": a.source_onto_names[1],
        "pairs": [
            {"e1": c.e1, "e2": c.e2, "sim": c.sim, "relation": c.relation}
            for c in sorted(a.pairs, key=lambda c: (c.e1, c.e2))
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n",
                          encoding="utf-8")


def read_alignment(path) -> Alignment:
    """Parse and validate an alignment file."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise AlignmentFormatError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise AlignmentFormatError("top-level value must be an object")
    unknown = sorted(set(doc) - {"onto1", "onto2", "pairs"})
    if unknown:
        raise AlignmentFormatError(f"unknown key(s): {', '.join(unknown)}")
    try:
        onto1, onto2, raw_pairs = doc["onto1"], doc["onto2"], doc["pairs"]
    except KeyError as e:
        raise AlignmentFormatError(f"missing key: {e.args[0]}") from None
    if not isinstance(onto1, str) or not isinstance(onto2, str):
        raise AlignmentFormatError("onto1/onto2 must be strings")
    if not isinstance(raw_pairs, list):
        raise AlignmentFormatError("pairs must be an array")
    pairs = []
    for n, rec in enumerate(raw_pairs):
        where = f"pairs[{n}]"
        if not isinstance(rec, dict):
            raise AlignmentFormatError(f"{where}: expected an object")
        unknown = sorted(set(rec) - {"e1", "e2", "sim", "relation"})
        if unknown:
            raise AlignmentFormatError(f"{where}: unknown key(s) {', '.join(unknown)}")
        missing = sorted({"e1", "e2", "sim", "relation"} - set(rec))
        if missing:
            raise AlignmentFormatError(f"{where}: missing key(s) {', '.join(missing)}")
        if not isinstance(rec["e1"], str) or not isinstance(rec["e2"], str):
            raise AlignmentFormatError(f"{where}: e1/e2 must be strings")
        if not isinstance(rec["sim"], (int, float)) or isinstance(rec["sim"], bool):
            raise AlignmentFormatError(f"{where}: sim must be a number")
        if not 0.0 <= rec["sim"] <= 1.0:
            raise AlignmentFormatError(f"{where}: sim out of range: {rec['sim']!r}")
        if rec["relation"] != EQUIVALENCE:
            raise AlignmentFormatError(
                f"{where}: relation must be '=', got {rec['relation']!r}"
            )
        pairs.append(Correspondence(rec["e1"], rec["e2"], float(rec["sim"])))
    try:
        return Alignment(tuple(pairs), (onto1, onto2))
    except ValueError as e:
        raise AlignmentFormatError(f"one-to-one violation: {e}") from None
