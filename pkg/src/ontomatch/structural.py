"""Iterative structural matcher: propagates similarity along the relation
graphs of both ontologies, seeded by alignments extracted from the
linguistic matchers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alignment import Alignment, SimilarityMatrix, same_kind_mask
from .errors import ContractViolationError, UnknownEntityError
from .ontology import INSTANCE, OBJECT, Ontology

SUBCLASS_OF = "subclass-of"
DOMAIN = "domain"
RANGE = "range"
TYPE_OF = "type-of"
VALUE_LINK = "value-link"
RELATION_TAGS = (SUBCLASS_OF, DOMAIN, RANGE, TYPE_OF, VALUE_LINK)


@dataclass(frozen=True)
class GmoParams:
    max_iterations: int = 100
    epsilon: float = 1e-6
    seed_strength: float = 1.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if not 0.0 <= self.seed_strength <= 1.0:
            raise ValueError("seed_strength must lie in [0, 1]")


DEFAULT_GMO = GmoParams()


@dataclass(frozen=True)
class RelationGraph:
    """Directed relation edges over an ontology's entities, as index pairs
    into the declaration-ordered node list."""

    nodes: tuple[str, ...]
    kinds: tuple[str, ...]
    edges: dict[str, frozenset[tuple[int, int]]]


def build_graph(ont: Ontology) -> RelationGraph:
    """Encode an ontology as a relation graph.

    Edges: subclass-of child->parent, domain property->class, range
    property->class (object properties only), type-of instance->class,
    value-link instance->instance for entity-valued property values.
    """
    index = {e: i for i, e in enumerate(ont.entity_ids)}
    edges: dict[str, set[tuple[int, int]]] = {tag: set() for tag in RELATION_TAGS}
    for c in ont.classes:
        for s in c.superclasses:
            edges[SUBCLASS_OF].add((index[c.id], index[s]))
    for p in ont.properties:
        if p.domain is not None:
            edges[DOMAIN].add((index[p.id], index[p.domain]))
        if p.kind == OBJECT and p.range is not None:
            edges[RANGE].add((index[p.id], index[p.range]))
    for i in ont.instances:
        for t in set(i.types):
            edges[TYPE_OF].add((index[i.id], index[t]))
        for prop, v in i.values:
            if ont.get(prop).kind == OBJECT and ont.kind_of(v) == INSTANCE:
                edges[VALUE_LINK].add((index[i.id], index[v]))
    return RelationGraph(
        nodes=ont.entity_ids,
        kinds=ont.entity_kinds,
        edges={tag: frozenset(pairs) for tag, pairs in edges.items()},
    )


def _adjacencies(g: RelationGraph) -> dict[str, np.ndarray]:
    n = len(g.nodes)
    out = {}
    for tag in RELATION_TAGS:
        A = np.zeros((n, n))
        for i, j in g.edges.get(tag, ()):
            A[i, j] = 1.0
        out[tag] = A
    return out


def _step_cells(
    S: np.ndarray,
    adj1: dict[str, np.ndarray],
    adj2: dict[str, np.ndarray],
    seed: np.ndarray,
    seed_mask: np.ndarray,
    kind_mask: np.ndarray,
    strength: float,
) -> np.ndarray:
    raw = np.zeros_like(S)
    for tag in RELATION_TAGS:
        A1, A2 = adj1[tag], adj2[tag]
        raw += A1 @ S @ A2.T      # matching outgoing edges pull successor scores
        raw += A1.T @ S @ A2      # matching incoming edges pull predecessor scores
    m = raw.max() if raw.size else 0.0
    if m > 0.0:
        raw = raw / m
    out = (1.0 - strength * seed_mask) * raw + strength * seed
    out = out * kind_mask
    return np.clip(out, 0.0, 1.0)


def gmo_step(
    S: SimilarityMatrix,
    g1: RelationGraph,
    g2: RelationGraph,
    seed: SimilarityMatrix,
    params: GmoParams = DEFAULT_GMO,
) -> SimilarityMatrix:
    """One propagation step: bilinear spread over matching relation edges,
    global-max normalization, seed blend, kind blocking."""
    shape = (len(g1.nodes), len(g2.nodes))
    if S.cells.shape != shape or seed.cells.shape != shape:
        raise ContractViolationError(
            f"matrix shape {S.cells.shape} / seed {seed.cells.shape} "
            f"do not match graphs {shape}"
        )
    cells = _step_cells(
        S.cells,
        _adjacencies(g1),
        _adjacencies(g2),
        seed.cells,
        (seed.cells > 0.0).astype(np.float64),
        same_kind_mask(g1.kinds, g2.kinds),
        params.seed_strength,
    )
    return SimilarityMatrix(S.row_ids, S.col_ids, S.row_kinds, S.col_kinds,
                            S.onto_names, cells)


def seed_matrix(
    ont1: Ontology, ont2: Ontology, seed_alignments: list[Alignment]
) -> SimilarityMatrix:
    """Cellwise maximum of the seed alignments' confidence values."""
    idx1 = {e: i for i, e in enumerate(ont1.entity_ids)}
    idx2 = {e: j for j, e in enumerate(ont2.entity_ids)}
    cells = np.zeros((len(idx1), len(idx2)))
    for a in seed_alignments:
        for c in a.pairs:
            if c.e1 not in idx1:
                raise UnknownEntityError(f"seed references unknown entity {c.e1!r}")
            if c.e2 not in idx2:
                raise UnknownEntityError(f"seed references unknown entity {c.e2!r}")
            i, j = idx1[c.e1], idx2[c.e2]
            cells[i, j] = max(cells[i, j], c.sim)
    return SimilarityMatrix(ont1.entity_ids, ont2.entity_ids,
                            ont1.entity_kinds, ont2.entity_kinds,
                            (ont1.name, ont2.name), cells)


def gmo_run(
    ont1: Ontology,
    ont2: Ontology,
    seed_alignments: list[Alignment],
    params: GmoParams = DEFAULT_GMO,
) -> SimilarityMatrix:
    """Iterate propagation from the merged seed matrix until the largest
    cell delta drops below epsilon or the iteration cap is reached."""
    g1, g2 = build_graph(ont1), build_graph(ont2)
    seed = seed_matrix(ont1, ont2, seed_alignments)
    adj1, adj2 = _adjacencies(g1), _adjacencies(g2)
    seed_mask = (seed.cells > 0.0).astype(np.float64)
    kind_mask = same_kind_mask(g1.kinds, g2.kinds)
    S = seed.cells.copy()
    for _ in range(params.max_iterations):
        nxt = _step_cells(S, adj1, adj2, seed.cells, seed_mask, kind_mask,
                          params.seed_strength)
        delta = float(np.abs(nxt - S).max()) if nxt.size else 0.0
        S = nxt
        if delta < params.epsilon:
            break
    return SimilarityMatrix(seed.row_ids, seed.col_ids, seed.row_kinds,
                            seed.col_kinds, seed.onto_names, S)
