"""End-to-end matching pipeline: the two linguistic matchers seed the
structural matcher, and the three matrices combine under the configured
aggregation strategy."""

from __future__ import annotations

from dataclasses import dataclass

from .aggregate import (
    DEFAULT_STRATEGY,
    StrategyConfig,
    constant_weight_matrix,
    harmony_aggregate,
    hscw_matrix,
    pointwise_aggregate,
    twostage_aggregate,
)
from .alignment import Alignment, SimilarityMatrix, extract_alignment, pairwise_matrix
from .lexical import (
    DEFAULT_LEXICAL,
    LexicalParams,
    build_idf,
    isub_score,
    local_name,
    vdoc_score,
    virtual_documents,
)
from .ontology import Ontology
from .structural import DEFAULT_GMO, GmoParams, gmo_run


@dataclass(frozen=True)
class PipelineConfig:
    strategy: StrategyConfig = DEFAULT_STRATEGY
    threshold: float = 0.5
    seed_threshold: float | None = None
    lexical: LexicalParams = DEFAULT_LEXICAL
    gmo: GmoParams = DEFAULT_GMO

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")
        if self.seed_threshold is not None and not 0.0 <= self.seed_threshold <= 1.0:
            raise ValueError("seed_threshold must lie in [0, 1]")

    @property
    def effective_seed_threshold(self) -> float:
        return self.threshold if self.seed_threshold is None else self.seed_threshold


@dataclass
class MatcherMatrices:
    """The three matcher outputs for one ontology pair, plus the
    preliminary alignments that seeded the structural matcher."""

    isub: SimilarityMatrix
    vdoc: SimilarityMatrix
    gmo: SimilarityMatrix
    prelim_isub: Alignment
    prelim_vdoc: Alignment


def compute_matcher_matrices(
    ont1: Ontology, ont2: Ontology, cfg: PipelineConfig = PipelineConfig()
) -> MatcherMatrices:
    """Run the three matchers once. The string matcher compares identifier
    local names; the document matcher compares idf-weighted token bags; the
    structural matcher is seeded by the alignments the other two produce."""
    isub_m = pairwise_matrix(
        lambda e1, e2: isub_score(local_name(e1), local_name(e2), cfg.lexical),
        ont1, ont2,
    )
    docs1 = virtual_documents(ont1, cfg.lexical)
    docs2 = virtual_documents(ont2, cfg.lexical)
    idf = build_idf(list(docs1.values()) + list(docs2.values()))
    vdoc_m = pairwise_matrix(
        lambda e1, e2: vdoc_score(docs1[e1], docs2[e2], idf), ont1, ont2
    )
    st = cfg.effective_seed_threshold
    prelim_isub = extract_alignment(isub_m, st)
    prelim_vdoc = extract_alignment(vdoc_m, st)
    gmo_m = gmo_run(ont1, ont2, [prelim_isub, prelim_vdoc], cfg.gmo)
    return MatcherMatrices(isub=isub_m, vdoc=vdoc_m, gmo=gmo_m,
                           prelim_isub=prelim_isub, prelim_vdoc=prelim_vdoc)


def aggregate_matrices(
    matrices: MatcherMatrices,
    ont1: Ontology,
    ont2: Ontology,
    cfg: PipelineConfig = PipelineConfig(),
) -> SimilarityMatrix:
    """Combine the three matcher matrices under the configured strategy."""
    strategy = cfg.strategy.strategy
    if strategy == "hscw":
        W = hscw_matrix(ont1, ont2, cfg.strategy)
        return twostage_aggregate(matrices.gmo, matrices.vdoc, matrices.isub, W)
    if strategy == "experimental":
        W = constant_weight_matrix(ont1, ont2, cfg.strategy.experimental_w)
        return twostage_aggregate(matrices.gmo, matrices.vdoc, matrices.isub, W)
    if strategy == "harmony":
        return harmony_aggregate([matrices.gmo, matrices.vdoc, matrices.isub])
    return pointwise_aggregate(
        strategy, [matrices.gmo, matrices.vdoc, matrices.isub], cfg.strategy
    )


def run_pipeline(
    ont1: Ontology, ont2: Ontology, cfg: PipelineConfig = PipelineConfig()
) -> tuple[Alignment, SimilarityMatrix]:
    """Full pipeline: matchers, aggregation, one-to-one extraction."""
    matrices = compute_matcher_matrices(ont1, ont2, cfg)
    combined = aggregate_matrices(matrices, ont1, ont2, cfg)
    return extract_alignment(combined, cfg.threshold), combined
