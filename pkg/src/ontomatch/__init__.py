"""Ontology matching with per-class structural combination weights.

Three matchers (string metric, virtual documents, iterative structural
propagation) produce similarity matrices that are combined under one of
seven aggregation strategies; one-to-one alignments are extracted,
evaluated against references, and benchmarked on generated suites.
"""

from .aggregate import (
    STRATEGIES,
    StrategyConfig,
    StructuralDelta,
    WeightMatrix,
    constant_weight_matrix,
    feature_term,
    harmony_aggregate,
    harmony_of,
    hscw_matrix,
    hscw_pair,
    pointwise_aggregate,
    twostage_aggregate,
)
from .alignment import (
    Alignment,
    Correspondence,
    SimilarityMatrix,
    extract_alignment,
    pairwise_matrix,
    read_alignment,
    write_alignment,
)
from .benchgen import MutationSpec, Suite, SuiteTest, gen_suite, load_suite, mutate, write_suite
from .errors import (
    AlignmentFormatError,
    ContractViolationError,
    DanglingReferenceError,
    DuplicateIdError,
    InputFormatError,
    OntologySyntaxError,
    OntomatchError,
    SubclassCycleError,
    UnknownEntityError,
)
from .evaluate import EvaluationReport, evaluate, evaluate_suite, sweep_csv, weight_sweep
from .lexical import (
    LexicalParams,
    VirtualDocument,
    build_idf,
    build_virtual_document,
    isub_score,
    local_name,
    tokenize,
    vdoc_score,
    virtual_documents,
)
from .ontology import (
    ClassDecl,
    InstanceDecl,
    Ontology,
    PropertyDecl,
    StructuralProfile,
    depth_of,
    parse_ontology,
    read_ontology,
    serialize_ontology,
    siblings_of,
    structural_profile,
    write_ontology,
)
from .pipeline import (
    MatcherMatrices,
    PipelineConfig,
    aggregate_matrices,
    compute_matcher_matrices,
    run_pipeline,
)
from .structural import GmoParams, RelationGraph, build_graph, gmo_run, gmo_step, seed_matrix

__version__ = "0.1.0"
