"""Linguistic similarity sources: the string metric built from iterated
longest-common-substring matching, and the virtual-document TF-IDF/cosine
matcher."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import ContractViolationError
from .ontology import CLASS, INSTANCE, OBJECT, PROPERTY, Ontology

STOPWORDS = frozenset(
    "the a an of in on for to and or is are by with at from as that this be".split()
)

_NON_ALNUM = re.compile(r"[^0-9A-Za-z]+")
_CAMEL = re.compile(r"(?<=[a-z])(?=[A-Z])")

# Single-character common substrings are noise; require at least 2.
MIN_COMMON_LEN = 2


@dataclass(frozen=True)
class LexicalParams:
    isub_diff_p: float = 0.6
    winkler_prefix_cap: int = 4
    winkler_scale: float = 0.1
    vdoc_name_w: float = 1.0
    vdoc_label_w: float = 0.8
    vdoc_comment_w: float = 0.3
    vdoc_neighbor_w: float = 0.2

    def __post_init__(self):
        if not 0.0 < self.isub_diff_p <= 1.0:
            raise ValueError("isub_diff_p must lie in (0, 1]")
        for name in ("winkler_scale", "vdoc_name_w", "vdoc_label_w",
                     "vdoc_comment_w", "vdoc_neighbor_w"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.winkler_prefix_cap < 0:
            raise ValueError("winkler_prefix_cap must be non-negative")


DEFAULT_LEXICAL = LexicalParams()


@dataclass(frozen=True)
class VirtualDocument:
    """Weighted bag of tokens describing one entity."""

    owner: str
    tokens: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for tok, w in self.tokens.items():
            if not tok or tok != tok.lower() or any(c.isspace() for c in tok):
                raise ValueError(f"bad token {tok!r} in document for {self.owner!r}")
            if w <= 0:
                raise ValueError(f"non-positive weight for token {tok!r}")


def tokenize(name: str) -> list[str]:
    """Split on non-alphanumerics and camelCase boundaries, lowercase,
    drop empties and stopwords."""
    out = []
    for chunk in _NON_ALNUM.split(name):
        for piece in _CAMEL.split(chunk):
            tok = piece.lower()
            if tok and tok not in STOPWORDS:
                out.append(tok)
    return out


def local_name(identifier: str) -> str:
    """Trailing segment of an identifier (after any '#' or '/')."""
    return re.split(r"[#/]", identifier)[-1]


# -- string metric ---------------------------------------------------------

def _longest_common_substring(s1: str, s2: str) -> tuple[int, int, int]:
    """(length, start1, start2) of the longest common substring.

    Ties break to the earliest start in s1, then in s2, which the
    ascending scan order guarantees.
    """
    best_len, best1, best2 = 0, 0, 0
    prev = [0] * (len(s2) + 1)
    for x in range(1, len(s1) + 1):
        cur = [0] * (len(s2) + 1)
        for y in range(1, len(s2) + 1):
            if s1[x - 1] == s2[y - 1]:
                cur[y] = prev[y - 1] + 1
                if cur[y] > best_len:
                    best_len = cur[y]
                    best1, best2 = x - cur[y], y - cur[y]
        prev = cur
    return best_len, best1, best2


def _matched_length(s1: str, s2: str) -> int:
    """Total length of common substrings removed iteratively, longest first,
    until none of length >= MIN_COMMON_LEN remains."""
    total = 0
    while s1 and s2:
        length, a, b = _longest_common_substring(s1, s2)
        if length < MIN_COMMON_LEN:
            break
        total += length
        s1 = s1[:a] + s1[a + length:]
        s2 = s2[:b] + s2[b + length:]
    return total


def _common_prefix_len(s1: str, s2: str) -> int:
    n = 0
    for c1, c2 in zip(s1, s2):
        if c1 != c2:
            break
        n += 1
    return n


def isub_score(s1: str, s2: str, params: LexicalParams = DEFAULT_LEXICAL) -> float:
    """String similarity in [0, 1], case-insensitive.

    raw = Comm - Diff + Winkler, mapped through (raw + 1) / 2. Both inputs
    empty scores 1.0; exactly one empty scores 0.5.
    """
    a, b = s1.lower(), s2.lower()
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.5
    if a == b:
        # the formula already yields 1.0 for identical strings of length
        # >= MIN_COMMON_LEN; the short-circuit extends that to length 1
        return 1.0
    matched = _matched_length(a, b)
    comm = 2.0 * matched / (len(a) + len(b))
    ul1 = (len(a) - matched) / len(a)
    ul2 = (len(b) - matched) / len(b)
    p = params.isub_diff_p
    diff = ul1 * ul2 / (p + (1.0 - p) * (ul1 + ul2 - ul1 * ul2))
    prefix = min(params.winkler_prefix_cap, _common_prefix_len(a, b))
    winkler = prefix * params.winkler_scale * (1.0 - comm)
    raw = comm - diff + winkler
    return min(1.0, max(0.0, (raw + 1.0) / 2.0))


# -- virtual documents -----------------------------------------------------

def _local_weights(ont: Ontology, e: str, params: LexicalParams) -> dict[str, float]:
    decl = ont.get(e)
    weights: dict[str, float] = {}

    def add(text: str | None, w: float):
        if text is None or w == 0:
            return
        for tok in tokenize(text):
            weights[tok] = weights.get(tok, 0.0) + w

    add(local_name(decl.id), params.vdoc_name_w)
    add(decl.label, params.vdoc_label_w)
    add(decl.comment, params.vdoc_comment_w)
    return weights


def _neighbor_ids(ont: Ontology, e: str) -> set[str]:
    """Entities one relation hop away, in either direction."""
    kind = ont.kind_of(e)
    out: set[str] = set()
    if kind == CLASS:
        decl = ont.get(e)
        out.update(decl.superclasses)
        out.update(ont.subclasses_of(e))
        out.update(ont.direct_instances_of(e))
        for p in ont.properties:
            if p.domain == e or (p.kind == OBJECT and p.range == e):
                out.add(p.id)
    elif kind == PROPERTY:
        decl = ont.get(e)
        if decl.domain is not None:
            out.add(decl.domain)
        if decl.kind == OBJECT and decl.range is not None:
            out.add(decl.range)
    else:
        decl = ont.get(e)
        out.update(decl.types)
        for p, v in decl.values:
            if ont.get(p).kind == OBJECT:
                out.add(v)
    # reverse value links from other instances
    for i in ont.instances:
        for p, v in i.values:
            if v == e and ont.get(p).kind == OBJECT:
                out.add(i.id)
    out.discard(e)
    return out


def build_virtual_document(
    ont: Ontology, e: str, params: LexicalParams = DEFAULT_LEXICAL
) -> VirtualDocument:
    """Local token weights plus every direct neighbor's local weights
    scaled by the neighbor weight."""
    weights = _local_weights(ont, e, params)
    for n in sorted(_neighbor_ids(ont, e)):
        for tok, w in _local_weights(ont, n, params).items():
            scaled = w * params.vdoc_neighbor_w
            if scaled > 0:
                weights[tok] = weights.get(tok, 0.0) + scaled
    return VirtualDocument(owner=e, tokens={t: w for t, w in weights.items() if w > 0})


def virtual_documents(
    ont: Ontology, params: LexicalParams = DEFAULT_LEXICAL
) -> dict[str, VirtualDocument]:
    return {e: build_virtual_document(ont, e, params) for e in ont.entity_ids}


def build_idf(documents: list[VirtualDocument]) -> dict[str, float]:
    """idf(token) = ln(1 + N / df) over the given document collection."""
    n = len(documents)
    df: dict[str, int] = {}
    for doc in documents:
        for tok in doc.tokens:
            df[tok] = df.get(tok, 0) + 1
    return {tok: math.log(1.0 + n / d) for tok, d in df.items()}


def vdoc_score(
    d1: VirtualDocument, d2: VirtualDocument, idf: dict[str, float]
) -> float:
    """Cosine similarity of the idf-scaled token vectors; 0 for zero norms."""
    missing = sorted((set(d1.tokens) | set(d2.tokens)) - set(idf))
    if missing:
        raise ContractViolationError(
            f"tokens missing from idf mapping: {', '.join(missing)}"
        )
    dot = 0.0
    for tok, w in d1.tokens.items():
        if tok in d2.tokens:
            dot += (w * idf[tok]) * (d2.tokens[tok] * idf[tok])
    n1 = math.sqrt(sum((w * idf[t]) ** 2 for t, w in d1.tokens.items()))
    n2 = math.sqrt(sum((w * idf[t]) ** 2 for t, w in d2.tokens.items()))
    if n1 == 0.0 or n2 == 0.0:
        return 0.0
    return min(1.0, max(0.0, dot / (n1 * n2)))
