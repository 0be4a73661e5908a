"""Ontology data model: interchange-format parsing, validation, and the
structural accessors (hierarchy, depth, siblings, per-class profiles) that
feed the matchers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DanglingReferenceError,
    DuplicateIdError,
    OntologySyntaxError,
    SubclassCycleError,
    UnknownEntityError,
)

CLASS = "class"
PROPERTY = "property"
INSTANCE = "instance"
KINDS = (CLASS, PROPERTY, INSTANCE)

OBJECT = "object"
DATATYPE = "datatype"


@dataclass(frozen=True)
class ClassDecl:
    id: str
    superclasses: tuple[str, ...] = ()
    label: str | None = None
    comment: str | None = None


@dataclass(frozen=True)
class PropertyDecl:
    id: str
    kind: str
    domain: str | None = None
    range: str | None = None
    label: str | None = None
    comment: str | None = None


@dataclass(frozen=True)
class InstanceDecl:
    id: str
    types: tuple[str, ...]
    values: tuple[tuple[str, str], ...] = ()
    label: str | None = None
    comment: str | None = None


@dataclass(frozen=True)
class StructuralProfile:
    """The six per-class counts the structural weight terms compare."""

    sup: int
    sub: int
    depth: int
    ins: int
    prop: int
    sib: int


@dataclass
class Ontology:
    """Immutable, fully indexed ontology.

    Construction validates every invariant (identifier uniqueness,
    reference resolution, superclass acyclicity) and builds the indexes,
    so any Ontology instance is safe to query. Declaration order is
    preserved; it defines similarity-matrix row and column order.
    """

    name: str
    classes: tuple[ClassDecl, ...]
    properties: tuple[PropertyDecl, ...]
    instances: tuple[InstanceDecl, ...]
    _by_id: dict = field(init=False, repr=False, compare=False)
    _kind: dict = field(init=False, repr=False, compare=False)
    _subclasses: dict = field(init=False, repr=False, compare=False)
    _instances_of: dict = field(init=False, repr=False, compare=False)
    _props_of: dict = field(init=False, repr=False, compare=False)
    _depth: dict = field(init=False, repr=False, compare=False)
    _roots: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.classes = tuple(self.classes)
        self.properties = tuple(self.properties)
        self.instances = tuple(self.instances)
        self._validate_and_index()

    # -- construction -----------------------------------------------------

    def _validate_and_index(self):
        by_id, kind = {}, {}
        for decl, k in [(c, CLASS) for c in self.classes] + [
            (p, PROPERTY) for p in self.properties
        ] + [(i, INSTANCE) for i in self.instances]:
            if decl.id in by_id:
                raise DuplicateIdError(f"identifier declared twice: {decl.id!r}")
            by_id[decl.id] = decl
            kind[decl.id] = k
        self._by_id, self._kind = by_id, kind

        def require(ref, expected_kind, where):
            if kind.get(ref) != expected_kind:
                raise DanglingReferenceError(
                    f"{where} references {ref!r}, which is not a declared {expected_kind}"
                )

        for c in self.classes:
            if len(set(c.superclasses)) != len(c.superclasses):
                raise OntologySyntaxError(
                    f"class {c.id!r} lists a superclass more than once"
                )
            for s in c.superclasses:
                if s == c.id:
                    raise SubclassCycleError(
                        f"class {c.id!r} lists itself as a superclass"
                    )
                require(s, CLASS, f"class {c.id!r}")
        for p in self.properties:
            if p.kind not in (OBJECT, DATATYPE):
                raise OntologySyntaxError(
                    f"property {p.id!r} has unknown kind {p.kind!r}"
                )
            if p.domain is not None:
                require(p.domain, CLASS, f"property {p.id!r} domain")
            if p.kind == OBJECT and p.range is not None:
                require(p.range, CLASS, f"property {p.id!r} range")
        for i in self.instances:
            if not i.types:
                raise OntologySyntaxError(f"instance {i.id!r} declares no type")
            for t in i.types:
                require(t, CLASS, f"instance {i.id!r} type")
            for prop, value in i.values:
                require(prop, PROPERTY, f"instance {i.id!r} value")
                if by_id[prop].kind == OBJECT and value not in by_id:
                    raise DanglingReferenceError(
                        f"instance {i.id!r} value for object property {prop!r} "
                        f"references unknown entity {value!r}"
                    )

        self._check_acyclic()

        subclasses = {c.id: [] for c in self.classes}
        for c in self.classes:
            for s in c.superclasses:
                subclasses[s].append(c.id)
        self._subclasses = {k: tuple(v) for k, v in subclasses.items()}

        instances_of = {c.id: [] for c in self.classes}
        for i in self.instances:
            for t in set(i.types):
                instances_of[t].append(i.id)
        self._instances_of = {k: tuple(v) for k, v in instances_of.items()}

        props_of = {c.id: [] for c in self.classes}
        for p in self.properties:
            if p.domain is not None:
                props_of[p.domain].append(p.id)
        self._props_of = {k: tuple(v) for k, v in props_of.items()}

        self._roots = tuple(c.id for c in self.classes if not c.superclasses)
        self._depth = self._compute_depths()

    def _check_acyclic(self):
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {c.id: WHITE for c in self.classes}
        for start in color:
            if color[start] != WHITE:
                continue
            stack = [(start, iter(self._by_id[start].superclasses))]
            color[start] = GRAY
            path = [start]
            while stack:
                node, supers = stack[-1]
                advanced = False
                for s in supers:
                    if color[s] == GRAY:
                        cycle = path[path.index(s):] + [s]
                        raise SubclassCycleError(
                            "superclass cycle: " + " -> ".join(cycle)
                        )
                    if color[s] == WHITE:
                        color[s] = GRAY
                        stack.append((s, iter(self._by_id[s].superclasses)))
                        path.append(s)
                        advanced = True
                        break
                if not advanced:
                    color[node] = BLACK
                    stack.pop()
                    path.pop()

    def _compute_depths(self):
        depth = {}
        for c in self.classes:
            stack = [c.id]
            while stack:
                cur = stack[-1]
                if cur in depth:
                    stack.pop()
                    continue
                supers = self._by_id[cur].superclasses
                if not supers:
                    depth[cur] = 1
                    stack.pop()
                    continue
                pending = [s for s in supers if s not in depth]
                if pending:
                    stack.extend(pending)
                else:
                    depth[cur] = 1 + min(depth[s] for s in supers)
                    stack.pop()
        return depth

    # -- accessors ---------------------------------------------------------

    @property
    def entity_ids(self) -> tuple[str, ...]:
        """All identifiers, classes first, then properties, then instances."""
        return tuple(self._by_id)

    @property
    def entity_kinds(self) -> tuple[str, ...]:
        return tuple(self._kind[e] for e in self._by_id)

    def get(self, e: str):
        try:
            return self._by_id[e]
        except KeyError:
            raise UnknownEntityError(f"unknown identifier: {e!r}") from None

    def kind_of(self, e: str) -> str:
        self.get(e)
        return self._kind[e]

    def _require_class(self, c: str) -> ClassDecl:
        decl = self.get(c)
        if self._kind[c] != CLASS:
            raise UnknownEntityError(f"{c!r} is a {self._kind[c]}, not a class")
        return decl

    def superclasses_of(self, c: str) -> tuple[str, ...]:
        return self._require_class(c).superclasses

    def subclasses_of(self, c: str) -> tuple[str, ...]:
        self._require_class(c)
        return self._subclasses[c]

    def direct_instances_of(self, c: str) -> tuple[str, ...]:
        self._require_class(c)
        return self._instances_of[c]

    def domain_properties_of(self, c: str) -> tuple[str, ...]:
        self._require_class(c)
        return self._props_of[c]

    def roots(self) -> tuple[str, ...]:
        return self._roots


def depth_of(ont: Ontology, c: str) -> int:
    """Depth of class c: roots sit at 1, otherwise 1 + the minimum parent depth."""
    ont._require_class(c)
    return ont._depth[c]


def siblings_of(ont: Ontology, c: str) -> set[str]:
    """Classes sharing at least one direct superclass with c, excluding c.

    Root classes count as children of a virtual top, so every root is a
    sibling of every other root.
    """
    decl = ont._require_class(c)
    if not decl.superclasses:
        return {r for r in ont.roots() if r != c}
    sibs: set[str] = set()
    for p in decl.superclasses:
        sibs.update(ont.subclasses_of(p))
    sibs.discard(c)
    return sibs


def structural_profile(ont: Ontology, c: str) -> StructuralProfile:
    """The six structural counts for class c. Direct relations only."""
    decl = ont._require_class(c)
    return StructuralProfile(
        sup=len(decl.superclasses),
        sub=len(ont.subclasses_of(c)),
        depth=depth_of(ont, c),
        ins=len(ont.direct_instances_of(c)),
        prop=len(ont.domain_properties_of(c)),
        sib=len(siblings_of(ont, c)),
    )


# -- interchange format --------------------------------------------------

def _check_keys(obj: dict, required: set, optional: set, where: str):
    unknown = sorted(set(obj) - required - optional)
    if unknown:
        raise OntologySyntaxError(f"{where}: unknown key(s) {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise OntologySyntaxError(f"{where}: missing key(s) {', '.join(missing)}")


def _as_str(value, where: str) -> str:
    if not isinstance(value, str):
        raise OntologySyntaxError(f"{where}: expected a string, got {type(value).__name__}")
    return value


def _as_str_list(value, where: str) -> tuple[str, ...]:
    if not isinstance(value, list):
        raise OntologySyntaxError(f"{where}: expected an array, got {type(value).__name__}")
    return tuple(_as_str(v, where) for v in value)


def _opt_str(obj: dict, key: str, where: str) -> str | None:
    return _as_str(obj[key], f"{where}.{key}") if key in obj else None


def parse_ontology(source: str) -> Ontology:
    """Parse interchange-format JSON text into a validated Ontology.

    Declaration order is preserved. Raises OntologySyntaxError,
    DuplicateIdError, DanglingReferenceError, or SubclassCycleError.
    """
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as e:
        raise OntologySyntaxError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise OntologySyntaxError("top-level value must be an object")
    _check_keys(doc, {"name", "classes", "properties", "instances"}, set(), "document")
    name = _as_str(doc["name"], "document.name")

    classes = []
    for n, obj in enumerate(_as_obj_list(doc["classes"], "classes")):
        where = f"classes[{n}]"
        _check_keys(obj, {"id", "superclasses"}, {"label", "comment"}, where)
        classes.append(ClassDecl(
            id=_as_str(obj["id"], f"{where}.id"),
            superclasses=_as_str_list(obj["superclasses"], f"{where}.superclasses"),
            label=_opt_str(obj, "label", where),
            comment=_opt_str(obj, "comment", where),
        ))

    properties = []
    for n, obj in enumerate(_as_obj_list(doc["properties"], "properties")):
        where = f"properties[{n}]"
        _check_keys(obj, {"id", "kind"}, {"label", "comment", "domain", "range"}, where)
        kind = _as_str(obj["kind"], f"{where}.kind")
        if kind not in (OBJECT, DATATYPE):
            raise OntologySyntaxError(f"{where}.kind: must be 'object' or 'datatype'")
        properties.append(PropertyDecl(
            id=_as_str(obj["id"], f"{where}.id"),
            kind=kind,
            domain=_opt_str(obj, "domain", where),
            range=_opt_str(obj, "range", where),
            label=_opt_str(obj, "label", where),
            comment=_opt_str(obj, "comment", where),
        ))

    instances = []
    for n, obj in enumerate(_as_obj_list(doc["instances"], "instances")):
        where = f"instances[{n}]"
        _check_keys(obj, {"id", "types", "values"}, {"label", "comment"}, where)
        values = []
        raw_values = obj["values"]
        if not isinstance(raw_values, list):
            raise OntologySyntaxError(f"{where}.values: expected an array")
        for m, v in enumerate(raw_values):
            vwhere = f"{where}.values[{m}]"
            if not isinstance(v, dict):
                raise OntologySyntaxError(f"{vwhere}: expected an object")
            _check_keys(v, {"property", "value"}, set(), vwhere)
            values.append((_as_str(v["property"], f"{vwhere}.property"),
                           _as_str(v["value"], f"{vwhere}.value")))
        instances.append(InstanceDecl(
            id=_as_str(obj["id"], f"{where}.id"),
            types=_as_str_list(obj["types"], f"{where}.types"),
            values=tuple(values),
            label=_opt_str(obj, "label", where),
            comment=_opt_str(obj, "comment", where),
        ))

    return Ontology(name=name, classes=tuple(classes),
                    properties=tuple(properties), instances=tuple(instances))


def _as_obj_list(value, where: str) -> list:
    if not isinstance(value, list):
        raise OntologySyntaxError(f"{where}: expected an array")
    for n, item in enumerate(value):
        if not isinstance(item, dict):
            raise OntologySyntaxError(f"{where}[{n}]: expected an object")
    return value


def serialize_ontology(ont: Ontology) -> str:
    """Canonical interchange-format text; parse(serialize(o)) == o."""
    def trimmed(entries):
        return {k: v for k, v in entries if v is not None}

    doc = {
        "name": ont.name,
        "classes": [
            trimmed([("id", c.id), ("label", c.label), ("comment", c.comment),
                     ("superclasses", list(c.superclasses))])
            for c in ont.classes
        ],
        "properties": [
            trimmed([("id", p.id), ("label", p.label), ("comment", p.comment),
                     ("kind", p.kind), ("domain", p.domain), ("range", p.range)])
            for p in ont.properties
        ],
        "instances": [
            trimmed([("id", i.id), ("label", i.label), ("comment", i.comment),
                     ("types", list(i.types)),
                     ("values", [{"property": p, "value": v} for p, v in i.values])])
            for i in ont.instances
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def read_ontology(path) -> Ontology:
    return parse_ontology(Path(path).read_text(encoding="utf-8"))


def write_ontology(ont: Ontology, path) -> None:
    Path(path).write_text(serialize_ontology(ont), encoding="utf-8")
