import json

import pytest

from ontomatch.fixtures import load_seed_ontology
from ontomatch.ontology import ClassDecl, InstanceDecl, Ontology, PropertyDecl, parse_ontology


@pytest.fixture(scope="session")
def seed_ontology():
    return load_seed_ontology()


@pytest.fixture
def five_class():
    """Root R; A, B below R; C, D below A."""
    return Ontology(
        "five",
        (
            ClassDecl("R"),
            ClassDecl("A", ("R",)),
            ClassDecl("B", ("R",)),
            ClassDecl("C", ("A",)),
            ClassDecl("D", ("A",)),
        ),
        (),
        (),
    )


def hierarchy_fixture(name, target, parent, siblings, children, props):
    """One labelled class with a given parent, sibling set, two children
    and two domain properties; mirrors the worked seven-sibling layout."""
    classes = [ClassDecl(parent)]
    classes.append(ClassDecl(target, (parent,)))
    classes += [ClassDecl(s, (parent,)) for s in siblings]
    classes += [ClassDecl(c, (target,)) for c in children]
    properties = tuple(PropertyDecl(p, "datatype", domain=target, range="string")
                       for p in props)
    return Ontology(name, tuple(classes), properties, ())


@pytest.fixture
def academic_ontology():
    """'Academic' with one parent, six siblings, two subclasses, two
    properties, no instances, depth 2."""
    return hierarchy_fixture(
        "reports-a", "Academic", "Reference",
        ["Technical", "Financial", "Annual", "Progress", "Survey", "Audit"],
        ["CourseReport", "ThesisReport"],
        ["supervisor", "department"],
    )


@pytest.fixture
def student_report_ontology():
    """Structurally identical to the academic fixture, different names."""
    return hierarchy_fixture(
        "reports-b", "StudentReport", "Document",
        ["StaffReport", "BoardReport", "YearReport", "LabReport", "FieldReport", "CaseReport"],
        ["TermPaper", "FinalPaper"],
        ["tutor", "faculty"],
    )


@pytest.fixture
def typed_pair():
    """Small mixed-kind pair: classes, properties, instances with links."""
    ont1 = Ontology(
        "pair1",
        (ClassDecl("Paper"), ClassDecl("JournalPaper", ("Paper",))),
        (PropertyDecl("cites", "object", domain="Paper", range="Paper"),),
        (
            InstanceDecl("p1", ("Paper",), (("cites", "p2"),)),
            InstanceDecl("p2", ("JournalPaper",)),
        ),
    )
    ont2 = Ontology(
        "pair2",
        (ClassDecl("Work"), ClassDecl("JournalWork", ("Work",))),
        (PropertyDecl("refersTo", "object", domain="Work", range="Work"),),
        (
            InstanceDecl("w1", ("Work",), (("refersTo", "w2"),)),
            InstanceDecl("w2", ("JournalWork",)),
        ),
    )
    return ont1, ont2


def rename_document(source: str, mapping: dict) -> str:
    """Apply an identifier bijection to an interchange document, keeping
    declaration order. Datatype ranges and literal values are untouched."""
    doc = json.loads(source)
    prop_kind = {p["id"]: p["kind"] for p in doc["properties"]}
    for c in doc["classes"]:
        c["id"] = mapping.get(c["id"], c["id"])
        c["superclasses"] = [mapping.get(s, s) for s in c["superclasses"]]
    for p in doc["properties"]:
        p["id"] = mapping.get(p["id"], p["id"])
        if "domain" in p:
            p["domain"] = mapping.get(p["domain"], p["domain"])
        if p["kind"] == "object" and "range" in p:
            p["range"] = mapping.get(p["range"], p["range"])
    for i in doc["instances"]:
        i["id"] = mapping.get(i["id"], i["id"])
        i["types"] = [mapping.get(t, t) for t in i["types"]]
        for v in i["values"]:
            orig_prop = v["property"]
            v["property"] = mapping.get(orig_prop, orig_prop)
            if prop_kind[orig_prop] == "object":
                v["value"] = mapping.get(v["value"], v["value"])
    return json.dumps(doc)


def bijective_rename(ont: Ontology, suffix: str = "X") -> tuple[Ontology, dict]:
    """Rename every identifier by appending a suffix; returns the renamed
    ontology and the mapping."""
    from ontomatch.ontology import serialize_ontology

    mapping = {e: e + suffix for e in ont.entity_ids}
    renamed = parse_ontology(rename_document(serialize_ontology(ont), mapping))
    return renamed, mapping
