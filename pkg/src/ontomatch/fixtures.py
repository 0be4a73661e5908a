"""Access to the shipped bibliographic seed ontology (30 classes,
10 properties, 15 instances), the default input for benchmark suites."""

from __future__ import annotations

from importlib import resources

from .ontology import Ontology, parse_ontology

SEED_NAME = "biblio.ont.json"


def seed_ontology_text() -> str:
    return (resources.files("ontomatch") / "data" / SEED_NAME).read_text("utf-8")


def load_seed_ontology() -> Ontology:
    return parse_ontology(seed_ontology_text())
