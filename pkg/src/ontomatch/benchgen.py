"""Deterministic mutation-based benchmark generator: modified copies of a
seed ontology plus the ground-truth reference alignment, organized into
identity / linguistic / structural / combined test groups."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from pathlib import Path

from .alignment import Alignment, Correspondence, read_alignment
from .errors import InputFormatError
from .ontology import (
    OBJECT,
    ClassDecl,
    InstanceDecl,
    Ontology,
    PropertyDecl,
    read_ontology,
    serialize_ontology,
)

RENAME_MODES = ("scramble", "random")
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class MutationSpec:
    rename_fraction: float = 0.0
    rename_mode: str = "scramble"
    drop_comments: bool = False
    drop_labels: bool = False
    flatten_fraction: float = 0.0
    drop_instances_fraction: float = 0.0
    drop_properties_fraction: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("rename_fraction", "flatten_fraction",
                     "drop_instances_fraction", "drop_properties_fraction"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.rename_mode not in RENAME_MODES:
            raise ValueError(f"unknown rename_mode: {self.rename_mode!r}")
        if not 0 <= self.rng_seed < 2 ** 64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        return {
            "rename_fraction": self.rename_fraction,
            "rename_mode": self.rename_mode,
            "drop_comments": self.drop_comments,
            "drop_labels": self.drop_labels,
            "flatten_fraction": self.flatten_fraction,
            "drop_instances_fraction": self.drop_instances_fraction,
            "drop_properties_fraction": self.drop_properties_fraction,
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class SuiteTest:
    test_id: str
    group: str
    spec: MutationSpec
    ontology: Ontology
    reference: Alignment


@dataclass(frozen=True)
class Suite:
    name: str
    source: Ontology
    base_seed: int
    tests: tuple[SuiteTest, ...]


def _pick(rng: random.Random, count: int, fraction: float) -> set[int]:
    """Deterministically choose round(fraction * count) positions."""
    k = int(fraction * count + 0.5)
    order = list(range(count))
    rng.shuffle(order)
    return set(order[:k])


def _fresh_id(rng: random.Random, used: set[str]) -> str:
    while True:
        cand = "".join(rng.choice(_LETTERS) for _ in range(10))
        if cand not in used:
            return cand


def _scrambled_id(rng: random.Random, old: str, used: set[str]) -> str:
    chars = list(old)
    rng.shuffle(chars)
    cand = "".join(chars)
    while cand in used:
        cand += "x"
    return cand


def mutate(ont: Ontology, spec: MutationSpec, name: str | None = None) -> tuple[Ontology, Alignment]:
    """Apply the mutations in fixed order (rename, label/comment drops,
    hierarchy flatten, instance/property drops) and return the mutated
    ontology plus the reference alignment mapping each surviving entity
    back to its original. Deterministic for a fixed (ont, spec)."""
    rng = random.Random(spec.rng_seed)
    classes = list(ont.classes)
    properties = list(ont.properties)
    instances = list(ont.instances)
    orig_class_ids = [c.id for c in classes]
    orig_prop_ids = [p.id for p in properties]
    orig_inst_ids = [i.id for i in instances]

    # 1. rename a fraction of all entities
    all_ids = orig_class_ids + orig_prop_ids + orig_inst_ids
    chosen = _pick(rng, len(all_ids), spec.rename_fraction)
    mapping: dict[str, str] = {}
    used = set(all_ids) - {all_ids[pos] for pos in chosen}
    for pos in sorted(chosen):
        old = all_ids[pos]
        new = (_fresh_id(rng, used) if spec.rename_mode == "random"
               else _scrambled_id(rng, old, used))
        mapping[old] = new
        used.add(new)

    def renamed(e: str) -> str:
        return mapping.get(e, e)

    prop_kind = {p.id: p.kind for p in properties}
    classes = [replace(c, id=renamed(c.id),
                       superclasses=tuple(renamed(s) for s in c.superclasses))
               for c in classes]
    properties = [replace(p, id=renamed(p.id),
                          domain=renamed(p.domain) if p.domain is not None else None,
                          range=(renamed(p.range)
                                 if p.kind == OBJECT and p.range is not None
                                 else p.range))
                  for p in properties]
    instances = [replace(i, id=renamed(i.id),
                         types=tuple(renamed(t) for t in i.types),
                         values=tuple(
                             (renamed(p), renamed(v) if prop_kind[p] == OBJECT else v)
                             for p, v in i.values))
                 for i in instances]

    # 2. drop labels / comments
    if spec.drop_labels:
        classes = [replace(c, label=None) for c in classes]
        properties = [replace(p, label=None) for p in properties]
        instances = [replace(i, label=None) for i in instances]
    if spec.drop_comments:
        classes = [replace(c, comment=None) for c in classes]
        properties = [replace(p, comment=None) for p in properties]
        instances = [replace(i, comment=None) for i in instances]

    # 3. flatten: re-parent selected non-root classes to their grandparents
    eligible = [n for n, c in enumerate(classes) if c.superclasses]
    flat_positions = {eligible[n] for n in _pick(rng, len(eligible), spec.flatten_fraction)}
    supers_of = {c.id: c.superclasses for c in classes}
    flattened = []
    for n, c in enumerate(classes):
        if n not in flat_positions:
            flattened.append(c)
            continue
        grand: list[str] = []
        for p in c.superclasses:
            for g in supers_of[p]:
                if g != c.id and g not in grand:
                    grand.append(g)
        flattened.append(replace(c, superclasses=tuple(grand)))
    classes = flattened

    # 4. drop instances, then properties, then scrub dangling values
    inst_dropped = _pick(rng, len(instances), spec.drop_instances_fraction)
    survivors_inst = [n for n in range(len(instances)) if n not in inst_dropped]
    prop_dropped = _pick(rng, len(properties), spec.drop_properties_fraction)
    survivors_prop = [n for n in range(len(properties)) if n not in prop_dropped]

    instances = [instances[n] for n in survivors_inst]
    properties = [properties[n] for n in survivors_prop]
    live_ids = {c.id for c in classes} | {p.id for p in properties} | {
        i.id for i in instances
    }
    live_prop_kind = {p.id: p.kind for p in properties}
    instances = [
        replace(i, values=tuple(
            (p, v) for p, v in i.values
            if p in live_prop_kind
            and (live_prop_kind[p] != OBJECT or v in live_ids)
        ))
        for i in instances
    ]

    mutated = Ontology(name=name if name is not None else ont.name,
                       classes=tuple(classes), properties=tuple(properties),
                       instances=tuple(instances))

    pairs = [Correspondence(orig, cur.id, 1.0)
             for orig, cur in zip(orig_class_ids, classes)]
    pairs += [Correspondence(orig_prop_ids[n], properties[k].id, 1.0)
              for k, n in enumerate(survivors_prop)]
    pairs += [Correspondence(orig_inst_ids[n], instances[k].id, 1.0)
              for k, n in enumerate(survivors_inst)]
    reference = Alignment(tuple(pairs), (ont.name, mutated.name))
    return mutated, reference


LEVELS = (0.2, 0.4, 0.6, 0.8)


def gen_suite(ont: Ontology, base_seed: int) -> Suite:
    """Group-structured benchmark suite: one identity test, four
    linguistic-only levels, four structural-only levels, and the sixteen
    combined-level tests. Per-test seeds derive from base_seed plus a
    stable test index."""
    if len(ont.classes) < 10 or len(ont.properties) < 5 or len(ont.instances) < 5:
        raise ValueError(
            "seed ontology too small: need >= 10 classes, >= 5 properties, "
            ">= 5 instances"
        )
    if not 0 <= base_seed < 2 ** 64:
        raise ValueError("base_seed must be a 64-bit unsigned integer")

    recipes: list[tuple[str, str, MutationSpec]] = []
    index = 0

    def seeded(**kwargs) -> MutationSpec:
        nonlocal index
        spec = MutationSpec(rng_seed=(base_seed + index) % 2 ** 64, **kwargs)
        index += 1
        return spec

    recipes.append(("101", "101", seeded()))
    for lvl in LEVELS:
        recipes.append(("201", f"201-{int(lvl * 10)}", seeded(
            rename_fraction=lvl, rename_mode="random",
            drop_labels=True, drop_comments=True)))
    for lvl in LEVELS:
        recipes.append(("221", f"221-{int(lvl * 10)}", seeded(
            flatten_fraction=lvl, drop_instances_fraction=lvl,
            drop_properties_fraction=lvl)))
    for ling in LEVELS:
        for struct in LEVELS:
            recipes.append(("248", f"248-{int(ling * 10)}-{int(struct * 10)}", seeded(
                rename_fraction=ling, rename_mode="random",
                drop_labels=True, drop_comments=True,
                flatten_fraction=struct, drop_instances_fraction=struct,
                drop_properties_fraction=struct)))

    tests = []
    for group, test_id, spec in recipes:
        mutated, reference = mutate(ont, spec, name=f"{ont.name}-{test_id}")
        tests.append(SuiteTest(test_id=test_id, group=group, spec=spec,
                               ontology=mutated, reference=reference))
    return Suite(name=f"{ont.name}-bench", source=ont, base_seed=base_seed,
                 tests=tuple(tests))


# -- on-disk layout ----------------------------------------------------------

def write_suite(suite: Suite, out_dir) -> None:
    """Write source ontology, per-test targets and references, and the
    manifest under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "source.ont.json").write_text(serialize_ontology(suite.source),
                                         encoding="utf-8")
    manifest = {"suite": suite.name, "base_seed": suite.base_seed,
                "source": "source.ont.json", "tests": []}
    for t in suite.tests:
        test_dir = out / t.group / t.test_id
        test_dir.mkdir(parents=True, exist_ok=True)
        (test_dir / "target.ont.json").write_text(
            serialize_ontology(t.ontology), encoding="utf-8")
        _write_reference(t.reference, test_dir / "reference.align.json")
        manifest["tests"].append({
            "id": t.test_id,
            "group": t.group,
            "target": f"{t.group}/{t.test_id}/target.ont.json",
            "reference": f"{t.group}/{t.test_id}/reference.align.json",
            "mutation": t.spec.to_dict(),
        })
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _write_reference(a: Alignment, path: Path) -> None:
    from .alignment import write_alignment

    write_alignment(a, path)


def load_suite(suite_dir):
    """Read a generated suite back from disk: (suite name, source ontology,
    [(test id, group, target ontology, reference alignment)])."""
    root = Path(suite_dir)
    try:
        manifest = json.loads((root / "manifest.json").read_text(encoding="utf-8"))
        name = manifest["suite"]
        source = read_ontology(root / manifest["source"])
        tests = []
        for t in manifest["tests"]:
            target = read_ontology(root / t["target"])
            reference = read_alignment(root / t["reference"])
            tests.append((t["id"], t["group"], target, reference))
    except json.JSONDecodeError as e:
        raise InputFormatError(f"malformed manifest.json: {e}") from None
    except KeyError as e:
        raise InputFormatError(f"manifest.json missing key: {e.args[0]}") from None
    return name, source, tests
