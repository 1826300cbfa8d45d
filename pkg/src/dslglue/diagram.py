"""Finite diagrams of DSLs and their colimits.

A shape is a finite graph; a diagram puts a DSL on every object and a
morphism on every edge. The colimit is the disjoint union of all node DSLs
with each element identified with its images along the edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .dsl import Diagnostic, Dsl, ValidationReport
from .errors import InvalidMorphism
from .glue import GlueWitness, raise_for_report
from .jsonio import DIAGRAM_SCHEMA, check_schema, load_dsl, load_json
from .morphism import DslMorphism, check_morphism
from .quotient import Link, Node, WitnessRef, build_quotient, classes_to_json, safety_report
from .universal import DEFAULT_CEILING, MAX_TARGET_SIGILS, Source, verify_mediators
from .values import BaseType, require_bound


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Shape:
    objects: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def span(cls, left="-1", apex="0", right="1") -> "Shape":
        return cls((left, apex, right),
                   (Edge("left", apex, left), Edge("right", apex, right)))


@dataclass(frozen=True)
class Diagram:
    shape: Shape
    node_dsl: Mapping[str, Dsl]
    edge_morphism: Mapping[str, DslMorphism]

    def __post_init__(self):
        object.__setattr__(self, "node_dsl", dict(self.node_dsl))
        object.__setattr__(self, "edge_morphism", dict(self.edge_morphism))

    @classmethod
    def of_span(cls, span, left="-1", apex="0", right="1") -> "Diagram":
        shape = Shape.span(left, apex, right)
        return cls(shape,
                   {left: span.left.target, apex: span.apex, right: span.right.target},
                   {"left": span.left, "right": span.right})


@dataclass
class ColimitResult:
    colimit: Dsl
    legs: dict[str, DslMorphism]
    type_classes: list
    symbol_classes: list
    type_names: list = field(default_factory=list)
    symbol_names: list = field(default_factory=list)
    witnesses_used: list = field(default_factory=list)
    safety: ValidationReport = field(default_factory=lambda: ValidationReport(True))

    def to_json(self):
        return {
            "colimit": self.colimit.name,
            "type_classes": classes_to_json(self.type_classes, self.type_names),
            "symbol_classes": classes_to_json(self.symbol_classes, self.symbol_names),
            "legs": {o: {"types": m.type_map, "functions": m.symbol_map}
                     for o, m in self.legs.items()},
            "witnesses_used": [w.to_json() for w in self.witnesses_used],
            "safety": self.safety.to_json(),
        }


def validate_diagram(d: Diagram, bound: int = 3) -> ValidationReport:
    require_bound(bound)
    diags: list[Diagnostic] = []
    objects = d.shape.objects
    if not objects:
        diags.append(Diagnostic("empty-shape", "shape", "a shape needs at least one object"))
    if len(set(objects)) != len(objects):
        diags.append(Diagnostic("duplicate-object", "shape", "object names must be distinct"))
    for o in objects:
        if o not in d.node_dsl:
            diags.append(Diagnostic("missing-node", o, f"object {o} has no DSL"))
    names = set()
    for e in d.shape.edges:
        if e.name in names:
            diags.append(Diagnostic("duplicate-edge", e.name, f"duplicate edge {e.name}"))
        names.add(e.name)
        if e.source not in objects or e.target not in objects:
            diags.append(Diagnostic("dangling-edge", e.name,
                                    f"edge {e.name}: {e.source} -> {e.target} leaves the shape"))
            continue
        m = d.edge_morphism.get(e.name)
        if m is None:
            diags.append(Diagnostic("missing-morphism", e.name, f"edge {e.name} has no morphism"))
            continue
        if m.source != d.node_dsl.get(e.source):
            diags.append(Diagnostic("source-mismatch", e.name,
                                    f"edge {e.name}: morphism source is not the DSL at {e.source}"))
            continue
        if m.target != d.node_dsl.get(e.target):
            diags.append(Diagnostic("target-mismatch", e.name,
                                    f"edge {e.name}: morphism target is not the DSL at {e.target}"))
            continue
        for sub in check_morphism(m, bound).diagnostics:
            diags.append(Diagnostic(sub.kind, e.name, f"edge {e.name}: {sub.message}"))
    return ValidationReport.from_diagnostics(diags)


def _nodes(d: Diagram):
    return [Node(o, o, d.node_dsl[o]) for o in d.shape.objects]


def _links(d: Diagram):
    type_links, symbol_links = [], []
    for e in d.shape.edges:
        m = d.edge_morphism[e.name]
        type_links += [Link((e.source, x), (e.target, y), True) for x, y in m.type_map.items()]
        symbol_links += [Link((e.source, f), (e.target, g), True)
                         for f, g in m.symbol_map.items()]
    return type_links, symbol_links


def witness_refs(d: Diagram, witnesses: Sequence[GlueWitness]):
    """Witness endpoints are ``sigil`` or ``object.sigil``."""
    def ref(text):
        obj, dot, sigil = text.rpartition(".")
        if dot and obj in d.shape.objects:
            return obj, sigil
        return None, text

    return [WitnessRef(ref(w.left_sigil), ref(w.right_sigil), w.base,
                       f"({w.left_sigil}, {w.right_sigil}, {w.base})")
            for w in witnesses]


def colimit(d: Diagram, witnesses: Sequence[GlueWitness] = (), bound: int = 3,
            name: str | None = None) -> ColimitResult:
    rep = validate_diagram(d, bound)
    if not rep.ok:
        raise InvalidMorphism("diagram is invalid", rep)
    nodes = _nodes(d)
    type_links, symbol_links = _links(d)
    refs = witness_refs(d, witnesses)
    report = safety_report(nodes, type_links, symbol_links, refs, bound)
    raise_for_report(report, "colimit")
    if name is None:
        name = "+".join(dict.fromkeys(n.dsl.name for n in nodes))
    q = build_quotient(nodes, type_links, symbol_links, name)
    used = [w for w, r in zip(witnesses, refs)
            if any(r.covers(p, q_) for c in q.type_classes
                   for i, p in enumerate(c) for q_ in c[i + 1:])]
    return ColimitResult(q.glued, q.legs, q.type_classes, q.symbol_classes,
                         q.type_names, q.symbol_names, used, report)


def check_cocone(d: Diagram, r: ColimitResult) -> ValidationReport:
    """Every edge ``e: a -> b`` must satisfy ``leg(b) . e == leg(a)``."""
    diags = []
    for e in d.shape.edges:
        m = d.edge_morphism[e.name]
        la, lb = r.legs[e.source], r.legs[e.target]
        bad = [x for x, y in m.type_map.items() if lb.type_map.get(y) != la.type_map.get(x)]
        bad += [f for f, g in m.symbol_map.items()
                if lb.symbol_map.get(g) != la.symbol_map.get(f)]
        if bad:
            diags.append(Diagnostic("non-commuting-cocone", e.name,
                                    f"edge {e.name} does not commute at {', '.join(bad)}"))
    return ValidationReport.from_diagnostics(diags)


def verify_colimit_universal(r: ColimitResult, d: Diagram,
                             max_target_sigils: int = MAX_TARGET_SIGILS, bound: int = 3,
                             ceiling: int = DEFAULT_CEILING,
                             typed: bool = False) -> ValidationReport:
    rep = check_cocone(d, r)
    if not rep.ok:
        return rep
    type_eqs, symbol_eqs = [], []
    for e in d.shape.edges:
        m = d.edge_morphism[e.name]
        type_eqs += [((e.target, y), (e.source, x)) for x, y in m.type_map.items()]
        symbol_eqs += [((e.target, g), (e.source, f)) for f, g in m.symbol_map.items()]
    sources = [Source(o, d.node_dsl[o], r.legs[o]) for o in d.shape.objects]
    return verify_mediators(r.colimit, sources, type_eqs, symbol_eqs,
                            max_target_sigils, bound, ceiling, typed)


# -- diagram files -----------------------------------------------------------


@dataclass
class DiagramSpec:
    diagram: Diagram
    witnesses: list
    bound: int


def load_diagram(path) -> DiagramSpec:
    path = Path(path)
    doc = load_json(path)
    check_schema(doc, DIAGRAM_SCHEMA, str(path))
    nodes = {o["name"]: load_dsl(path.parent / o["dsl"]) for o in doc["objects"]}
    objects = [o["name"] for o in doc["objects"]]
    edges, morphisms = [], {}
    for e in doc["edges"]:
        edges.append(Edge(e["name"], e["from"], e["to"]))
        if e["from"] in nodes and e["to"] in nodes:
            morphisms[e["name"]] = DslMorphism(nodes[e["from"]], nodes[e["to"]],
                                               e.get("type_map", {}),
                                               e.get("function_map", {}))
    witnesses = [GlueWitness(w["left"], w["right"], BaseType(w["base"]))
                 for w in doc.get("witnesses", [])]
    return DiagramSpec(Diagram(Shape(objects, edges), nodes, morphisms),
                       witnesses, doc.get("bound", 3))
