"""Gluing two DSLs along a shared apex: spans, safety and pushouts."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .dsl import Diagnostic, Dsl, ValidationReport
from .errors import (
    ActionDisagreement,
    InconsistentQuotient,
    InvalidMorphism,
    ParseError,
    SafetyViolation,
)
from .jsonio import GLUE_SCHEMA, check_schema, load_dsl, load_json
from .morphism import DslMorphism, check_morphism
from .quotient import (
    SAFETY_KINDS,
    Link,
    Node,
    WitnessRef,
    build_quotient,
    classes_to_json,
    safety_report,
)
from .universal import DEFAULT_CEILING, MAX_TARGET_SIGILS, Source, verify_mediators
from .values import BaseType

LEFT, RIGHT = "left", "right"


@dataclass(frozen=True)
class Span:
    apex: Dsl
    left: DslMorphism
    right: DslMorphism

    def __post_init__(self):
        if self.left.source != self.apex or self.right.source != self.apex:
            raise InvalidMorphism("both legs of a span must start at its apex")

    def swapped(self) -> "Span":
        return Span(self.apex, self.right, self.left)


@dataclass(frozen=True)
class GlueWitness:
    """Evidence that ``left_sigil`` and ``right_sigil`` both denote ``base``."""

    left_sigil: str
    right_sigil: str
    base: BaseType

    def to_json(self):
        return {"left": self.left_sigil, "right": self.right_sigil, "base": self.base.value}


@dataclass
class PushoutResult:
    glued: Dsl
    inj_left: DslMorphism
    inj_right: DslMorphism
    type_classes: list
    symbol_classes: list
    type_names: list = field(default_factory=list)
    symbol_names: list = field(default_factory=list)
    safety: ValidationReport = field(default_factory=lambda: ValidationReport(True))

    def to_json(self):
        return {
            "glued": self.glued.name,
            "type_classes": classes_to_json(self.type_classes, self.type_names),
            "symbol_classes": classes_to_json(self.symbol_classes, self.symbol_names),
            "inj_left": {"types": self.inj_left.type_map,
                         "functions": self.inj_left.symbol_map},
            "inj_right": {"types": self.inj_right.type_map,
                          "functions": self.inj_right.symbol_map},
            "safety": self.safety.to_json(),
        }


def _nodes(s: Span):
    qual_l, qual_r = s.left.target.name, s.right.target.name
    if qual_l == qual_r:
        qual_l, qual_r = LEFT, RIGHT
    return [Node(LEFT, qual_l, s.left.target), Node(RIGHT, qual_r, s.right.target)]


def _links(s: Span):
    type_links = [Link((LEFT, s.left.type_map[z]), (RIGHT, s.right.type_map[z]), False)
                  for z in s.apex.sigils]
    symbol_links = [Link((LEFT, s.left.symbol_map[f.name]),
                         (RIGHT, s.right.symbol_map[f.name]), False)
                    for f in s.apex.symbols]
    return type_links, symbol_links


def _witness_refs(witnesses: Sequence[GlueWitness]):
    return [WitnessRef((LEFT, w.left_sigil), (RIGHT, w.right_sigil), w.base,
                       f"({w.left_sigil}, {w.right_sigil}, {w.base})")
            for w in witnesses]


def check_safety(s: Span, witnesses: Sequence[GlueWitness], bound: int = 3) -> ValidationReport:
    """Every forced identification is witnessed and every merged pair of symbols agrees."""
    type_links, symbol_links = _links(s)
    return safety_report(_nodes(s), type_links, symbol_links, _witness_refs(witnesses), bound)


def raise_for_report(report: ValidationReport, what: str):
    kinds = {d.kind for d in report.diagnostics}
    if kinds & SAFETY_KINDS:
        raise SafetyViolation(f"{what}: safety violation", report)
    if "signature-mismatch" in kinds:
        raise InconsistentQuotient(f"{what}: inconsistent quotient", report)
    if "action-disagreement" in kinds:
        raise ActionDisagreement(f"{what}: glued symbols disagree", report)
    if not report.ok:
        raise SafetyViolation(f"{what}: gluing obligations failed", report)


def check_legs(legs, bound: int):
    for label, m in legs:
        rep = check_morphism(m, bound)
        if not rep.ok:
            raise InvalidMorphism(f"{label} morphism is invalid", rep)


def pushout(s: Span, witnesses: Sequence[GlueWitness] = (), bound: int = 3) -> PushoutResult:
    """Glue ``s.left.target`` and ``s.right.target`` along the apex.

    Sigils (and symbols) are identified when the apex sends one element to
    both; the glued DSL has one sigil per class, named by joining member
    names with ``+``.
    """
    check_legs([(LEFT, s.left), (RIGHT, s.right)], bound)
    report = check_safety(s, witnesses, bound)
    raise_for_report(report, "pushout")
    type_links, symbol_links = _links(s)
    q = build_quotient(_nodes(s), type_links, symbol_links,
                       f"{s.left.target.name}+{s.right.target.name}")
    return PushoutResult(q.glued, q.legs[LEFT], q.legs[RIGHT], q.type_classes,
                         q.symbol_classes, q.type_names, q.symbol_names, report)


def square_commutes(p: PushoutResult, s: Span) -> list[Diagnostic]:
    diags = []
    for z in s.apex.sigils:
        a = p.inj_left.type_map.get(s.left.type_map[z])
        b = p.inj_right.type_map.get(s.right.type_map[z])
        if a != b:
            diags.append(Diagnostic("non-commuting-square", z,
                                    f"apex sigil {z} lands on {a} and {b}"))
    for f in s.apex.symbols:
        a = p.inj_left.symbol_map.get(s.left.symbol_map[f.name])
        b = p.inj_right.symbol_map.get(s.right.symbol_map[f.name])
        if a != b:
            diags.append(Diagnostic("non-commuting-square", f.name,
                                    f"apex symbol {f.name} lands on {a} and {b}"))
    return diags


def verify_universal_property(p: PushoutResult, s: Span,
                              max_target_sigils: int = MAX_TARGET_SIGILS, bound: int = 3,
                              ceiling: int = DEFAULT_CEILING,
                              typed: bool = False) -> ValidationReport:
    """Confirm every small cocone under the span factors uniquely through ``p``."""
    diags = square_commutes(p, s)
    if diags:
        return ValidationReport.from_diagnostics(diags)
    type_eqs = [((LEFT, s.left.type_map[z]), (RIGHT, s.right.type_map[z]))
                for z in s.apex.sigils]
    symbol_eqs = [((LEFT, s.left.symbol_map[f.name]), (RIGHT, s.right.symbol_map[f.name]))
                  for f in s.apex.symbols]
    sources = [Source(LEFT, s.left.target, p.inj_left),
               Source(RIGHT, s.right.target, p.inj_right)]
    return verify_mediators(p.glued, sources, type_eqs, symbol_eqs,
                            max_target_sigils, bound, ceiling, typed)


# -- glue spec files ---------------------------------------------------------


@dataclass
class GlueSpec:
    span: Span
    witnesses: list
    bound: int


def _morphism(doc, apex, target):
    return DslMorphism(apex, target, doc.get("types", {}), doc.get("functions", {}))


def load_glue(path) -> GlueSpec:
    path = Path(path)
    doc = load_json(path)
    check_schema(doc, GLUE_SCHEMA, str(path))
    base = path.parent
    left = load_dsl(base / doc["left"])
    right = load_dsl(base / doc["right"])
    apex = load_dsl(base / doc["apex"])
    span = Span(apex, _morphism(doc["left_map"], apex, left),
                _morphism(doc["right_map"], apex, right))
    witnesses = [GlueWitness(w["left"], w["right"], BaseType(w["base"]))
                 for w in doc.get("witnesses", [])]
    bound = doc.get("bound", 3)
    if bound < 1:
        raise ParseError(f"{path}: bound must be >= 1")
    return GlueSpec(span, witnesses, bound)
