"""Quotient of a disjoint union of DSLs by a generated equivalence.

Shared by pushouts and colimits. Elements are ``(label, name)`` pairs where
``label`` names the DSL the sigil or symbol comes from.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .dsl import (
    Diagnostic,
    Dsl,
    FunctionSymbol,
    Signature,
    TypeUniverse,
    ValidationReport,
    denoted_signature,
    eval_action,
)
from .morphism import DslMorphism
from .unionfind import UnionFind
from .values import BaseType, enumerate_tuples, require_bound

Element = tuple[str, str]

SAFETY_KINDS = {"base-mismatch", "missing-witness", "witness-mismatch", "unknown-witness-sigil"}


@dataclass(frozen=True)
class Node:
    label: str
    qualifier: str
    dsl: Dsl


@dataclass(frozen=True)
class Link:
    """``a`` and ``b`` are identified; ``directed`` when a morphism sends ``a`` to ``b``."""

    a: Element
    b: Element
    directed: bool


@dataclass(frozen=True)
class WitnessRef:
    """A witness whose endpoints may leave the node label unspecified."""

    left: tuple[Optional[str], str]
    right: tuple[Optional[str], str]
    base: BaseType
    text: str

    def covers(self, p: Element, q: Element) -> bool:
        return (_matches(self.left, p) and _matches(self.right, q)) or (
            _matches(self.left, q) and _matches(self.right, p))


def _matches(ref, e: Element) -> bool:
    label, name = ref
    return name == e[1] and (label is None or label == e[0])


@dataclass
class Quotient:
    glued: Dsl
    legs: dict[str, DslMorphism]
    type_classes: list[list[Element]]
    symbol_classes: list[list[Element]]
    type_names: list[str]
    symbol_names: list[str]
    safety: ValidationReport = field(default_factory=lambda: ValidationReport(True))


def _partition(elements, links):
    uf = UnionFind(elements)
    for link in links:
        uf.union(link.a, link.b)
    return uf.classes()


def _reachable(links) -> dict[Element, set[Element]]:
    succ = defaultdict(set)
    for link in links:
        if link.directed:
            succ[link.a].add(link.b)
    reach = {}
    for start in list(succ):
        seen, todo = set(), deque([start])
        while todo:
            x = todo.popleft()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        reach[start] = seen
    return reach


def _class_names(classes, qualifiers) -> list[str]:
    names = ["+".join(n for _, n in c) for c in classes]
    counts = defaultdict(int)
    for n in names:
        counts[n] += 1
    out = []
    for c, n in zip(classes, names):
        if counts[n] > 1:
            n = "+".join(f"{qualifiers[lab]}.{x}" for lab, x in c)
        out.append(n)
    seen = defaultdict(int)
    unique = []
    for n in out:
        seen[n] += 1
        unique.append(n if seen[n] == 1 else f"{n}#{seen[n]}")
    return unique


def resolve_witness(w, nodes: Sequence[Node], diags: list) -> None:
    for label, name in (w.left, w.right):
        hits = [n for n in nodes if (label is None or n.label == label)
                and name in n.dsl.universe]
        if not hits:
            where = name if label is None else f"{label}.{name}"
            diags.append(Diagnostic("unknown-witness-sigil", w.text,
                                    f"witness {w.text} names unknown sigil {where}"))


def safety_report(nodes: Sequence[Node], type_links, symbol_links,
                  witnesses: Sequence[WitnessRef], bound: int) -> ValidationReport:
    """Check every identification the links force.

    A class of sigils must share one base type. Two members that no chain
    of morphisms connects need a witness at that base. Identified symbols
    must have the same quotient signature and agree on every enumerated
    argument tuple.
    """
    require_bound(bound)
    by_label = {n.label: n.dsl for n in nodes}
    diags: list[Diagnostic] = []
    for w in witnesses:
        resolve_witness(w, nodes, diags)

    elements = [(n.label, s) for n in nodes for s in n.dsl.sigils]
    classes = _partition(elements, type_links)
    reach = _reachable(type_links)
    class_of = {}
    for k, cls in enumerate(classes):
        for e in cls:
            class_of[e] = k
        bases = {e: by_label[e[0]].base_of(e[1]) for e in cls}
        distinct = list(dict.fromkeys(bases.values()))
        if len(distinct) > 1:
            p = next(e for e in cls if bases[e] is distinct[0])
            q = next(e for e in cls if bases[e] is distinct[1])
            diags.append(Diagnostic(
                "base-mismatch", f"{p[1]} ~ {q[1]}",
                f"no base type equates {distinct[0]} and {distinct[1]} "
                f"(merging {p[0]}.{p[1]} with {q[0]}.{q[1]})"))
            continue
        base = distinct[0]
        for x, p in enumerate(cls):
            for q in cls[x + 1:]:
                if p[0] == q[0] and p[1] == q[1]:
                    continue
                if q in reach.get(p, ()) or p in reach.get(q, ()):
                    continue
                covering = [w for w in witnesses if w.covers(p, q)]
                if not covering:
                    diags.append(Diagnostic(
                        "missing-witness", f"{p[1]} ~ {q[1]}",
                        f"no witness for merging {p[0]}.{p[1]} with {q[0]}.{q[1]}"))
                elif all(w.base is not base for w in covering):
                    diags.append(Diagnostic(
                        "witness-mismatch", f"{p[1]} ~ {q[1]}",
                        f"witness {covering[0].text} claims {covering[0].base}, "
                        f"but {p[1]} and {q[1]} denote {base}"))

    sym_elements = [(n.label, f.name) for n in nodes for f in n.dsl.symbols]
    for cls in _partition(sym_elements, symbol_links):
        if len(cls) < 2:
            continue
        rep_label, rep_name = cls[0]
        rep_dsl = by_label[rep_label]
        rep = rep_dsl.symbol(rep_name)
        rep_sig = _class_signature(rep.sig, rep_label, class_of)
        rep_den = denoted_signature(rep_dsl, rep.sig)
        for label, name in cls[1:]:
            d = by_label[label]
            f = d.symbol(name)
            if _class_signature(f.sig, label, class_of) != rep_sig:
                diags.append(Diagnostic(
                    "signature-mismatch", f"{rep_name} ~ {name}",
                    f"{rep_label}.{rep_name} : {rep.sig} and {label}.{name} : {f.sig} "
                    f"disagree after the type quotient"))
                continue
            if denoted_signature(d, f.sig) != rep_den:
                continue  # reported as a base mismatch above
            for args in enumerate_tuples(rep_den.params, bound):
                a, b = eval_action(rep_dsl, rep, args), eval_action(d, f, args)
                if a != b:
                    diags.append(Diagnostic(
                        "action-disagreement", f"{rep_name} ~ {name}",
                        f"{rep_label}.{rep_name}{tuple(args)} = {a!r} but "
                        f"{label}.{name}{tuple(args)} = {b!r}"))
                    break
    return ValidationReport.from_diagnostics(diags)


def _class_signature(sig: Signature, label, class_of):
    return (tuple(class_of[(label, c)] for c in sig.domain), class_of[(label, sig.codomain)])


def build_quotient(nodes: Sequence[Node], type_links, symbol_links, name: str) -> Quotient:
    """Glue the nodes along the links; assumes the safety report passed."""
    by_label = {n.label: n.dsl for n in nodes}
    qualifiers = {n.label: n.qualifier for n in nodes}

    elements = [(n.label, s) for n in nodes for s in n.dsl.sigils]
    type_classes = _partition(elements, type_links)
    type_names = _class_names(type_classes, qualifiers)
    sigil_class = {e: type_names[k] for k, c in enumerate(type_classes) for e in c}
    universe = TypeUniverse.of(
        (n, by_label[c[0][0]].base_of(c[0][1])) for n, c in zip(type_names, type_classes))

    sym_elements = [(n.label, f.name) for n in nodes for f in n.dsl.symbols]
    symbol_classes = _partition(sym_elements, symbol_links)
    symbol_names = _class_names(symbol_classes, qualifiers)
    symbol_class = {e: symbol_names[k] for k, c in enumerate(symbol_classes) for e in c}
    symbols = []
    for n, cls in zip(symbol_names, symbol_classes):
        label, rep = cls[0]
        f = by_label[label].symbol(rep)
        sig = Signature([sigil_class[(label, c)] for c in f.sig.domain],
                        sigil_class[(label, f.sig.codomain)])
        symbols.append(FunctionSymbol(n, sig, f.action))
    glued = Dsl(name, universe, symbols)

    legs = {}
    for node in nodes:
        legs[node.label] = DslMorphism(
            node.dsl, glued,
            {s: sigil_class[(node.label, s)] for s in node.dsl.sigils},
            {f.name: symbol_class[(node.label, f.name)] for f in node.dsl.symbols},
        )
    return Quotient(glued, legs, type_classes, symbol_classes, type_names, symbol_names)


def classes_to_json(classes, names):
    return [{"name": n, "members": [list(e) for e in c]} for n, c in zip(names, classes)]
