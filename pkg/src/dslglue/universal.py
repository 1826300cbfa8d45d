"""Brute-force check of the universal property of a glued DSL.

A cocone assigns every source sigil a sigil of a small target universe so
that the required identifications hold; with ``typed=True`` it must also
keep base types. The glued DSL is universal when each such cocone factors
through it by exactly one mediating map. All maps are enumerated outright;
nothing is solved.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .dsl import Diagnostic, Dsl, ValidationReport, denoted_signature, eval_action
from .errors import PreconditionError, SearchSpaceExceeded
from .morphism import DslMorphism
from .values import BaseType, enumerate_tuples, require_bound

MAX_TARGET_SIGILS = 3
DEFAULT_CEILING = 5_000_000
_REPORTED = 5


@dataclass(frozen=True)
class Source:
    label: str
    dsl: Dsl
    leg: DslMorphism


class _Budget:
    def __init__(self, ceiling):
        self.ceiling = ceiling
        self.used = 0

    def spend(self, n=1):
        self.used += n
        if self.used > self.ceiling:
            raise SearchSpaceExceeded(
                f"universal-property search exceeded {self.ceiling} steps")


def fingerprint(d: Dsl, name: str, bound: int):
    """Extension of a symbol on the enumerated carriers."""
    f = d.symbol(name)
    den = denoted_signature(d, f.sig)
    return den, tuple(eval_action(d, f, args) for args in enumerate_tuples(den.params, bound))


def target_universes(glued: Dsl, max_sigils: int):
    bases = sorted({glued.base_of(s) for s in glued.sigils}, key=list(BaseType).index)
    for k in range(1, max_sigils + 1):
        yield from itertools.combinations_with_replacement(bases, k)


def verify_mediators(glued: Dsl, sources: Sequence[Source], type_eqs, symbol_eqs,
                     max_target_sigils: int = MAX_TARGET_SIGILS, bound: int = 3,
                     ceiling: int = DEFAULT_CEILING, typed: bool = False) -> ValidationReport:
    """Count mediators for every cocone into every small target.

    ``type_eqs`` and ``symbol_eqs`` list pairs of source elements
    ``(label, name)`` that a cocone must send to the same target element.
    """
    if not 1 <= max_target_sigils <= MAX_TARGET_SIGILS:
        raise PreconditionError(
            f"max_target_sigils must be between 1 and {MAX_TARGET_SIGILS}, "
            f"got {max_target_sigils}")
    require_bound(bound)
    budget = _Budget(ceiling)
    legs = {s.label: s.leg for s in sources}
    dsls = {s.label: s.dsl for s in sources}
    src_sigils = [(s.label, x) for s in sources for x in s.dsl.sigils]
    src_symbols = [(s.label, f.name) for s in sources for f in s.dsl.symbols]
    glued_sigils = list(glued.sigils)
    glued_symbols = [f.name for f in glued.symbols]

    fp_glued = {g: fingerprint(glued, g, bound) for g in glued_symbols}
    fp_src = {e: fingerprint(dsls[e[0]], e[1], bound) for e in src_symbols}

    diags: list[Diagnostic] = []
    stats = {"targets": 0, "cocones": 0, "symbol_cocones": 0,
             "bad_type_cocones": 0, "bad_symbol_cocones": 0}

    def complain(kind, msg):
        if len(diags) < _REPORTED:
            diags.append(Diagnostic(kind, "cocone", msg))

    for target in target_universes(glued, max_target_sigils):
        stats["targets"] += 1
        if typed:
            by_base = {b: [i for i, t in enumerate(target) if t is b] for b in set(target)}
        else:
            by_base = {b: list(range(len(target))) for b in BaseType}
        cands = [by_base.get(dsls[lab].base_of(x), []) for lab, x in src_sigils]
        for choice in itertools.product(*cands):
            budget.spend()
            k = dict(zip(src_sigils, choice))
            if any(k[a] != k[b] for a, b in type_eqs):
                continue
            stats["cocones"] += 1
            found = []
            for u in itertools.product(*(by_base.get(glued.base_of(g), [])
                                         for g in glued_sigils)):
                budget.spend()
                um = dict(zip(glued_sigils, u))
                if all(um[legs[lab].type_map[x]] == k[(lab, x)] for lab, x in src_sigils):
                    found.append(um)
            if len(found) != 1:
                stats["bad_type_cocones"] += 1
                complain("mediator-count",
                         f"target {[str(b) for b in target]}, cocone "
                         f"{_show_map(k)}: {len(found)} mediating sigil maps")
                continue
            _check_symbols(glued, found[0], k, legs, dsls, src_symbols, glued_symbols,
                           symbol_eqs, fp_glued, fp_src, budget, stats, complain, target)

    return ValidationReport.from_diagnostics(diags, details=stats)


def _check_symbols(glued, u, k, legs, dsls, src_symbols, glued_symbols, symbol_eqs,
                   fp_glued, fp_src, budget, stats, complain, target):
    # target symbols: the glued symbols carried along the type mediator u
    def target_sig(g):
        sig = glued.symbol(g).sig
        return tuple(u[c] for c in sig.domain), u[sig.codomain]

    tsig = {g: target_sig(g) for g in glued_symbols}
    cands = []
    for lab, f in src_symbols:
        sig = dsls[lab].symbol(f).sig
        want = tuple(k[(lab, c)] for c in sig.domain), k[(lab, sig.codomain)]
        cands.append([j for j in glued_symbols
                      if tsig[j] == want and fp_glued[j] == fp_src[(lab, f)]])
    med_cands = [[j for j in glued_symbols
                  if tsig[j] == tsig[g] and fp_glued[j] == fp_glued[g]]
                 for g in glued_symbols]
    for choice in itertools.product(*cands):
        budget.spend()
        kf = dict(zip(src_symbols, choice))
        if any(kf[a] != kf[b] for a, b in symbol_eqs):
            continue
        stats["symbol_cocones"] += 1
        count = 0
        for uf in itertools.product(*med_cands):
            budget.spend()
            um = dict(zip(glued_symbols, uf))
            if all(um[legs[lab].symbol_map[f]] == kf[(lab, f)] for lab, f in src_symbols):
                count += 1
        if count != 1:
            stats["bad_symbol_cocones"] += 1
            complain("symbol-mediator-count",
                     f"target {[str(b) for b in target]}, symbol cocone "
                     f"{_show_map(kf)}: {count} mediating symbol maps")


def _show_map(m):
    return "{" + ", ".join(f"{lab}.{x}->{v}" for (lab, x), v in m.items()) + "}"
