"""Morphisms of DSLs: a sigil map together with a symbol map."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .dsl import Diagnostic, Dsl, Signature, ValidationReport, denoted_signature, eval_action
from .values import enumerate_tuples, require_bound


@dataclass(frozen=True)
class DslMorphism:
    source: Dsl
    target: Dsl
    type_map: Mapping[str, str]
    symbol_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "type_map", dict(self.type_map))
        object.__setattr__(self, "symbol_map", dict(self.symbol_map))

    def map_signature(self, sig: Signature) -> Signature:
        return Signature([self.type_map[c] for c in sig.domain],
                         self.type_map[sig.codomain])

    def then(self, other: "DslMorphism") -> "DslMorphism":
        """``other . self``: first this morphism, then ``other``."""
        return DslMorphism(
            self.source, other.target,
            {s: other.type_map[t] for s, t in self.type_map.items()},
            {f: other.symbol_map[g] for f, g in self.symbol_map.items()},
        )

    @classmethod
    def identity(cls, d: Dsl) -> "DslMorphism":
        return cls(d, d, {s: s for s in d.sigils}, {f.name: f.name for f in d.symbols})


def check_morphism(m: DslMorphism, bound: int = 3) -> ValidationReport:
    """Check that ``m`` is total, commutes with signatures and preserves actions.

    Action preservation is checked extensionally on every enumerated
    argument tuple. Values cross a sigil map unchanged, so a symbol whose
    sigils change base type cannot be preserved.
    """
    require_bound(bound)
    src, tgt = m.source, m.target
    diags: list[Diagnostic] = []
    for s in src.sigils:
        if s not in m.type_map:
            diags.append(Diagnostic("partial-map", s, f"sigil {s} has no image"))
        elif m.type_map[s] not in tgt.universe:
            diags.append(Diagnostic("unknown-sigil", s,
                                    f"sigil {s} maps to unknown sigil {m.type_map[s]}"))
    for s in m.type_map:
        if s not in src.universe:
            diags.append(Diagnostic("unknown-sigil", s, f"type map names unknown sigil {s}"))
    for g in m.symbol_map:
        if not src.has_symbol(g):
            diags.append(Diagnostic("unknown-symbol", g,
                                    f"symbol map names unknown symbol {g}"))
    if diags:
        return ValidationReport.from_diagnostics(diags)

    for f in src.symbols:
        if f.name not in m.symbol_map:
            diags.append(Diagnostic("partial-map", f.name, f"symbol {f.name} has no image"))
            continue
        gname = m.symbol_map[f.name]
        if not tgt.has_symbol(gname):
            diags.append(Diagnostic("unknown-symbol", f.name,
                                    f"symbol {f.name} maps to unknown symbol {gname}"))
            continue
        g = tgt.symbol(gname)
        image = m.map_signature(f.sig)
        if g.sig != image:
            diags.append(Diagnostic(
                "signature-commutation", f.name,
                f"{f.name} maps to {gname} with signature {g.sig}, expected {image}"))
            continue
        want = denoted_signature(src, f.sig)
        have = denoted_signature(tgt, g.sig)
        if want != have:
            diags.append(Diagnostic(
                "untranslatable", f.name,
                f"{f.name} -> {gname}: base types change across the sigil map"))
            continue
        for args in enumerate_tuples(want.params, bound):
            a, b = eval_action(src, f, args), eval_action(tgt, g, args)
            if a != b:
                diags.append(Diagnostic(
                    "action-preservation", f.name,
                    f"{f.name}{tuple(args)} = {a!r} but {gname}{tuple(args)} = {b!r}"))
                break
    return ValidationReport.from_diagnostics(diags)
