"""DSLs: type universes, signatures, function symbols and their actions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from .errors import (
    ArityMismatch,
    IndexOutOfRange,
    TypeMismatch,
    UnknownBuiltin,
    UnknownSigil,
    UnknownSymbol,
)
from .values import BaseType, Value

B = BaseType


# -- builtin catalog ---------------------------------------------------------


@dataclass(frozen=True)
class Builtin:
    name: str
    params: tuple[BaseType, ...]
    result: BaseType
    fn: Callable = field(compare=False, repr=False)


def _take_prefix(n, s):
    return Value.string(s.data[: n.data])


def _fields_of(m):
    return Value.string(",".join(sorted(k for k, _ in m.data)))


BUILTINS: dict[str, Builtin] = {
    b.name: b
    for b in [
        Builtin("take_prefix", (B.NATURAL, B.STRING), B.STRING, _take_prefix),
        Builtin("id_string", (B.STRING,), B.STRING, lambda s: s),
        Builtin("concat", (B.STRING, B.STRING), B.STRING,
                lambda s, t: Value.string(s.data + t.data)),
        Builtin("length", (B.STRING,), B.NATURAL,
                lambda s: Value.natural(len(s.data))),
        Builtin("eq_nat", (B.NATURAL, B.NATURAL), B.BOOLEAN,
                lambda m, n: Value.boolean(m.data == n.data)),
        Builtin("add", (B.NATURAL, B.NATURAL), B.NATURAL,
                lambda m, n: Value.natural(m.data + n.data)),
        Builtin("fields_of", (B.FIELDMAP,), B.STRING, _fields_of),
    ]
}


# -- action expressions ------------------------------------------------------


@dataclass(frozen=True)
class BuiltinRef:
    name: str


@dataclass(frozen=True)
class Arg:
    index: int


@dataclass(frozen=True)
class Lit:
    value: Value


@dataclass(frozen=True)
class Apply:
    head: "TermExpr"
    args: tuple["TermExpr", ...]


TermExpr = Union[BuiltinRef, Arg, Lit, Apply]


@dataclass(frozen=True)
class FunType:
    params: tuple[BaseType, ...]
    result: BaseType


ExprType = Union[BaseType, FunType]


@dataclass(frozen=True)
class _Partial:
    builtin: Builtin
    bound: tuple[Value, ...]


def infer_expr(expr: TermExpr, arg_bases: Sequence[BaseType]) -> ExprType:
    """Type of ``expr`` when argument ``i`` has base ``arg_bases[i]``.

    Applications may be partial, so ``apply(take_prefix, [arg 0])`` has
    type ``string -> string``.
    """
    if isinstance(expr, BuiltinRef):
        b = BUILTINS.get(expr.name)
        if b is None:
            raise UnknownBuiltin(expr.name)
        return FunType(b.params, b.result)
    if isinstance(expr, Arg):
        if not 0 <= expr.index < len(arg_bases):
            raise IndexOutOfRange(
                f"projection arg {expr.index} outside arity {len(arg_bases)}")
        return arg_bases[expr.index]
    if isinstance(expr, Lit):
        return expr.value.base
    if isinstance(expr, Apply):
        head = infer_expr(expr.head, arg_bases)
        if not isinstance(head, FunType):
            raise TypeMismatch(f"cannot apply a value of type {head}")
        if not 1 <= len(expr.args) <= len(head.params):
            raise ArityMismatch(
                f"{len(expr.args)} arguments applied to a function of "
                f"{len(head.params)} parameters")
        for k, (a, want) in enumerate(zip(expr.args, head.params)):
            got = infer_expr(a, arg_bases)
            if got != want:
                raise TypeMismatch(
                    f"application argument {k} has type {_show(got)}, "
                    f"expected {want}")
        rest = head.params[len(expr.args):]
        return FunType(rest, head.result) if rest else head.result
    raise TypeMismatch(f"not an expression: {expr!r}")


def eval_expr(expr: TermExpr, args: Sequence[Value]):
    if isinstance(expr, BuiltinRef):
        b = BUILTINS.get(expr.name)
        if b is None:
            raise UnknownBuiltin(expr.name)
        return _Partial(b, ())
    if isinstance(expr, Arg):
        return args[expr.index]
    if isinstance(expr, Lit):
        return expr.value
    head = eval_expr(expr.head, args)
    return _call(head, [eval_expr(a, args) for a in expr.args])


def _call(fn: _Partial, args):
    bound = fn.bound + tuple(args)
    if len(bound) < len(fn.builtin.params):
        return _Partial(fn.builtin, bound)
    return fn.builtin.fn(*bound)


def _show(t: ExprType) -> str:
    if isinstance(t, FunType):
        return "(" + ", ".join(map(str, t.params)) + f") -> {t.result}"
    return str(t)


# -- DSL records -------------------------------------------------------------


@dataclass(frozen=True)
class TypeUniverse:
    sigils: tuple[str, ...]
    denote: Mapping[str, BaseType]

    def __post_init__(self):
        object.__setattr__(self, "sigils", tuple(self.sigils))
        object.__setattr__(self, "denote", dict(self.denote))

    @classmethod
    def of(cls, pairs) -> "TypeUniverse":
        pairs = list(pairs)
        return cls(tuple(s for s, _ in pairs), {s: b for s, b in pairs})

    def __contains__(self, sigil):
        return sigil in self.denote


@dataclass(frozen=True)
class Signature:
    domain: tuple[str, ...]
    codomain: str

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))

    @property
    def arity(self):
        return len(self.domain)

    def __str__(self):
        return f"[{', '.join(self.domain)}] -> {self.codomain}"


@dataclass(frozen=True)
class FunctionSymbol:
    name: str
    sig: Signature
    action: TermExpr


@dataclass(frozen=True)
class Dsl:
    name: str
    universe: TypeUniverse
    symbols: tuple[FunctionSymbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))

    @property
    def sigils(self):
        return self.universe.sigils

    def symbol(self, name: str) -> FunctionSymbol:
        for f in self.symbols:
            if f.name == name:
                return f
        raise UnknownSymbol(name)

    def has_symbol(self, name: str) -> bool:
        return any(f.name == name for f in self.symbols)

    def base_of(self, sigil: str) -> BaseType:
        return denote_type(self.universe, sigil)

    def renamed(self, sigils: Mapping[str, str], symbols: Mapping[str, str],
                name: str | None = None) -> "Dsl":
        """Copy with sigils and symbols renamed through the given bijections."""
        universe = TypeUniverse.of(
            (sigils[s], self.universe.denote[s]) for s in self.sigils)
        syms = [
            FunctionSymbol(
                symbols[f.name],
                Signature([sigils[c] for c in f.sig.domain], sigils[f.sig.codomain]),
                f.action,
            )
            for f in self.symbols
        ]
        return Dsl(self.name if name is None else name, universe, syms)


def denote_type(u: TypeUniverse, sigil: str) -> BaseType:
    try:
        return u.denote[sigil]
    except KeyError:
        raise UnknownSigil(sigil) from None


def denoted_signature(d: Dsl, sig: Signature) -> FunType:
    return FunType(tuple(d.base_of(c) for c in sig.domain), d.base_of(sig.codomain))


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    subject: str
    message: str

    def to_json(self):
        return {"kind": self.kind, "subject": self.subject, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    diagnostics: tuple[Diagnostic, ...] = ()
    details: Mapping = field(default_factory=dict, compare=False)

    @classmethod
    def from_diagnostics(cls, diags, details=None) -> "ValidationReport":
        diags = tuple(diags)
        return cls(not diags, diags, dict(details or {}))

    def to_json(self):
        out = {"ok": self.ok, "diagnostics": [d.to_json() for d in self.diagnostics]}
        if self.details:
            out["details"] = dict(self.details)
        return out


def validate_dsl(d: Dsl) -> ValidationReport:
    diags: list[Diagnostic] = []
    seen = set()
    for s in d.universe.sigils:
        if not s:
            diags.append(Diagnostic("empty-sigil", d.name, "empty sigil name"))
        if s in seen:
            diags.append(Diagnostic("duplicate-sigil", s, f"duplicate sigil {s}"))
        seen.add(s)
        if not isinstance(d.universe.denote.get(s), BaseType):
            diags.append(Diagnostic("undenoted-sigil", s, f"sigil {s} has no base type"))

    names = set()
    for f in d.symbols:
        if f.name in names:
            diags.append(Diagnostic("duplicate-symbol", f.name,
                                    f"duplicate symbol {f.name}"))
        names.add(f.name)
        if f.sig.arity < 1:
            diags.append(Diagnostic("nullary-symbol", f.name,
                                    f"symbol {f.name} has arity 0"))
        unknown = [c for c in (*f.sig.domain, f.sig.codomain) if c not in d.universe]
        for c in dict.fromkeys(unknown):
            diags.append(Diagnostic("unknown-sigil", f.name, f"unknown sigil {c}"))
        if unknown:
            continue
        want = denoted_signature(d, f.sig)
        try:
            got = infer_expr(f.action, want.params)
        except (UnknownBuiltin, TypeMismatch, ArityMismatch, IndexOutOfRange) as e:
            diags.append(Diagnostic("ill-typed-action", f.name, f"{f.name}: {e}"))
            continue
        if got != want and got != want.result:
            diags.append(Diagnostic(
                "action-signature", f.name,
                f"{f.name}: action has type {_show(got)}, signature denotes {_show(want)}"))
    return ValidationReport.from_diagnostics(diags)


# -- evaluation --------------------------------------------------------------


def check_args(bases: Sequence[BaseType], args: Sequence[Value], what):
    """Raise unless ``args`` inhabit ``bases`` one-to-one.

    ``what`` names the callee in messages; it may be a zero-argument callable.
    """
    if len(args) == len(bases) and all(
            isinstance(a, Value) and a.base is b for a, b in zip(bases, args)):
        return
    if callable(what):
        what = what()
    if len(args) != len(bases):
        raise ArityMismatch(f"{what} expects {len(bases)} arguments, got {len(args)}")
    for i, (b, a) in enumerate(zip(bases, args)):
        if not isinstance(a, Value) or a.base is not b:
            raise TypeMismatch(f"{what}: argument {i} = {a!r} is not a {b} value")


def eval_action(d: Dsl, f: FunctionSymbol | str, args: Sequence[Value]) -> Value:
    if isinstance(f, str):
        f = d.symbol(f)
    want = denoted_signature(d, f.sig)
    check_args(want.params, args, f.name)
    return apply_action(f.action, args)


def apply_action(action: TermExpr, args: Sequence[Value]) -> Value:
    """Run an action on already-checked arguments."""
    out = eval_expr(action, args)
    if isinstance(out, _Partial):
        out = _call(out, args)
    return out
