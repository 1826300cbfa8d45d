"""The colored operad of sets generated by a DSL's function symbols.

Colors are the DSL's sigils. A term with profile ``(d; c0, ..., c{n-1})``
evaluates to a function from ``c0 x ... x c{n-1}`` to ``d``; grafting
``f o_i g`` plugs the output of ``g`` into input slot ``i`` of ``f``. Slots
are 0-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .dsl import Dsl, apply_action, check_args
from .errors import (
    ColorMismatch,
    IllColoredTerm,
    IndexOutOfRange,
    PreconditionError,
    SizeMismatch,
    TypeMismatch,
    UnknownSigil,
)
from .values import Value, enumerate_tuples, require_bound


@dataclass(frozen=True)
class Profile:
    output: str
    inputs: tuple[str, ...]

    @property
    def arity(self):
        return len(self.inputs)

    def __str__(self):
        return f"({self.output}; {', '.join(self.inputs)})"


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise SizeMismatch(f"{list(self.images)} is not a permutation")

    def __len__(self):
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(n))
        images[a], images[b] = images[b], images[a]
        return cls(tuple(images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for k, j in enumerate(self.images):
            inv[j] = k
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """``k -> self(other(k))``; matches ``(t . self) . other == t . self.then(other)``."""
        return Permutation(tuple(self.images[j] for j in other.images))


@dataclass(frozen=True)
class Unit:
    color: str


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Graft:
    outer: "OperadTerm"
    index: int
    inner: "OperadTerm"


@dataclass(frozen=True)
class Permuted:
    base: "OperadTerm"
    perm: Permutation


OperadTerm = Union[Unit, Gen, Graft, Permuted]


def graft_depth(t: OperadTerm) -> int:
    if isinstance(t, Graft):
        return 1 + max(graft_depth(t.outer), graft_depth(t.inner))
    if isinstance(t, Permuted):
        return graft_depth(t.base)
    return 0


def show_term(t: OperadTerm) -> str:
    if isinstance(t, Unit):
        return f"1_{t.color}"
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Graft):
        return f"({show_term(t.outer)} o{t.index} {show_term(t.inner)})"
    return f"{show_term(t.base)}.{list(t.perm.images)}"


def profile_of(d: Dsl, t: OperadTerm) -> Profile:
    if isinstance(t, Unit):
        if t.color not in d.universe:
            raise UnknownSigil(t.color)
        return Profile(t.color, (t.color,))
    if isinstance(t, Gen):
        sig = d.symbol(t.name).sig
        return Profile(sig.codomain, sig.domain)
    if isinstance(t, Graft):
        f = profile_of(d, t.outer)
        g = profile_of(d, t.inner)
        i = t.index
        if not 0 <= i < f.arity:
            raise IndexOutOfRange(
                f"graft slot {i} out of range for {show_term(t.outer)} of arity {f.arity}")
        if g.output != f.inputs[i]:
            raise ColorMismatch(
                f"ill-colored graft at slot {i}: {show_term(t.inner)} outputs "
                f"{g.output}, slot expects {f.inputs[i]}")
        return Profile(f.output, f.inputs[:i] + g.inputs + f.inputs[i + 1:])
    if isinstance(t, Permuted):
        p = profile_of(d, t.base)
        if len(t.perm) != p.arity:
            raise SizeMismatch(
                f"permutation of size {len(t.perm)} on a term of arity {p.arity}")
        return Profile(p.output, tuple(p.inputs[t.perm(k)] for k in range(p.arity)))
    raise IllColoredTerm(f"not an operad term: {t!r}")


def unit_term(d: Dsl, color: str) -> Unit:
    if color not in d.universe:
        raise UnknownSigil(color)
    return Unit(color)


def graft(d: Dsl, outer: OperadTerm, i: int, inner: OperadTerm) -> Graft:
    t = Graft(outer, i, inner)
    profile_of(d, t)
    return t


def permute_term(d: Dsl, t: OperadTerm, sigma: Permutation | Sequence[int]) -> Permuted:
    if not isinstance(sigma, Permutation):
        sigma = Permutation(tuple(sigma))
    p = Permuted(t, sigma)
    profile_of(d, p)
    return p


def eval_term(d: Dsl, t: OperadTerm, args: Sequence[Value]) -> Value:
    return compile_term(d, t)(args)


def compile_term(d: Dsl, t: OperadTerm) -> Callable[[Sequence[Value]], Value]:
    """Checked evaluator for ``t``, built once and reusable across tuples."""
    p = profile_of(d, t)
    bases = [d.base_of(c) for c in p.inputs]
    run = _compile(d, t)

    def evaluate(args):
        check_args(bases, args, lambda: show_term(t))
        return run(tuple(args))

    return evaluate


def _compile(d: Dsl, t: OperadTerm):
    if isinstance(t, Unit):
        return lambda args: args[0]
    if isinstance(t, Gen):
        f = d.symbol(t.name)
        out = d.base_of(f.sig.codomain)

        def gen(args):
            v = apply_action(f.action, args)
            if v.base is not out:
                raise TypeMismatch(f"{f.name} returned {v!r}, expected a {out} value")
            return v

        return gen
    if isinstance(t, Graft):
        m, i = profile_of(d, t.inner).arity, t.index
        outer, inner = _compile(d, t.outer), _compile(d, t.inner)
        return lambda args: outer(args[:i] + (inner(args[i:i + m]),) + args[i + m:])
    # new input k is old input perm(k): the base sees args reordered by perm^-1
    inv = t.perm.inverse().images
    base = _compile(d, t.base)
    return lambda args: base(tuple(args[j] for j in inv))


# -- law checking ------------------------------------------------------------

Evaluator = Callable[[Dsl, OperadTerm, Sequence[Value]], Value]

LAWS = (
    "left_unit",
    "right_unit",
    "sequential_associativity",
    "parallel_associativity",
    "equivariance",
)


@dataclass
class AxiomResult:
    law: str
    instances: int = 0
    tuples: int = 0
    failures: int = 0
    counterexample: dict | None = None

    @property
    def ok(self):
        return self.failures == 0

    def to_json(self):
        return {
            "law": self.law,
            "status": "pass" if self.ok else "fail",
            "instances": self.instances,
            "tuples": self.tuples,
            "failures": self.failures,
            "counterexample": self.counterexample,
        }


@dataclass
class LawReport:
    dsl: str
    bound: int
    depth: int
    axioms: dict[str, AxiomResult] = field(default_factory=dict)

    @property
    def ok(self):
        return all(a.ok for a in self.axioms.values())

    @property
    def counterexamples(self):
        return sum(a.failures for a in self.axioms.values())

    def to_json(self):
        return {
            "dsl": self.dsl,
            "bound": self.bound,
            "depth": self.depth,
            "ok": self.ok,
            "axioms": [self.axioms[k].to_json() for k in LAWS],
        }


def generated_terms(d: Dsl, depth: int) -> list[OperadTerm]:
    """Every well-colored graft of generators with graft-depth <= depth."""
    pool: list[OperadTerm] = [Gen(f.name) for f in d.symbols]
    profiles = {t: profile_of(d, t) for t in pool}
    frontier = list(pool)
    for _ in range(depth):
        new = []
        for f in pool:
            for g in pool:
                if f not in frontier and g not in frontier:
                    continue
                pf, pg = profiles[f], profiles[g]
                for i, c in enumerate(pf.inputs):
                    if c == pg.output:
                        t = Graft(f, i, g)
                        profiles[t] = Profile(
                            pf.output, pf.inputs[:i] + pg.inputs + pf.inputs[i + 1:])
                        new.append(t)
        pool.extend(new)
        frontier = new
    return pool


def find_disagreement(d: Dsl, lhs: OperadTerm, rhs: OperadTerm, bound: int,
                      evaluate: Evaluator = eval_term):
    """First argument tuple on which the two terms differ, or ``None``.

    Returns ``(n_checked, counterexample)``.
    """
    pl, pr = profile_of(d, lhs), profile_of(d, rhs)
    if pl != pr:
        return 0, {"args": None, "lhs": str(pl), "rhs": str(pr),
                   "reason": "profiles differ"}
    if evaluate is eval_term:
        run_l, run_r = compile_term(d, lhs), compile_term(d, rhs)
    else:
        def run_l(args):
            return evaluate(d, lhs, args)

        def run_r(args):
            return evaluate(d, rhs, args)
    n = 0
    for args in enumerate_tuples([d.base_of(c) for c in pl.inputs], bound):
        n += 1
        a, b = run_l(args), run_r(args)
        if a != b:
            return n, {"args": [v.to_json() for v in args],
                       "lhs": a.to_json(), "rhs": b.to_json()}
    return n, None


def graft_block_permutation(sigma: Permutation, i: int, m: int) -> Permutation:
    """``rho`` with ``(f.sigma) o_i g  ==  (f o_sigma(i) g).rho`` for ``arity(g) == m``."""
    si = sigma(i)

    def pos(j, r):
        if j < si:
            return j
        if j == si:
            return si + r
        return j + m - 1

    images = []
    for k in range(len(sigma)):
        for r in range(m if k == i else 1):
            images.append(pos(sigma(k), r))
    return Permutation(tuple(images))


def block_sum(n_outer: int, i: int, tau: Permutation) -> Permutation:
    """``id_i + tau + id`` acting on the inputs of ``f o_i g``."""
    m = len(tau)
    images = list(range(n_outer + m - 1))
    for r in range(m):
        images[i + r] = i + tau(r)
    return Permutation(tuple(images))


def law_instances(d: Dsl, depth: int):
    """Yield ``(law, lhs, rhs)`` triples for every law instance at ``depth``.

    Operands are colored units and generated terms: three-operand laws draw
    from graft-depth ``depth - 2``, the others from ``depth - 1``, so every
    compared term has graft-depth at most ``depth``.
    """
    units = [Unit(c) for c in d.sigils]
    shallow = units + generated_terms(d, depth - 2) if depth >= 2 else []
    deep = units + generated_terms(d, depth - 1)
    prof = {t: profile_of(d, t) for t in deep}
    prof.update({t: profile_of(d, t) for t in shallow})

    for f in deep:
        p = prof[f]
        yield "left_unit", Graft(Unit(p.output), 0, f), f
        for i, c in enumerate(p.inputs):
            yield "right_unit", Graft(f, i, Unit(c)), f

    for f, g, h in itertools.product(shallow, repeat=3):
        pf, pg, ph = prof[f], prof[g], prof[h]
        for i, c in enumerate(pf.inputs):
            if c != pg.output:
                continue
            for j, b in enumerate(pg.inputs):
                if b == ph.output:
                    yield ("sequential_associativity",
                           Graft(Graft(f, i, g), i + j, h),
                           Graft(f, i, Graft(g, j, h)))
            m = pg.arity
            for k in range(i + 1, pf.arity):
                if pf.inputs[k] == ph.output:
                    yield ("parallel_associativity",
                           Graft(Graft(f, i, g), k + m - 1, h),
                           Graft(Graft(f, k, h), i, g))

    for f, g in itertools.product(deep, repeat=2):
        pf, pg = prof[f], prof[g]
        n, m = pf.arity, pg.arity
        for sigma in itertools.permutations(range(n)):
            sigma = Permutation(sigma)
            for i in range(n):
                if pf.inputs[sigma(i)] != pg.output:
                    continue
                yield ("equivariance",
                       Graft(Permuted(f, sigma), i, g),
                       Permuted(Graft(f, sigma(i), g), graft_block_permutation(sigma, i, m)))
        for i, c in enumerate(pf.inputs):
            if c != pg.output:
                continue
            for tau in itertools.permutations(range(m)):
                tau = Permutation(tau)
                yield ("equivariance",
                       Graft(f, i, Permuted(g, tau)),
                       Permuted(Graft(f, i, g), block_sum(n, i, tau)))


def check_laws(d: Dsl, bound: int, depth: int = 2,
               evaluate: Evaluator = eval_term) -> LawReport:
    """Exhaustively check the operad axioms over generated terms.

    Equality of terms is extensional: two terms agree when they evaluate
    equally on every tuple drawn from the enumerated carriers.
    """
    require_bound(bound)
    if depth < 1:
        raise PreconditionError(f"depth must be >= 1, got {depth}")
    report = LawReport(d.name, bound, depth, {k: AxiomResult(k) for k in LAWS})
    for law, lhs, rhs in law_instances(d, depth):
        res = report.axioms[law]
        res.instances += 1
        n, cex = find_disagreement(d, lhs, rhs, bound, evaluate)
        res.tuples += n
        if cex is not None:
            res.failures += 1
            if res.counterexample is None:
                res.counterexample = {"lhs_term": show_term(lhs),
                                      "rhs_term": show_term(rhs), **cex}
    return report
