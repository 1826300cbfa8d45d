import pytest
from hypothesis import given, settings, strategies as st

from dslglue.dsl import (
    Apply,
    Arg,
    BuiltinRef,
    Dsl,
    FunctionSymbol,
    Lit,
    Signature,
    TypeUniverse,
)
from dslglue.errors import (
    ActionDisagreement,
    InconsistentQuotient,
    InvalidMorphism,
    PreconditionError,
    SafetyViolation,
    SearchSpaceExceeded,
)
from dslglue.glue import (
    LEFT,
    RIGHT,
    GlueWitness,
    PushoutResult,
    Span,
    check_safety,
    pushout,
    raise_for_report,
    verify_universal_property,
)
from dslglue.morphism import DslMorphism, check_morphism
from dslglue.values import BaseType, Value

from oracles import closure_partition

NAT, STR = BaseType.NATURAL, BaseType.STRING


def empty_apex():
    return Dsl("E", TypeUniverse.of([]), [])


def one_sigil(name, base):
    return Dsl(name, TypeUniverse.of([("z", base)]), [])


def span_of(apex, left, right, lt, rt, lf=None, rf=None):
    return Span(apex, DslMorphism(apex, left, lt, lf or {}),
                DslMorphism(apex, right, rt, rf or {}))


@pytest.fixture(scope="module")
def symbol_span(dslu, dslp):
    apex = Dsl("F", TypeUniverse.of([("a", NAT), ("b", STR)]),
               [FunctionSymbol("pre", Signature(["a", "b"], "b"), BuiltinRef("take_prefix"))])
    s = span_of(apex, dslu, dslp, {"a": "nat", "b": "str"}, {"a": "i", "b": "p"},
                {"pre": "fprint"}, {"pre": "fprint"})
    return s, [GlueWitness("nat", "i", NAT), GlueWitness("str", "p", STR)]


# -- morphisms ----------------------------------------------------------------


def test_identity_morphism(dslu, dslp, bnu):
    for d in (dslu, dslp, bnu):
        assert check_morphism(DslMorphism.identity(d)).ok


def test_apex_leg(dslu):
    z = one_sigil("Z", NAT)
    assert check_morphism(DslMorphism(z, dslu, {"z": "nat"}, {})).ok


def test_signature_commutation_failure(bnu):
    target = Dsl("T", bnu.universe,
                 [FunctionSymbol("isZero", Signature(["n"], "b"),
                                 Apply(BuiltinRef("eq_nat"), (Lit(Value.natural(0)),)))])
    rep = check_morphism(DslMorphism(bnu, target, {"b": "b", "n": "n", "u": "u"},
                                     {"eqNat": "isZero"}))
    assert [d.kind for d in rep.diagnostics] == ["signature-commutation"]


def test_partial_and_unknown_maps(dslu):
    z = one_sigil("Z", NAT)
    assert [d.kind for d in check_morphism(DslMorphism(z, dslu, {}, {})).diagnostics] \
        == ["partial-map"]
    assert [d.kind for d in check_morphism(DslMorphism(z, dslu, {"z": "q"}, {})).diagnostics] \
        == ["unknown-sigil"]


def test_action_preservation_failure(dslu):
    u = dslu.universe
    src = Dsl("S", u, [FunctionSymbol("f", Signature(["str"], "str"), BuiltinRef("id_string"))])
    tgt = Dsl("T", u, [FunctionSymbol("g", Signature(["str"], "str"),
                                      Apply(BuiltinRef("concat"), (Arg(0), Arg(0))))])
    rep = check_morphism(DslMorphism(src, tgt, {"nat": "nat", "str": "str"}, {"f": "g"}))
    assert [d.kind for d in rep.diagnostics] == ["action-preservation"]


# -- pushouts -----------------------------------------------------------------


def test_packaged_pushout(glue_spec):
    p = pushout(glue_spec.span, glue_spec.witnesses, glue_spec.bound)
    assert len(p.type_classes) == 4
    assert p.glued.name == "DSLU+DSLP"
    assert p.glued.sigils == ("nat+i", "str", "s", "p")
    assert [f.name for f in p.glued.symbols] == ["DSLU.fprint", "finput", "ffields", "DSLP.fprint"]
    assert p.inj_left.type_map == {"nat": "nat+i", "str": "str"}
    assert p.inj_right.type_map == {"i": "nat+i", "s": "s", "p": "p"}
    assert p.safety.ok


def test_empty_apex_gives_disjoint_union(dslu, dslp):
    p = pushout(span_of(empty_apex(), dslu, dslp, {}, {}))
    assert len(p.glued.sigils) == 5
    assert len(p.glued.symbols) == 4
    assert all(len(c) == 1 for c in p.type_classes)


def test_struct_string_glue_rejected(bad_glue_spec):
    with pytest.raises(SafetyViolation) as e:
        pushout(bad_glue_spec.span, bad_glue_spec.witnesses, bad_glue_spec.bound)
    diags = e.value.report.diagnostics
    assert [d.kind for d in diags] == ["base-mismatch"]
    assert diags[0].message.startswith("no base type equates string and fieldmap")


def test_missing_witness(glue_spec):
    with pytest.raises(SafetyViolation) as e:
        pushout(glue_spec.span, [])
    assert [d.kind for d in e.value.report.diagnostics] == ["missing-witness"]


def test_witness_with_wrong_base(glue_spec):
    rep = check_safety(glue_spec.span, [GlueWitness("nat", "i", STR)])
    assert [d.kind for d in rep.diagnostics] == ["witness-mismatch"]


def test_witness_naming_unknown_sigil(glue_spec):
    rep = check_safety(glue_spec.span, glue_spec.witnesses + [GlueWitness("nat", "zz", NAT)])
    assert [d.kind for d in rep.diagnostics] == ["unknown-witness-sigil"]


def test_invalid_leg_rejected(dslu, dslp):
    with pytest.raises(InvalidMorphism):
        pushout(span_of(one_sigil("Z", NAT), dslu, dslp, {"z": "nat"}, {"z": "nope"}))


def test_span_legs_share_apex(dslu, dslp):
    a, b = one_sigil("Z", NAT), one_sigil("Y", NAT)
    with pytest.raises(InvalidMorphism):
        Span(a, DslMorphism(a, dslu, {"z": "nat"}, {}), DslMorphism(b, dslp, {"z": "i"}, {}))


def test_symbol_merging_glue(symbol_span):
    s, ws = symbol_span
    p = pushout(s, ws)
    assert p.glued.sigils == ("nat+i", "str+p", "s")
    assert [f.name for f in p.glued.symbols] == ["fprint+fprint", "finput", "ffields"]
    assert p.inj_left.symbol_map["fprint"] == p.inj_right.symbol_map["fprint"]
    assert verify_universal_property(p, s).ok


def inconsistent_span(dslu, dslp):
    apex = Dsl("A", TypeUniverse.of([("a", STR)]),
               [FunctionSymbol("h", Signature(["a"], "a"), BuiltinRef("id_string"))])
    return span_of(apex, dslu, dslp, {"a": "str"}, {"a": "p"},
                   {"h": "finput"}, {"h": "ffields"})


def test_inconsistent_quotient(dslu, dslp):
    s = inconsistent_span(dslu, dslp)
    rep = check_safety(s, [GlueWitness("str", "p", STR)])
    assert [d.kind for d in rep.diagnostics] == ["signature-mismatch"]
    with pytest.raises(InconsistentQuotient):
        raise_for_report(rep, "pushout")
    with pytest.raises(InvalidMorphism):
        pushout(s, [GlueWitness("str", "p", STR)])


def test_action_disagreement(dslu):
    apex = Dsl("A", TypeUniverse.of([("a", STR)]),
               [FunctionSymbol("h", Signature(["a"], "a"), BuiltinRef("id_string"))])
    loud = Dsl("L", TypeUniverse.of([("p", STR)]),
               [FunctionSymbol("shout", Signature(["p"], "p"),
                               Apply(BuiltinRef("concat"), (Arg(0), Lit(Value.string("!")))))])
    s = span_of(apex, dslu, loud, {"a": "str"}, {"a": "p"}, {"h": "finput"}, {"h": "shout"})
    rep = check_safety(s, [GlueWitness("str", "p", STR)])
    assert [d.kind for d in rep.diagnostics] == ["action-disagreement"]
    with pytest.raises(ActionDisagreement):
        raise_for_report(rep, "pushout")


# -- universal property -------------------------------------------------------


def test_universal_property(glue_spec):
    p = pushout(glue_spec.span, glue_spec.witnesses)
    rep = verify_universal_property(p, glue_spec.span, 3, 3)
    assert rep.ok
    assert rep.details["cocones"] == 909
    assert rep.details["bad_type_cocones"] == rep.details["bad_symbol_cocones"] == 0


def test_non_commuting_fake_detected(glue_spec):
    p = pushout(glue_spec.span, glue_spec.witnesses)
    inj = dict(p.inj_right.type_map, i="s", s="nat+i")
    fake = PushoutResult(p.glued, p.inj_left,
                         DslMorphism(p.inj_right.source, p.glued, inj, p.inj_right.symbol_map),
                         p.type_classes, p.symbol_classes)
    rep = verify_universal_property(fake, glue_spec.span)
    assert [d.kind for d in rep.diagnostics] == ["non-commuting-square"]


def test_over_merged_fake_detected(glue_spec, symbol_span):
    s, ws = symbol_span
    fake = pushout(s, ws)
    rep = verify_universal_property(fake, glue_spec.span, 2)
    assert not rep.ok
    assert rep.details["bad_type_cocones"] > 0


def test_coproduct_universal(dslu, dslp):
    s = span_of(empty_apex(), dslu, dslp, {}, {})
    assert verify_universal_property(pushout(s), s, 2).ok


def test_universal_preconditions(glue_spec):
    p = pushout(glue_spec.span, glue_spec.witnesses)
    with pytest.raises(PreconditionError):
        verify_universal_property(p, glue_spec.span, 4)
    with pytest.raises(SearchSpaceExceeded):
        verify_universal_property(p, glue_spec.span, 3, ceiling=100)


def test_typed_variant_still_universal(glue_spec):
    p = pushout(glue_spec.span, glue_spec.witnesses)
    assert verify_universal_property(p, glue_spec.span, typed=True).ok


# -- invariants ---------------------------------------------------------------


def all_spans(glue_spec, symbol_span, dslu, dslp):
    yield glue_spec.span, glue_spec.witnesses
    yield symbol_span
    yield span_of(empty_apex(), dslu, dslp, {}, {}), []


def naive_partition(s):
    elements = [(LEFT, x) for x in s.left.target.sigils] + \
               [(RIGHT, x) for x in s.right.target.sigils]
    pairs = [((LEFT, s.left.type_map[z]), (RIGHT, s.right.type_map[z])) for z in s.apex.sigils]
    return closure_partition(elements, pairs)


def test_partition_matches_naive_closure(glue_spec, symbol_span, dslu, dslp):
    for s, ws in all_spans(glue_spec, symbol_span, dslu, dslp):
        p = pushout(s, ws)
        assert {frozenset(c) for c in p.type_classes} == naive_partition(s)


def test_square_commutes_and_injections_valid(glue_spec, symbol_span, dslu, dslp):
    for s, ws in all_spans(glue_spec, symbol_span, dslu, dslp):
        p = pushout(s, ws)
        assert s.left.then(p.inj_left).type_map == s.right.then(p.inj_right).type_map
        assert s.left.then(p.inj_left).symbol_map == s.right.then(p.inj_right).symbol_map
        assert check_morphism(p.inj_left).ok and check_morphism(p.inj_right).ok


def test_swapping_legs_renames_only(glue_spec, symbol_span, dslu, dslp):
    flip = {LEFT: RIGHT, RIGHT: LEFT}
    for s, ws in all_spans(glue_spec, symbol_span, dslu, dslp):
        p = pushout(s, ws)
        q = pushout(s.swapped(), [GlueWitness(w.right_sigil, w.left_sigil, w.base) for w in ws])
        assert {frozenset(c) for c in p.type_classes} == \
            {frozenset((flip[l], x) for l, x in c) for c in q.type_classes}
        rename = {}
        for a, b in ((p.inj_left, q.inj_right), (p.inj_right, q.inj_left)):
            for x, y in a.type_map.items():
                rename.setdefault(y, b.type_map[x])
        assert len(set(rename.values())) == len(rename) == len(q.glued.sigils)
        assert {rename[x]: p.glued.base_of(x) for x in p.glued.sigils} == \
            {x: q.glued.base_of(x) for x in q.glued.sigils}


def test_pushout_deterministic(glue_spec):
    a = pushout(glue_spec.span, glue_spec.witnesses)
    b = pushout(glue_spec.span, glue_spec.witnesses)
    assert a.to_json() == b.to_json() and a.glued == b.glued


spare = st.lists(st.sampled_from([
    GlueWitness("str", "p", STR), GlueWitness("nat", "i", NAT),
    GlueWitness("str", "s", STR), GlueWitness("nat", "p", NAT)]), max_size=4)


@settings(max_examples=30, deadline=None)
@given(spare)
def test_extra_witnesses_never_break_a_safe_glue(glue_spec, extra):
    assert check_safety(glue_spec.span, glue_spec.witnesses + extra).ok


@settings(max_examples=30, deadline=None)
@given(spare)
def test_unsafe_glue_stays_unsafe(bad_glue_spec, extra):
    assert not check_safety(bad_glue_spec.span, bad_glue_spec.witnesses + extra).ok


def test_singleton_coproduct_universal():
    a, b = one_sigil("A", NAT), one_sigil("B", STR)
    s = span_of(empty_apex(), a, b, {}, {})
    p = pushout(s)
    assert p.glued.sigils == ("A.z", "B.z")
    assert verify_universal_property(p, s, 2).ok


def test_no_merges_is_vacuously_safe(dslu, dslp):
    assert check_safety(span_of(empty_apex(), dslu, dslp, {}, {}), []).ok
