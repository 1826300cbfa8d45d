import itertools

import pytest

from dslglue.diagram import (
    ColimitResult,
    Diagram,
    Edge,
    Shape,
    check_cocone,
    colimit,
    validate_diagram,
    verify_colimit_universal,
)
from dslglue.errors import InvalidBound, InvalidMorphism, PreconditionError, SafetyViolation
from dslglue.glue import LEFT, RIGHT, GlueWitness, pushout
from dslglue.morphism import DslMorphism, check_morphism
from dslglue.values import BaseType

from oracles import closure_partition

LABEL = {"-1": LEFT, "1": RIGHT}


def canonical_renaming(p, r):
    """Glued names of the pushout, carried to colimit names along the legs."""
    types, symbols = {}, {}
    for inj, leg in ((p.inj_left, r.legs["-1"]), (p.inj_right, r.legs["1"])):
        for x, y in inj.type_map.items():
            types[y] = leg.type_map[x]
        for f, g in inj.symbol_map.items():
            symbols[g] = leg.symbol_map[f]
    return types, symbols


def test_span_diagram_validates(span_diagram):
    assert validate_diagram(span_diagram.diagram).ok


def test_dangling_and_missing(dslu):
    d = Diagram(Shape(["a"], [Edge("e", "a", "b")]), {"a": dslu}, {})
    assert [x.kind for x in validate_diagram(d).diagnostics] == ["dangling-edge"]
    d = Diagram(Shape(["a", "b"], [Edge("e", "a", "b")]), {"a": dslu, "b": dslu}, {})
    assert [x.kind for x in validate_diagram(d).diagnostics] == ["missing-morphism"]
    assert [x.kind for x in validate_diagram(Diagram(Shape([]), {}, {})).diagnostics] \
        == ["empty-shape"]


def test_mislabelled_morphism(span_diagram, dslu, dslp):
    d = span_diagram.diagram
    bad = Diagram(d.shape, d.node_dsl,
                  dict(d.edge_morphism, left=DslMorphism.identity(dslp)))
    kinds = [x.kind for x in validate_diagram(bad).diagnostics]
    assert kinds == ["source-mismatch"]
    with pytest.raises(InvalidMorphism):
        colimit(bad)


def test_span_colimit(span_diagram):
    r = colimit(span_diagram.diagram, span_diagram.witnesses, span_diagram.bound)
    assert r.colimit.sigils == ("nat+z+i", "str", "s", "p")
    assert [f.name for f in r.colimit.symbols] == ["-1.fprint", "finput", "ffields", "1.fprint"]
    assert r.legs["0"].type_map == {"z": "nat+z+i"}
    assert [w.to_json() for w in r.witnesses_used] == [
        {"left": "nat", "right": "i", "base": "natural"}]


def test_span_colimit_needs_witness(span_diagram):
    with pytest.raises(SafetyViolation):
        colimit(span_diagram.diagram, [])


def test_object_qualified_witness(span_diagram):
    w = [GlueWitness("-1.nat", "1.i", BaseType.NATURAL)]
    assert colimit(span_diagram.diagram, w).colimit.sigils[0] == "nat+z+i"


def test_discrete_colimit(discrete_diagram):
    r = colimit(discrete_diagram.diagram)
    assert len(r.colimit.sigils) == 5 == 2 + 3
    assert len(r.colimit.symbols) == 4
    assert {f.name for f in r.colimit.symbols} >= {"U.fprint", "P.fprint"}


def test_colimit_matches_pushout(span_diagram, glue_spec):
    p = pushout(glue_spec.span, glue_spec.witnesses)
    r = colimit(span_diagram.diagram, span_diagram.witnesses)
    types, symbols = canonical_renaming(p, r)
    assert sorted(types.values()) == sorted(r.colimit.sigils)
    assert sorted(symbols.values()) == sorted(f.name for f in r.colimit.symbols)
    assert p.glued.renamed(types, symbols, r.colimit.name) == r.colimit
    restricted = {frozenset((LABEL[o], x) for o, x in c if o != "0") for c in r.type_classes}
    assert restricted == {frozenset(c) for c in p.type_classes}


def test_cocone_commutes(span_diagram, discrete_diagram):
    for spec in (span_diagram, discrete_diagram):
        r = colimit(spec.diagram, spec.witnesses)
        assert check_cocone(spec.diagram, r).ok
        assert all(check_morphism(m).ok for m in r.legs.values())


def test_corrupted_leg_detected(span_diagram):
    r = colimit(span_diagram.diagram, span_diagram.witnesses)
    legs = dict(r.legs)
    legs["0"] = DslMorphism(legs["0"].source, r.colimit, {"z": "str"}, {})
    bad = ColimitResult(r.colimit, legs, r.type_classes, r.symbol_classes)
    assert [d.kind for d in check_cocone(span_diagram.diagram, bad).diagnostics] \
        == ["non-commuting-cocone", "non-commuting-cocone"]
    assert not verify_colimit_universal(bad, span_diagram.diagram).ok


def test_colimit_universal(span_diagram, discrete_diagram):
    r = colimit(span_diagram.diagram, span_diagram.witnesses)
    rep = verify_colimit_universal(r, span_diagram.diagram, 3)
    assert rep.ok and rep.details["cocones"] == 909
    r = colimit(discrete_diagram.diagram)
    assert verify_colimit_universal(r, discrete_diagram.diagram, 2).ok
    with pytest.raises(PreconditionError):
        verify_colimit_universal(r, discrete_diagram.diagram, 4)


def test_partition_matches_naive_closure(span_diagram, discrete_diagram):
    for spec in (span_diagram, discrete_diagram):
        d = spec.diagram
        r = colimit(d, spec.witnesses)
        elements = [(o, x) for o in d.shape.objects for x in d.node_dsl[o].sigils]
        pairs = [((e.source, x), (e.target, y)) for e in d.shape.edges
                 for x, y in d.edge_morphism[e.name].type_map.items()]
        assert {frozenset(c) for c in r.type_classes} == closure_partition(elements, pairs)


def test_edge_order_irrelevant(span_diagram):
    d = span_diagram.diagram
    base = colimit(d, span_diagram.witnesses)
    for edges in itertools.permutations(d.shape.edges):
        r = colimit(Diagram(Shape(d.shape.objects, edges), d.node_dsl, d.edge_morphism),
                    span_diagram.witnesses)
        assert r.colimit == base.colimit and r.legs == base.legs


def test_colimit_idempotent(span_diagram):
    a = colimit(span_diagram.diagram, span_diagram.witnesses)
    b = colimit(span_diagram.diagram, span_diagram.witnesses)
    assert a.to_json() == b.to_json()


def test_single_object_colimit_is_itself(dslu):
    r = colimit(Diagram(Shape(["U"]), {"U": dslu}, {}))
    assert r.colimit.sigils == dslu.sigils
    assert r.colimit.symbols == dslu.symbols


def test_bound_zero(span_diagram):
    with pytest.raises(InvalidBound):
        colimit(span_diagram.diagram, span_diagram.witnesses, 0)


def test_single_object_legs_are_identity(dslu):
    d = Diagram(Shape(["U"]), {"U": dslu}, {})
    assert validate_diagram(d).ok
    r = colimit(d)
    assert r.legs["U"] == DslMorphism.identity(dslu)
    assert check_cocone(d, r).ok


def test_corrupted_leg_names_the_edge(span_diagram):
    r = colimit(span_diagram.diagram, span_diagram.witnesses)
    legs = dict(r.legs, **{"1": DslMorphism(r.legs["1"].source, r.colimit,
                                            dict(r.legs["1"].type_map, i="p"),
                                            r.legs["1"].symbol_map)})
    bad = ColimitResult(r.colimit, legs, r.type_classes, r.symbol_classes)
    assert [d.subject for d in check_cocone(span_diagram.diagram, bad).diagnostics] == ["right"]
