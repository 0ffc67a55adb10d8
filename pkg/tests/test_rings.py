from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orelab.errors import AxiomViolation, NotADerivation, NotAHomomorphism, ParseError, UnsupportedSpec
from orelab.rings import (
    FiniteRing,
    IntRatTrivialExtension,
    PolyMod2Ring,
    RingMorphism,
    SigmaDerivation,
    build_derivation,
    build_morphism,
    build_ring,
    direct_product,
    enumerate_idempotents,
    gf,
    identity_morphism,
    inner_derivation,
    triangular2,
    upper_triangular,
    zmod,
)


def test_zmod_arithmetic():
    R = zmod(4)
    assert R.order == 4
    assert R.mul(2, 2) == 0
    assert R.add(3, 3) == 2
    assert R.neg(1) == 3


def test_labels_round_trip(finite_ring):
    for a in finite_ring.elements:
        assert finite_ring.parse(finite_ring.format(a)) == a


def test_parse_rejects_unknown_label():
    with pytest.raises(ParseError):
        zmod(3).parse("7")


def test_direct_product_coordinates_first_fastest():
    R = direct_product(zmod(2), zmod(2))
    assert R.labels == ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]
    assert R.mul(R.parse("(1,0)"), R.parse("(0,1)")) == R.zero


def test_triangular_product_rule():
    R = triangular2(zmod(4))
    a = R.parse("[2,1]")
    # (2,1)(2,1) = (4, 2+2) = (0,0)
    assert R.mul(a, a) == R.zero
    assert R.mul(R.parse("[2,0]"), R.parse("[2,1]")) == R.parse("[0,2]")


def test_upper_triangular_is_noncommutative():
    R = upper_triangular(zmod(2))
    e11, e12 = R.parse("[1,0;0,0]"), R.parse("[0,1;0,0]")
    assert R.mul(e11, e12) == e12
    assert R.mul(e12, e11) == R.zero


def test_gf4_is_a_field():
    F = gf(2, 2)
    nonzero = [a for a in F.elements if a != F.zero]
    for a in nonzero:
        assert any(F.mul(a, b) == F.one for b in nonzero)


def test_order_cap():
    with pytest.raises(UnsupportedSpec):
        zmod(17)
    assert zmod(17, order_cap=32).order == 17


def test_bad_tables_raise_axiom_violation():
    add = [[0, 1], [1, 0]]
    mul = [[0, 0], [0, 0]]  # no unit
    with pytest.raises(AxiomViolation) as exc:
        FiniteRing(["0", "1"], add, mul, 0, 1)
    assert exc.value.law == "multiplicative identity"


def test_non_associative_table_is_caught():
    # Z3 with a twisted product 2*2 = 2 breaks associativity or distributivity
    R = zmod(3)
    mul = R.mul_table.copy()
    mul[2, 2] = 2
    with pytest.raises(AxiomViolation):
        FiniteRing(R.labels, R.add_table, mul, 0, 1)


def test_tables_spec():
    spec = {"kind": "tables", "params": {"elements": ["0", "1"], "add": [["0", "1"], ["1", "0"]],
                                         "mul": [["0", "0"], ["0", "1"]], "zero": "0", "one": "1"}}
    R = build_ring(spec)
    assert R.order == 2 and R.mul(1, 1) == 1


def test_non_homomorphism_rejected():
    R = zmod(4)
    with pytest.raises(NotAHomomorphism):
        RingMorphism(R, lambda a: (2 * a) % 4)


def test_non_derivation_rejected():
    R = zmod(4)
    sigma = identity_morphism(R)
    with pytest.raises(NotADerivation):
        SigmaDerivation(R, sigma, lambda a: a)


def test_swap_and_negate_offdiag():
    R = build_ring({"kind": "direct_product", "params": {"factors": [{"kind": "zmod", "params": {"n": 2}}] * 2}})
    s = build_morphism(R, {"kind": "swap"})
    assert s(R.parse("(1,0)")) == R.parse("(0,1)")
    assert s.injective and s.unital
    T = build_ring({"kind": "triangular2", "params": {"diag": {"kind": "zmod", "params": {"n": 4}}}})
    n = build_morphism(T, {"kind": "negate-offdiag"})
    assert n(T.parse("[1,1]")) == T.parse("[1,3]")


def test_inner_derivation_collapses_for_central_element():
    R = zmod(4)
    d = inner_derivation(R, identity_morphism(R), 3)
    assert d.is_zero()


def test_inner_derivation_twisted_leibniz_on_product():
    R = direct_product(zmod(2), zmod(2))
    s = build_morphism(R, {"kind": "swap"})
    d = build_derivation(R, s, {"kind": "inner", "params": {"c": "(1,0)"}})
    for a in R.elements:
        for b in R.elements:
            assert d(R.mul(a, b)) == R.add(R.mul(s(a), d(b)), R.mul(d(a), b))


def test_idempotents_of_zmod4_and_product():
    assert enumerate_idempotents(zmod(4)) == [0, 1]
    assert len(enumerate_idempotents(direct_product(zmod(2), zmod(2)))) == 4


def test_frobenius_on_gf4_swaps_w():
    F = gf(2, 2)
    fr = build_morphism(F, {"kind": "frobenius"})
    assert F.format(fr(F.parse("w"))) == "1+w"
    assert not fr.is_identity()


def test_tables_are_read_only():
    R = zmod(3)
    with pytest.raises(ValueError):
        R.mul_table[0, 0] = 1


# -- structured rings ---------------------------------------------------------------

polys = st.integers(min_value=0, max_value=(1 << 10) - 1)


@given(polys, polys, polys)
def test_z2x_ring_laws(a, b, c):
    R = PolyMod2Ring()
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(a, b) == R.mul(b, a)


def test_z2x_format_parse():
    R = PolyMod2Ring()
    f = R.parse("1+x")
    assert R.format(R.mul(f, f)) == "1+x^2"
    assert R.parse(R.format(0b1011)) == 0b1011


def test_eval_at_zero_is_a_homomorphism():
    R = PolyMod2Ring()
    s = build_morphism(R, {"kind": "eval-at-zero"})
    assert s.sampled and not s.injective
    assert s(R.parse("1+x")) == R.one


elems = st.tuples(st.integers(-5, 5), st.fractions(min_value=-10, max_value=10, max_denominator=8))


@given(elems, elems, elems)
def test_int_rat_ring_laws(a, b, c):
    R = IntRatTrivialExtension()
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(R.add(a, b), c) == R.add(R.mul(a, c), R.mul(b, c))


@given(elems, elems)
def test_halving_is_multiplicative(a, b):
    R = IntRatTrivialExtension()
    s = build_morphism(R, {"kind": "halve-offdiag"})
    assert s(R.mul(a, b)) == R.mul(s(a), s(b))


def test_int_rat_parse():
    R = IntRatTrivialExtension()
    assert R.parse("[0, 1/2]") == (0, Fraction(1, 2))
    with pytest.raises(ParseError):
        R.parse("0,1")


def test_unknown_kinds():
    with pytest.raises(UnsupportedSpec):
        build_ring({"kind": "octonions"})
    with pytest.raises(UnsupportedSpec):
        build_morphism(zmod(2), {"kind": "swap"})


def test_table_morphism_spec():
    R = zmod(3)
    m = build_morphism(R, {"kind": "table", "params": {"images": ["0", "1", "2"]}})
    assert m.is_identity()
    assert np.array_equal(m.table, np.arange(3))
