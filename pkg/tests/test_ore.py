import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from orelab.errors import ContextMismatch, IndexOutOfRange, ParseError
from orelab.ore import NEG_INF, OreExtension, word_count, words
from orelab.rings import build_morphism, build_ring, zmod

from conftest import corpus_instances

POLY_MOD2 = {"kind": "poly_mod2"}


def _one_instance_per_ring_sigma():
    seen, out = set(), []
    for inst in reversed(corpus_instances()):
        key = (inst.ring_name, inst.sigma.name)
        if key not in seen:
            seen.add(key)
            out.append(inst)
    return out


@pytest.mark.parametrize("n", range(9))
def test_word_generator_counts(n):
    for i in range(n + 1):
        ws = list(words(n, i))
        assert len(ws) == comb(n, i) == word_count(n, i)
        assert len(set(ws)) == len(ws)
        assert all(w.count("s") == i and len(w) == n for w in ws)


def test_word_generator_rejects_bad_index():
    with pytest.raises(IndexOutOfRange):
        list(words(2, 3))


def test_iterated_route_matches_words_for_small_powers():
    for inst in _one_instance_per_ring_sigma():
        ext = OreExtension(inst.ring, inst.sigma, inst.delta)
        for n in range(7):
            for a in inst.ring.elements:
                assert ext.x_power_times(n, a) == ext.x_power_times_words(n, a), (inst.label, n, a)


def test_extreme_word_maps_are_powers():
    inst = next(i for i in corpus_instances() if i.ring_name == "T(Z4)" and not i.delta.is_zero())
    ext = OreExtension(inst.ring, inst.sigma, inst.delta)
    for a in inst.ring.elements:
        s, d = a, a
        for _ in range(3):
            s, d = inst.sigma(s), inst.delta(d)
        assert ext.word_map_apply(3, 3, a) == s
        assert ext.word_map_apply(3, 0, a) == d


def test_degree_and_zero():
    ext = OreExtension(zmod(4))
    assert ext.zero.degree is NEG_INF
    assert NEG_INF < 0 and not NEG_INF > -10
    assert ext.poly([1, 0, 0]).degree == 0
    p = ext.parse("2*x")
    assert (p * p).is_zero()


def test_context_mismatch():
    R = zmod(4)
    e1, e2 = OreExtension(R), OreExtension(R)
    with pytest.raises(ContextMismatch):
        e1.one * e2.one


def test_nonzero_pair_product_example():
    R = build_ring(POLY_MOD2)
    s = build_morphism(R, {"kind": "eval-at-zero"})
    ext = OreExtension(R, s, var="y")
    f, g = ext.parse("(1+x)*y"), ext.parse("x")
    assert (f * g).is_zero()
    assert str(g * f) == "(x+x^2)*y"


def test_format_parse_round_trip_structured():
    R = build_ring(POLY_MOD2)
    ext = OreExtension(R, build_morphism(R, {"kind": "eval-at-zero"}), var="y")
    p = ext.poly([R.parse("1+x"), 0, R.parse("x")])
    assert ext.parse(str(p)) == p
    with pytest.raises(ParseError):
        ext.parse("x*y*y")


def test_x_times_a_rule():
    inst = next(i for i in corpus_instances() if i.ring_name == "GF4" and not i.delta.is_zero())
    ext = OreExtension(inst.ring, inst.sigma, inst.delta)
    x = ext.monomial(inst.ring.one, 1)
    for a in inst.ring.elements:
        assert x * ext.const(a) == ext.poly([inst.delta(a), inst.sigma(a)])


coeffs = st.lists(st.integers(0, 15), max_size=4)


@given(st.integers(0, 202), coeffs, coeffs, coeffs)
def test_associativity_and_distributivity(k, a, b, c):
    inst = corpus_instances()[k]
    n = inst.ring.order
    ext = OreExtension(inst.ring, inst.sigma, inst.delta)
    p, q, r = (ext.poly([v % n for v in xs]) for xs in (a, b, c))
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r


@given(st.integers(0, 202), coeffs, coeffs)
def test_leading_coefficient_law(k, a, b):
    inst = corpus_instances()[k]
    R = inst.ring
    ext = OreExtension(R, inst.sigma, inst.delta)
    p, q = ext.poly([v % R.order for v in a]), ext.poly([v % R.order for v in b])
    if p.is_zero() or q.is_zero():
        assert (p * q).is_zero()
        return
    n, m = p.degree, q.degree
    s = q.coeff(m)
    for _ in range(n):
        s = inst.sigma(s)
    assert (p * q).coeff(n + m) == R.mul(p.coeff(n), s)
    assert (p * q).degree <= n + m


def test_words_route_matches_iterated_on_random_products():
    rng = random.Random(3)
    for inst in _one_instance_per_ring_sigma():
        ext = OreExtension(inst.ring, inst.sigma, inst.delta)
        for _ in range(50):
            p = ext.poly([rng.randrange(inst.ring.order) for _ in range(4)])
            q = ext.poly([rng.randrange(inst.ring.order) for _ in range(4)])
            assert ext.mul(p, q) == ext.mul_words(p, q)
