import pytest

from orelab.checks import decide, replay_witness
from orelab.errors import BoundTooLarge
from orelab.ore import OreExtension
from orelab.polysearch import (
    ARMENDARIZ_VARIANTS,
    NotIdempotentGenerated,
    armendariz_bounded,
    baer_transfer_bounded,
    poly_reversible,
    poly_symmetric,
    triple_annihilation,
)
from orelab.rings import build_morphism, build_ring, zmod
from orelab.verdicts import BOUNDED, SAMPLED, Status

from conftest import corpus_instances

T_Z4 = {"kind": "triangular2", "params": {"diag": {"kind": "zmod", "params": {"n": 4}}}}
Z2XZ2 = {"kind": "direct_product", "params": {"factors": [{"kind": "zmod", "params": {"n": 2}}] * 2}}


def _small_instances():
    picked = {}
    for inst in corpus_instances():
        if inst.ring.order <= 4:
            picked.setdefault((inst.ring_name, inst.sigma.name, inst.delta.is_zero()), inst)
    return list(picked.values())


@pytest.mark.parametrize("variant", list(ARMENDARIZ_VARIANTS))
def test_engine_agrees_with_generic_scan(variant):
    for inst in _small_instances():
        fast = armendariz_bounded(inst.ring, inst.sigma, inst.delta, variant, dmax=1)
        slow = armendariz_bounded(inst.ring, inst.sigma, inst.delta, variant, dmax=1, engine=False)
        assert fast.status == slow.status, (variant, inst.label)
        if fast.fails:
            assert replay_witness(fast, inst.ring, inst.sigma, inst.delta)


def test_poly_reversible_engine_agrees_with_generic_scan():
    for inst in _small_instances():
        ext = OreExtension(inst.ring, inst.sigma, inst.delta)
        fast, slow = poly_reversible(ext, 1), poly_reversible(ext, 1, engine=False)
        assert fast.status == slow.status, inst.label


def test_triangular_ring_is_not_sigma_skew_armendariz():
    R = build_ring(T_Z4)
    s = build_morphism(R, {"kind": "negate-offdiag"})
    v = armendariz_bounded(R, s, None, "sigma-skew", dmax=1)
    assert v.fails and v.mode == BOUNDED
    assert replay_witness(v, R, s)
    f = v.witness["f"]
    assert (f * v.witness["g"]).is_zero()


def test_swap_ring_variants():
    R = build_ring(Z2XZ2)
    s = build_morphism(R, {"kind": "swap"})
    assert armendariz_bounded(R, s, None, "plain", dmax=1).status == Status.HOLDS_UP_TO_BOUND
    v = armendariz_bounded(R, s, None, "sigma-skew", dmax=1)
    assert v.fails and replay_witness(v, R, s)


def test_strict_mode_raises_past_cap():
    R = build_ring(T_Z4)
    with pytest.raises(BoundTooLarge):
        armendariz_bounded(R, None, None, "plain", dmax=2, work_cap=1000, strict=True)


def test_sampling_is_seeded_and_flagged():
    R = zmod(3)
    a = armendariz_bounded(R, None, None, "plain", dmax=2, work_cap=100, seed=7)
    b = armendariz_bounded(R, None, None, "plain", dmax=2, work_cap=100, seed=7)
    assert a.mode == SAMPLED and a.status == Status.HOLDS_UP_TO_BOUND
    assert a.bounds == b.bounds and a.bounds["seed"] == 7


def test_triples_on_gf4_with_inner_derivation():
    inst = next(i for i in corpus_instances() if i.ring_name == "GF4" and not i.delta.is_zero())
    ext = OreExtension(inst.ring, inst.sigma, inst.delta)
    assert poly_symmetric(ext, 1).holds
    assert triple_annihilation(ext, 1).holds


def test_ut2_extension_not_reversible():
    R = build_ring({"kind": "upper_triangular", "params": {"base": {"kind": "zmod", "params": {"n": 2}}}})
    v = poly_reversible(OreExtension(R), 1)
    assert v.fails and replay_witness(v, R)


def test_transfer_checks_on_field():
    inst = next(i for i in corpus_instances() if i.ring_name == "GF4" and i.sigma.name == "frobenius"
                and not i.delta.is_zero())
    ext = OreExtension(inst.ring, inst.sigma, inst.delta)
    for kind in ("baer", "quasi-baer", "pq-baer"):
        v = baer_transfer_bounded(ext, kind, dmax=1)
        assert v.status == Status.HOLDS_UP_TO_BOUND


def test_transfer_needs_idempotent_generated_annihilators():
    with pytest.raises(NotIdempotentGenerated):
        baer_transfer_bounded(OreExtension(zmod(4)), "baer", dmax=1)


def test_transfer_failure_replays_when_hypotheses_fail():
    # over Z2 x Z2 with the swap, idempotents are not fixed and the transfer can break
    R = build_ring(Z2XZ2)
    s = build_morphism(R, {"kind": "swap"})
    v = decide("pq-baer-transfer", R, s, dmax=1)
    if v.fails:
        assert replay_witness(v, R, s)


def test_structured_witness_mode():
    R = build_ring({"kind": "poly_mod2"})
    s = build_morphism(R, {"kind": "eval-at-zero"})
    v = decide("poly-reversible", R, s, dmax=1, candidates=[["(1+x)*y", "x"]], var="y")
    assert v.fails and replay_witness(v, R, s, var="y")
    assert v.render_witness(R) == {"f": "(1+x)*y", "g": "x"}
