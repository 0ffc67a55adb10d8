"""The six acceptance criteria, each recorded as one PASS/FAIL line in the terminal summary."""
import random
import time
from math import comb

import pytest

from orelab.checks import decide, replay_witness
from orelab.corpus import CATALOGUE, all_fixtures, load_fixture, run_fixture
from orelab.harness import HarnessConfig, default_workers, run_theorem_suite
from orelab.ore import OreExtension, word_count, words
from orelab.polysearch import coefficient_condition, variant_extension
from orelab.verdicts import Status

import conftest
from conftest import catalogue_ring, corpus_instances

SUITE_BUDGET = 300.0
FIXTURE_BUDGET = 30.0
ANNIHILATOR_BUDGET = 1.0


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def fixture_run():
    t0 = time.perf_counter()
    results = [(fx, run_fixture(fx)) for fx in all_fixtures()]
    return results, time.perf_counter() - t0


@pytest.fixture(scope="module")
def suite_report():
    return run_theorem_suite(HarnessConfig(dmax=2, workers=default_workers()))


@pytest.fixture(scope="module")
def annihilator_verdicts():
    out = {}
    for name in CATALOGUE:
        R = catalogue_ring(name)
        for prop in ("baer", "quasi-baer", "pq-baer"):
            t0 = time.perf_counter()
            v = decide(prop, R)
            out[name, prop] = (v, time.perf_counter() - t0)
    return out


def _find(results, fixture, prop, **match):
    for fx, res in results:
        if fx.name != fixture:
            continue
        for r in res:
            e = r.expectation
            if e.property == prop and all(getattr(e, k) == v for k, v in match.items()):
                return r
    raise LookupError((fixture, prop, match))


def test_criterion_1_fixture_reproduction(fixture_run):
    results, elapsed = fixture_run
    problems = [r.diff() for _, res in results for r in res if not r.matches]

    # the triangular ring: C_sigma holds, and the nilpotent witness f with f*f = 0 breaks sigma-skew
    fx = load_fixture("trivial-extension-z4-negate")
    R, s = fx.ring, fx.spec.sigma()
    ext = variant_extension(R, s, fx.spec.delta(None, s), "sigma-skew")
    f = ext.parse("[2,0] + [2,1]*x")
    if not (f * f).is_zero():
        problems.append("triangular witness does not square to zero")
    if coefficient_condition(ext, "sigma-skew", f.coeff(1), 1, f.coeff(0), 0):
        problems.append("triangular witness does not break the coefficient condition at (1,0)")
    if _find(results, fx.name, "c-sigma").verdict.status != Status.HOLDS:
        problems.append("triangular ring should satisfy C_sigma")

    # polynomial ring with evaluation at zero: C_sigma broken by 1+x, x
    r = _find(results, "z2-polynomials-eval-at-zero", "c-sigma", candidates=[["1+x", "x"]])
    if r.rendered != {"a": "1+x", "b": "x"}:
        problems.append(f"eval-at-zero witness {r.rendered}")

    # rationals-based ring: not sigma-rigid, C_sigma never refuted on the sample
    if not _find(results, "integer-rational-halving", "sigma-rigid").verdict.fails:
        problems.append("halving ring should not be sigma-rigid")
    if _find(results, "integer-rational-halving", "c-sigma").verdict.fails:
        problems.append("halving ring C_sigma refuted")

    # skew polynomial product: (1+x)y * x = 0 but x * (1+x)y != 0
    fx = load_fixture("z2-polynomials-skew-y")
    s = fx.spec.sigma()
    ext = OreExtension(fx.ring, s, fx.spec.delta(None, s), var="y")
    p, q = ext.parse("(1+x)*y"), ext.parse("x")
    if not (p * q).is_zero() or (q * p).is_zero():
        problems.append("skew product example")

    # swap ring: symmetric, not right sigma-reversible, no C_sigma
    swap = {r.expectation.property: r.verdict.status for r in
            next(res for fx, res in results if fx.name == "z2xz2-swap")}
    if (swap["symmetric"], swap["right-sigma-reversible"], swap["c-sigma"]) != (
            Status.HOLDS, Status.FAILS, Status.FAILS):
        problems.append(f"swap ring verdicts {swap}")

    n = sum(len(res) for _, res in results)
    record(1, not problems and elapsed < FIXTURE_BUDGET,
           f"{n} fixture expectations reproduced in {elapsed:.1f}s (< {FIXTURE_BUDGET:.0f}s)"
           + (f"; problems: {problems}" if problems else ""))


def test_criterion_2_theorem_suite(suite_report):
    elapsed = suite_report.timings["theorems"]
    thin = [c.id for c in suite_report.checks if c.qualifying < 1]
    bad = [f"{c.id}={c.status}" for c in suite_report.checks if c.status != "pass"]
    least = min(c.qualifying for c in suite_report.checks)
    record(2, not bad and not thin and elapsed < SUITE_BUDGET,
           f"{len(suite_report.checks)} checks over {suite_report.instances} instances, "
           f"0 violations, min qualifying {least}, {elapsed:.1f}s (< {SUITE_BUDGET:.0f}s)"
           + (f"; failing: {bad}" if bad else ""))


def _random_poly(ext, rng, dmax=3):
    elems = ext.ring.elements
    return ext.poly([rng.choice(elems) for _ in range(rng.randint(0, dmax) + 1)])


def test_criterion_3_arithmetic_oracle():
    rng = random.Random(0)
    per_ring = 10_000
    by_ring: dict = {}
    for inst in corpus_instances():
        by_ring.setdefault(inst.ring_name, []).append(inst)
    mismatches, checked = [], 0
    for name, insts in by_ring.items():
        exts = [OreExtension(i.ring, i.sigma, i.delta) for i in insts]
        for k in range(per_ring):
            ext = exts[k % len(exts)]
            p, q = _random_poly(ext, rng), _random_poly(ext, rng)
            if ext.mul(p, q) != ext.mul_words(p, q):
                mismatches.append((insts[k % len(insts)].label, str(p), str(q)))
            checked += 1
    counts_ok = all(len(list(words(n, i))) == comb(n, i) == word_count(n, i)
                    for n in range(9) for i in range(n + 1))
    record(3, not mismatches and counts_ok,
           f"{checked} products over {len(by_ring)} rings, {len(mismatches)} mismatches; "
           f"word counts binomial for n <= 8: {counts_ok}")


def test_criterion_4_algebra_laws():
    rng = random.Random(1)
    failures, triples, pairs = [], 0, 0
    for inst in corpus_instances():
        ext = OreExtension(inst.ring, inst.sigma, inst.delta)
        R, s = inst.ring, inst.sigma
        for _ in range(1000):
            p, q, r = (_random_poly(ext, rng) for _ in range(3))
            if (p * q) * r != p * (q * r) or p * (q + r) != p * q + p * r or (p + q) * r != p * r + q * r:
                failures.append((inst.label, str(p), str(q), str(r)))
            triples += 1
            if p.is_zero() or q.is_zero():
                continue
            n, m = p.degree, q.degree
            b = q.coeff(m)
            for _ in range(n):
                b = s(b)
            if (p * q).coeff(n + m) != R.mul(p.coeff(n), b):
                failures.append((inst.label, "leading", str(p), str(q)))
            pairs += 1
    record(4, not failures,
           f"{triples} triples over {len(corpus_instances())} instances, {pairs} leading-coefficient "
           f"pairs, {len(failures)} failures")


def test_criterion_5_annihilators(annihilator_verdicts):
    v = annihilator_verdicts
    problems = []
    z4 = v["Z4", "baer"][0]
    if not z4.fails or z4.render_witness(catalogue_ring("Z4"))["annihilator"] != ["0", "2"]:
        problems.append(f"Z4 baer {z4.status} {z4.render_witness(catalogue_ring('Z4'))}")
    if v["Z2xZ2", "baer"][0].status != Status.HOLDS:
        problems.append("Z2xZ2 should be Baer")
    for name in CATALOGUE:
        b, q, p = (v[name, k][0].holds for k in ("baer", "quasi-baer", "pq-baer"))
        if (b and not q) or (q and not p):
            problems.append(f"monotonicity broken on {name}")
    slowest = max(t for _, t in v.values())
    record(5, not problems and slowest < ANNIHILATOR_BUDGET,
           f"Z4 not Baer via {{0,2}}, Z2xZ2 Baer, monotone on {len(CATALOGUE)} rings, "
           f"slowest decision {slowest * 1000:.0f}ms (< 1s)"
           + (f"; problems: {problems}" if problems else ""))


def test_criterion_6_witness_replay(fixture_run, suite_report, annihilator_verdicts):
    results, _ = fixture_run
    checked, spurious = 0, []
    for fx, res in results:
        for r in res:
            if r.verdict is not None and r.verdict.fails:
                checked += 1
                if not r.replayed:
                    spurious.append(f"{fx.name}/{r.expectation.property}")
    checked += suite_report.replays["checked"]
    spurious += [f"{r['label']}/{r['property']}" for r in suite_report.replays["spurious"]]
    for c in suite_report.checks:
        for viol in c.violations:
            checked += 1
            if not viol.get("replayed", False):
                spurious.append(f"{viol['label']}/{viol['statement']}")
    for (name, prop), (verdict, _) in annihilator_verdicts.items():
        if verdict.fails:
            checked += 1
            if not replay_witness(verdict, catalogue_ring(name)):
                spurious.append(f"{name}/{prop}")
    record(6, not spurious and checked > 0,
           f"{checked} failing verdicts replayed, {len(spurious)} spurious"
           + (f": {spurious[:5]}" if spurious else ""))
