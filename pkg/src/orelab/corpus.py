"""Worked-example fixtures and the generated instance stream for the theorem harness."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .checks import decide, replay_witness
from .errors import NotEnumerable, OrelabError, UnknownFixture, WorkCapExceeded
from .polysearch import WORK_CAP
from .rings import (
    FiniteRing,
    RingMorphism,
    SigmaDerivation,
    build_morphism,
    build_ring,
    inner_derivation,
    zero_derivation,
)
from .specfile import RingSpec, parse_spec
from .verdicts import PropertyVerdict, Status

ENDOMORPHISM_CAP = 1 << 20


# -- endomorphism search ----------------------------------------------------------

def additive_generators(ring: FiniteRing) -> tuple[list, dict]:
    """Greedy generators of ``(R, +)`` and a multiplicity vector for every element."""
    rep = {ring.zero: ()}
    gens = []
    for a in ring.elements:
        if a in rep:
            continue
        order, x = 1, a
        while x != ring.zero:
            x, order = ring.add(x, a), order + 1
        new = {}
        for s, coords in rep.items():
            x = s
            for k in range(order):
                new.setdefault(x, coords + (k,))
                x = ring.add(x, a)
        rep = new
        gens.append((a, order))
    return gens, rep


def enumerate_endomorphisms(ring, cap: int = ENDOMORPHISM_CAP, named: dict | None = None) -> list:
    """Every unital ring endomorphism of a finite ring, identity first.

    A candidate is fixed by the images of additive generators; images are
    restricted to elements whose additive order divides the generator's, and
    every survivor is checked against the full addition and multiplication
    tables.  ``named`` maps display names to morphism specs; an enumerated map
    equal to one of them takes its name.
    """
    if not ring.is_finite:
        raise NotEnumerable(f"{ring.name} is not finite-enumerable")
    gens, rep = additive_generators(ring)
    n = ring.order
    elems = np.arange(n)
    A, M = ring.add_table, ring.mul_table

    def kills(y, m):
        x = ring.zero
        for _ in range(m):
            x = ring.add(x, y)
        return x == ring.zero

    choices = []
    for g, m in gens:
        choices.append([ring.one] if g == ring.one else [y for y in ring.elements if kills(y, m)])
    total = int(np.prod([len(c) for c in choices], dtype=object))
    if total > cap:
        raise WorkCapExceeded(f"{total} candidate maps exceed the cap {cap}")

    # multiples[y][k] = k·y
    multiples = []
    for y in ring.elements:
        row, x = [], ring.zero
        for _ in range(max(m for _, m in gens) if gens else 1):
            row.append(x)
            x = ring.add(x, y)
        multiples.append(row)
    coords = [rep[a] for a in ring.elements]

    tables = []
    for images in itertools.product(*choices):
        phi = np.empty(n, dtype=np.int64)
        for a, c in enumerate(coords):
            x = ring.zero
            for y, k in zip(images, c):
                x = ring.add(x, multiples[y][k])
            phi[a] = x
        if phi[ring.one] != ring.one:
            continue
        if not np.array_equal(phi[A], A[phi[:, None], phi[None, :]]):
            continue
        if not np.array_equal(phi[M], M[phi[:, None], phi[None, :]]):
            continue
        tables.append(phi)

    named_tables = {}
    for label, spec in (named or {}).items():
        m = build_morphism(ring, spec, label)
        named_tables[tuple(m.table.tolist())] = (label, m.spec)
    ident = tuple(elems.tolist())
    tables.sort(key=lambda t: (tuple(t.tolist()) != ident, tuple(t.tolist())))
    out = []
    for k, t in enumerate(tables):
        key = tuple(t.tolist())
        if key == ident:
            name, spec = "id", {"kind": "identity", "params": {}}
        elif key in named_tables:
            name, spec = named_tables[key]
        else:
            name = f"endo{k}"
            spec = {"kind": "table", "params": {"images": [ring.format(v) for v in key]}}
        lut = list(key)
        out.append(RingMorphism(ring, lut.__getitem__, name=name, spec=spec))
    return out


def inner_derivations(ring, sigma) -> list[SigmaDerivation]:
    """Zero plus every distinct nonzero ``δ_c(a) = c·a − σ(a)·c``."""
    out = [zero_derivation(ring, sigma)]
    seen = {tuple(out[0].table.tolist())}
    for c in ring.elements:
        d = inner_derivation(ring, sigma, c)
        key = tuple(d.table.tolist())
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out


# -- instance stream -----------------------------------------------------------------

def _z(n):
    return {"kind": "zmod", "params": {"n": n}}


CATALOGUE = {
    "Z2": (_z(2), {}),
    "Z3": (_z(3), {}),
    "Z4": (_z(4), {}),
    "Z2xZ2": ({"kind": "direct_product", "params": {"factors": [_z(2), _z(2)]}},
              {"swap": {"kind": "swap"}}),
    "UT2(Z2)": ({"kind": "upper_triangular", "params": {"base": _z(2)}}, {}),
    "T(Z4)": ({"kind": "triangular2", "params": {"diag": _z(4)}},
              {"negate-offdiag": {"kind": "negate-offdiag"}}),
    "Z2xZ2xZ2": ({"kind": "direct_product", "params": {"factors": [_z(2), _z(2), _z(2)]}}, {}),
    "GF4": ({"kind": "gf", "params": {"p": 2, "k": 2}}, {"frobenius": {"kind": "frobenius"}}),
}


@dataclass(frozen=True)
class Instance:
    index: int
    ring_name: str
    ring: FiniteRing
    sigma: RingMorphism
    delta: SigmaDerivation
    seed: int

    @property
    def label(self) -> str:
        return f"{self.ring_name}|{self.sigma.name}|{self.delta.name}"


@dataclass(frozen=True)
class InstanceStream:
    """Generation policy: catalogue rings × unital endomorphisms × {zero, inner} derivations."""

    seed: int = 0
    rings: tuple = tuple(CATALOGUE)
    inner: bool = True
    work_cap: int = 10_000


def generate_instances(stream: InstanceStream = InstanceStream()) -> list[Instance]:
    """The instance list, in a fixed order; ``stream.seed`` only feeds per-instance search seeds."""
    out: list[Instance] = []
    ss = np.random.SeedSequence(stream.seed)
    for rname in stream.rings:
        spec, named = CATALOGUE[rname]
        ring = build_ring(spec)
        ring.name = rname
        for sigma in enumerate_endomorphisms(ring, named=named):
            derivs = inner_derivations(ring, sigma) if stream.inner else [zero_derivation(ring, sigma)]
            for delta in derivs:
                if len(out) >= stream.work_cap:
                    raise WorkCapExceeded(f"instance stream exceeds {stream.work_cap} instances")
                out.append(Instance(len(out), rname, ring, sigma, delta, 0))
    seeds = ss.generate_state(len(out)) if out else []
    return [Instance(i.index, i.ring_name, i.ring, i.sigma, i.delta, int(s))
            for i, s in zip(out, seeds)]


# -- fixtures --------------------------------------------------------------------------

@dataclass
class Expectation:
    property: str
    status: Status
    witness: dict | None = None
    candidates: list | None = None
    dmax: int = 2
    sigma: str | None = None
    delta: str | None = None
    note: str = ""
    work_cap: int | None = None


@dataclass
class Fixture:
    name: str
    description: str
    claim: str
    spec: RingSpec
    expected: list = field(default_factory=list)

    @property
    def ring(self):
        return self.spec.ring


@dataclass
class ExpectationResult:
    fixture: str
    expectation: Expectation
    verdict: PropertyVerdict | None
    rendered: dict | None
    replayed: bool | None
    error: str | None = None

    @property
    def matches(self) -> bool:
        if self.error or self.verdict is None:
            return False
        exp = self.expectation
        if self.verdict.status != exp.status:
            return False
        if exp.witness is not None and self.rendered != exp.witness:
            return False
        return self.replayed is not False

    def diff(self) -> str:
        exp = self.expectation
        if self.error:
            return f"{self.fixture}/{exp.property}: error {self.error}"
        if self.matches:
            return ""
        got = self.verdict.status.value
        lines = [f"{self.fixture}/{exp.property}:"]
        if got != exp.status.value:
            lines.append(f"  - status {exp.status.value}")
            lines.append(f"  + status {got}")
        if exp.witness is not None and self.rendered != exp.witness:
            lines.append(f"  - witness {json.dumps(exp.witness, sort_keys=True)}")
            lines.append(f"  + witness {json.dumps(self.rendered, sort_keys=True)}")
        if self.replayed is False:
            lines.append("  ! witness does not replay")
        return "\n".join(lines)


def fixture_from_document(doc: dict) -> Fixture:
    spec = parse_spec(doc)
    expected = [
        Expectation(property=e["property"], status=Status(e["status"]), witness=e.get("witness"),
                    candidates=e.get("candidates"), dmax=int(e.get("dmax", 2)),
                    sigma=e.get("sigma"), delta=e.get("delta"), note=e.get("note", ""),
                    work_cap=e.get("work_cap"))
        for e in doc.get("expected", [])
    ]
    return Fixture(doc["name"], doc.get("description", ""), doc.get("claim", ""), spec, expected)


def fixture_names() -> list[str]:
    files = resources.files("orelab.fixtures").iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def load_fixture(name: str) -> Fixture:
    path = resources.files("orelab.fixtures") / f"{name}.json"
    if not path.is_file():
        raise UnknownFixture(f"unknown fixture '{name}' (known: {', '.join(fixture_names())})")
    return fixture_from_document(json.loads(path.read_text()))


def all_fixtures() -> list[Fixture]:
    return [load_fixture(n) for n in fixture_names()]


def run_expectation(fx: Fixture, exp: Expectation, seed: int = 0,
                    work_cap: int = WORK_CAP) -> ExpectationResult:
    try:
        sigma = fx.spec.sigma(exp.sigma)
        delta = fx.spec.delta(exp.delta, sigma)
        if exp.work_cap is not None:
            work_cap = min(work_cap, exp.work_cap)
        v = decide(exp.property, fx.ring, sigma, delta, dmax=exp.dmax, work_cap=work_cap,
                   seed=seed, candidates=exp.candidates, var=fx.spec.var)
        replayed = replay_witness(v, fx.ring, sigma, delta, var=fx.spec.var) if v.fails else None
        return ExpectationResult(fx.name, exp, v, v.render_witness(fx.ring), replayed)
    except OrelabError as exc:
        return ExpectationResult(fx.name, exp, None, None, None, f"{type(exc).__name__}: {exc}")


def run_fixture(fx: Fixture, seed: int = 0, work_cap: int = WORK_CAP) -> list[ExpectationResult]:
    return [run_expectation(fx, e, seed, work_cap) for e in fx.expected]
