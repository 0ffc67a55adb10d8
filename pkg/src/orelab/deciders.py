"""Element-level ring properties, right annihilators and the Baer family.

Finite rings are scanned exhaustively with table lookups.  Structured rings
are scanned over their sample set (``sampled``) or over explicit candidate
tuples (``witness`` mode); neither can report ``holds``.

Every property has a scalar predicate ``violates(ring, sigma, delta, *xs)``
written with public ring operations only.  The same predicates replay
witnesses, independently of the vectorized scans.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import NotEnumerable, UnsupportedSpec, WorkCapExceeded
from .rings import Ring, RingMorphism, SigmaDerivation, enumerate_idempotents
from .verdicts import EXHAUSTIVE, SAMPLED, WITNESS, PropertyVerdict, Status

ANNIHILATOR_LATTICE_CAP = 4096


# -- scalar predicates ---------------------------------------------------------

def _z(R, x):
    return R.is_zero(x)


def _m(R, *xs):
    out = xs[0]
    for x in xs[1:]:
        out = R.mul(out, x)
    return out


def _nilpotent(R, a, bound):
    p = a
    for _ in range(bound):
        if R.is_zero(p):
            return True
        p = R.mul(p, a)
    return R.is_zero(p)


@dataclass(frozen=True)
class ElementProperty:
    name: str
    names: tuple
    violates: Callable
    needs_sigma: bool = False
    needs_delta: bool = False


def _nil_bound(R):
    return R.order if R.is_finite else 8


ELEMENT_PROPERTIES = {p.name: p for p in [
    ElementProperty("reversible", ("a", "b"),
                    lambda R, s, d, a, b: _z(R, _m(R, a, b)) and not _z(R, _m(R, b, a))),
    ElementProperty("symmetric", ("a", "b", "c"),
                    lambda R, s, d, a, b, c: _z(R, _m(R, a, b, c)) and not _z(R, _m(R, a, c, b))),
    ElementProperty("right-sigma-reversible", ("a", "b"),
                    lambda R, s, d, a, b: _z(R, _m(R, a, b)) and not _z(R, _m(R, b, s(a))), True),
    ElementProperty("left-sigma-reversible", ("a", "b"),
                    lambda R, s, d, a, b: _z(R, _m(R, a, b)) and not _z(R, _m(R, s(b), a)), True),
    ElementProperty("right-sigma-symmetric", ("a", "b", "c"),
                    lambda R, s, d, a, b, c: _z(R, _m(R, a, b, c)) and not _z(R, _m(R, a, c, s(b))), True),
    ElementProperty("left-sigma-symmetric", ("a", "b", "c"),
                    lambda R, s, d, a, b, c: _z(R, _m(R, a, b, c)) and not _z(R, _m(R, s(b), a, c)), True),
    ElementProperty("c-sigma", ("a", "b"),
                    lambda R, s, d, a, b: _z(R, _m(R, a, s(b))) and not _z(R, _m(R, a, b)), True),
    ElementProperty("sigma-rigid", ("a",),
                    lambda R, s, d, a: _z(R, _m(R, a, s(a))) and not _z(R, a), True),
    ElementProperty("reduced", ("a",),
                    lambda R, s, d, a: not _z(R, a) and _nilpotent(R, a, _nil_bound(R))),
    ElementProperty("sigma-compatible", ("a", "b"),
                    lambda R, s, d, a, b: _z(R, _m(R, a, s(b))) != _z(R, _m(R, a, b)), True),
    ElementProperty("delta-compatible", ("a", "b"),
                    lambda R, s, d, a, b: _z(R, _m(R, a, b)) and not _z(R, _m(R, a, d(b))), True, True),
    ElementProperty("abelian", ("e", "r"),
                    lambda R, s, d, e, r: R.eq(_m(R, e, e), e) and not R.eq(_m(R, e, r), _m(R, r, e))),
]}

# two-sided notions are conjunctions of the one-sided ones
CONJUNCTIONS = {
    "sigma-reversible": ("left-sigma-reversible", "right-sigma-reversible"),
    "sigma-symmetric": ("left-sigma-symmetric", "right-sigma-symmetric"),
    "compatible": ("sigma-compatible", "delta-compatible"),
}


# -- vectorized violation masks for finite rings -------------------------------

def _violation_mask(name: str, R, sigma, delta) -> np.ndarray:
    M, z, n = R.mul_table, R.zero, R.order
    idx = np.arange(n)
    S = sigma.table if sigma is not None else None
    D = delta.table if delta is not None else None
    a2, b2 = idx[:, None], idx[None, :]
    a3, b3, c3 = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    Z = M == z
    if name == "reversible":
        return Z & ~Z.T
    if name == "symmetric":
        return (M[M[a3, b3], c3] == z) & (M[M[a3, c3], b3] != z)
    if name == "right-sigma-reversible":
        return Z & (M[b2, S[a2]] != z)
    if name == "left-sigma-reversible":
        return Z & (M[S[b2], a2] != z)
    if name == "right-sigma-symmetric":
        return (M[M[a3, b3], c3] == z) & (M[M[a3, c3], S[b3]] != z)
    if name == "left-sigma-symmetric":
        return (M[M[a3, b3], c3] == z) & (M[M[S[b3], a3], c3] != z)
    if name == "c-sigma":
        return (M[a2, S[b2]] == z) & ~Z
    if name == "sigma-rigid":
        return (M[idx, S[idx]] == z) & (idx != z)
    if name == "reduced":
        nil = np.zeros(n, dtype=bool)
        p = idx.copy()
        for _ in range(n):
            nil |= p == z
            p = M[p, idx]
        return nil & (idx != z)
    if name == "sigma-compatible":
        return (M[a2, S[b2]] == z) != Z
    if name == "delta-compatible":
        return Z & (M[a2, D[b2]] != z)
    if name == "abelian":
        idem = M[idx, idx] == idx
        return idem[:, None] & (M != M.T)
    raise KeyError(name)


# -- the generic scan ------------------------------------------------------------

def _element_verdict(name: str, ring: Ring, sigma=None, delta=None,
                     candidates: Iterable | None = None) -> PropertyVerdict:
    t0 = time.perf_counter()
    if name in CONJUNCTIONS:
        parts = [_element_verdict(p, ring, sigma, delta, candidates) for p in CONJUNCTIONS[name]]
        failing = next((v for v in parts if v.fails), None)
        if failing is not None:
            witness = dict(failing.witness, part=failing.property)
            out = PropertyVerdict(name, Status.FAILS, witness, failing.bounds, failing.mode)
        else:
            weakest = max(parts, key=lambda v: [EXHAUSTIVE, WITNESS, SAMPLED].index(v.mode))
            out = PropertyVerdict(name, weakest.status, None, weakest.bounds, weakest.mode)
        out.elapsed = time.perf_counter() - t0
        return out

    prop = ELEMENT_PROPERTIES[name]
    if prop.needs_sigma and sigma is None:
        raise UnsupportedSpec(f"'{name}' needs an endomorphism")
    if prop.needs_delta and delta is None:
        raise UnsupportedSpec(f"'{name}' needs a derivation")
    arity = len(prop.names)

    if candidates is not None:
        cands = [tuple(c) if isinstance(c, (tuple, list)) else (c,) for c in candidates]
        hit = next((c for c in cands if prop.violates(ring, sigma, delta, *c)), None)
        mode, bounds = WITNESS, {"candidates": len(cands)}
        status = Status.HOLDS_UP_TO_BOUND
    elif ring.is_finite:
        mask = _violation_mask(name, ring, sigma, delta)
        bad = np.argwhere(mask)
        hit = tuple(int(v) for v in bad[0]) if len(bad) else None
        mode, bounds = EXHAUSTIVE, {"order": ring.order}
        status = Status.HOLDS
    else:
        sample = ring.sample_elements()
        hit = next((c for c in itertools.product(sample, repeat=arity)
                    if prop.violates(ring, sigma, delta, *c)), None)
        mode, bounds = SAMPLED, {"sample": len(sample)}
        status = Status.HOLDS_UP_TO_BOUND

    if hit is not None:
        out = PropertyVerdict(name, Status.FAILS, dict(zip(prop.names, hit)), bounds, mode)
    else:
        out = PropertyVerdict(name, status, None, bounds, mode)
    out.elapsed = time.perf_counter() - t0
    return out


def is_reversible(ring, candidates=None):
    return _element_verdict("reversible", ring, candidates=candidates)


def is_symmetric(ring, candidates=None):
    return _element_verdict("symmetric", ring, candidates=candidates)


def is_right_sigma_reversible(ring, sigma, candidates=None):
    return _element_verdict("right-sigma-reversible", ring, sigma, candidates=candidates)


def is_left_sigma_reversible(ring, sigma, candidates=None):
    return _element_verdict("left-sigma-reversible", ring, sigma, candidates=candidates)


def is_sigma_reversible(ring, sigma, candidates=None):
    return _element_verdict("sigma-reversible", ring, sigma, candidates=candidates)


def is_right_sigma_symmetric(ring, sigma, candidates=None):
    return _element_verdict("right-sigma-symmetric", ring, sigma, candidates=candidates)


def is_left_sigma_symmetric(ring, sigma, candidates=None):
    return _element_verdict("left-sigma-symmetric", ring, sigma, candidates=candidates)


def is_sigma_symmetric(ring, sigma, candidates=None):
    return _element_verdict("sigma-symmetric", ring, sigma, candidates=candidates)


def satisfies_condition_c_sigma(ring, sigma, candidates=None):
    """``aσ(b) = 0`` implies ``ab = 0``."""
    return _element_verdict("c-sigma", ring, sigma, candidates=candidates)


def is_sigma_rigid(ring, sigma, candidates=None):
    return _element_verdict("sigma-rigid", ring, sigma, candidates=candidates)


def is_reduced(ring, candidates=None):
    return _element_verdict("reduced", ring, candidates=candidates)


def is_compatible(ring, sigma, delta, candidates=None):
    return _element_verdict("compatible", ring, sigma, delta, candidates=candidates)


def is_abelian(ring, candidates=None):
    return _element_verdict("abelian", ring, candidates=candidates)


# -- annihilators -----------------------------------------------------------------

@dataclass(frozen=True)
class AnnihilatorSet:
    """``r_R(X)``; ``generators`` is ``X`` (for ideal annihilators, the ideal's generators)."""

    generators: tuple
    members: frozenset
    of_right_ideal: bool = False


def _require_finite(ring):
    if not ring.is_finite:
        raise NotEnumerable(f"{ring.name} is not finite-enumerable")


def _mask_to_set(mask: int) -> frozenset:
    out, k = [], 0
    while mask >> k:
        if (mask >> k) & 1:
            out.append(k)
        k += 1
    return frozenset(out)


def _bits(bools) -> int:
    return sum(1 << int(k) for k in np.flatnonzero(bools))


class _AnnihilatorTables:
    """Bitmask forms of ``r({a})``, ``r(aR)`` and ``eR`` for a finite ring."""

    def __init__(self, ring):
        _require_finite(ring)
        self.ring = ring
        M, z, n = ring.mul_table, ring.zero, ring.order
        zero = M == z
        self.point = [_bits(zero[a]) for a in range(n)]
        # c in r(aR) iff (a r) c = 0 for all r
        self.ideal = [_bits(zero[M[a]].all(axis=0)) for a in range(n)]
        # c in l(Ra) iff c r a = 0 for all r
        self.left_ideal = [_bits(zero[:, M[:, a]].all(axis=1)) for a in range(n)]
        self.idempotents = enumerate_idempotents(ring)
        self.right_gen = {}
        self.left_gen = {}
        for e in self.idempotents:
            self.right_gen.setdefault(_bits(np.isin(np.arange(n), M[e])), e)
            self.left_gen.setdefault(_bits(np.isin(np.arange(n), M[:, e])), e)


def right_annihilator(ring, X: Iterable) -> AnnihilatorSet:
    """``r_R(X) = {c : dc = 0 for every d in X}``."""
    _require_finite(ring)
    X = tuple(X)
    members = frozenset(c for c in ring.elements
                        if all(ring.is_zero(ring.mul(d, c)) for d in X))
    return AnnihilatorSet(X, members)


def right_ideal_annihilator(ring, X: Iterable) -> AnnihilatorSet:
    """``r_R(XR)``: the right annihilator of the right ideal generated by ``X``."""
    _require_finite(ring)
    X = tuple(X)
    closure = [ring.mul(x, r) for x in X for r in ring.elements]
    return AnnihilatorSet(X, right_annihilator(ring, closure).members, of_right_ideal=True)


def principal_right_ideal(ring, e) -> frozenset:
    return frozenset(ring.mul(e, r) for r in ring.elements)


def idempotent_generator(ring, members: frozenset):
    """An idempotent ``e`` with ``eR == members``, or None."""
    for e in enumerate_idempotents(ring):
        if principal_right_ideal(ring, e) == members:
            return e
    return None


def annihilator_lattice(base: dict, cap: int = ANNIHILATOR_LATTICE_CAP) -> dict:
    """Close ``{mask: generators}`` under pairwise intersection."""
    sets = dict(base)
    frontier = list(sets)
    while frontier:
        new = {}
        for m1 in frontier:
            for m2 in list(sets):
                m = m1 & m2
                if m not in sets and m not in new:
                    new[m] = tuple(dict.fromkeys(sets[m1] + sets[m2]))
        if len(sets) + len(new) > cap:
            raise WorkCapExceeded(f"annihilator lattice exceeds {cap} sets")
        sets.update(new)
        frontier = list(new)
    return sets


def _baer_family(name: str, ring, ideal: bool, closure: bool, side: str = "right") -> PropertyVerdict:
    t0 = time.perf_counter()
    tabs = _AnnihilatorTables(ring)
    n = ring.order
    if side == "left":
        base = {}
        for a in range(n):
            base.setdefault(tabs.left_ideal[a], (a,))
        gens = tabs.left_gen
    else:
        source = tabs.ideal if ideal else tabs.point
        base = {}
        for a in range(n):
            base.setdefault(source[a], (a,))
        gens = tabs.right_gen
    sets = annihilator_lattice(base) if closure else base
    bounds = {"order": n, "annihilators": len(sets)}
    for mask, generators in sorted(sets.items(), key=lambda kv: (len(kv[1]), kv[1])):
        if mask not in gens:
            witness = {"generators": list(generators),
                       "annihilator": sorted(_mask_to_set(mask))}
            if side != "right":
                witness["side"] = side
            out = PropertyVerdict(name, Status.FAILS, witness, bounds, EXHAUSTIVE)
            out.elapsed = time.perf_counter() - t0
            return out
    out = PropertyVerdict(name, Status.HOLDS, None, bounds, EXHAUSTIVE)
    out.elapsed = time.perf_counter() - t0
    return out


def is_baer(ring) -> PropertyVerdict:
    """Every ``r(X)`` with ``X`` nonempty equals ``eR`` for an idempotent ``e``."""
    return _baer_family("baer", ring, ideal=False, closure=True)


def is_quasi_baer(ring) -> PropertyVerdict:
    return _baer_family("quasi-baer", ring, ideal=True, closure=True)


def is_pq_baer(ring, side: str = "right") -> PropertyVerdict:
    """Principal right ideals (``side="right"``), principal left ideals, or ``"both"``."""
    if side == "both":
        right = _baer_family("pq-baer", ring, ideal=True, closure=False)
        if right.fails:
            return right
        left = _baer_family("pq-baer", ring, ideal=True, closure=False, side="left")
        left.elapsed += right.elapsed
        return left
    return _baer_family("pq-baer", ring, ideal=True, closure=False, side=side)


def decide_element_property(name: str, ring, sigma=None, delta=None, candidates=None) -> PropertyVerdict:
    if name in ("baer", "quasi-baer"):
        return is_baer(ring) if name == "baer" else is_quasi_baer(ring)
    if name == "pq-baer":
        return is_pq_baer(ring)
    return _element_verdict(name, ring, sigma, delta, candidates)


def unital_idempotent_lemma(ring, sigma: RingMorphism, delta: SigmaDerivation) -> PropertyVerdict:
    """``σ(e) = e`` and ``δ(e) = 0`` for every idempotent, and the ring is abelian."""
    t0 = time.perf_counter()
    for e in enumerate_idempotents(ring):
        if not ring.eq(sigma(e), e):
            return _fail("idempotents-fixed", {"e": e, "part": "sigma"}, ring, t0)
        if not ring.is_zero(delta(e)):
            return _fail("idempotents-fixed", {"e": e, "part": "delta"}, ring, t0)
    ab = is_abelian(ring)
    if ab.fails:
        return _fail("idempotents-fixed", dict(ab.witness, part="abelian"), ring, t0)
    return PropertyVerdict("idempotents-fixed", Status.HOLDS, None, {"order": ring.order},
                           EXHAUSTIVE, time.perf_counter() - t0)


def _fail(name, witness, ring, t0):
    return PropertyVerdict(name, Status.FAILS, witness, {"order": ring.order}, EXHAUSTIVE,
                           time.perf_counter() - t0)
