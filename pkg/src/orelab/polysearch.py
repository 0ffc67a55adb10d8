"""Degree-bounded searches over ``R[x; σ, δ]``: Armendariz variants,
reversibility and symmetry of the extension, and the Baer-family transfer.

For finite coefficient rings every polynomial of degree ``<= dmax`` is an
integer row of coefficient indices, and products of whole batches of
polynomials are computed with table gathers (:class:`FiniteOreEngine`).
Structured rings and explicit candidates go through
:class:`~orelab.ore.OreExtension` one product at a time.

Searches whose size exceeds ``work_cap`` fall back to seeded random
sampling and say so (``mode="sampled"``).
"""
from __future__ import annotations

import itertools
import time
from typing import Iterable

import numpy as np

from .deciders import _AnnihilatorTables
from .errors import BoundTooLarge, NotEnumerable, UnsupportedSpec
from .ore import OreExtension, SkewPolynomial
from .rings import Ring, identity_morphism, zero_derivation
from .verdicts import BOUNDED, SAMPLED, WITNESS, PropertyVerdict, Status

WORK_CAP = 2 ** 24
GENERIC_WORK_CAP = 200_000
_BLOCK_ELEMS = 1 << 21

ARMENDARIZ_VARIANTS = {
    # variant: (property name, uses sigma, uses delta)
    "plain": ("armendariz", False, False),
    "sigma-skew": ("sigma-skew-armendariz", True, False),
    "sigma-armendariz": ("sigma-armendariz", True, False),
    "sigma-delta-skew": ("sigma-delta-skew-armendariz", True, True),
    "skew": ("skew-armendariz", True, True),
    "sigma-delta-armendariz": ("sigma-delta-armendariz", True, True),
}

POLY_PROPERTIES = ("reversible", "symmetric", "baer-transfer", "quasi-baer-transfer",
                   "pq-baer-transfer")


# -- batched arithmetic --------------------------------------------------------

class FiniteOreEngine:
    """Batched products in ``R[x; σ, δ]`` for a finite ``R``.

    ``F[i][l]`` is the array ``a -> f_l^i(a)`` over all elements, built by the
    iterated rule ``f_l^{i+1} = σ f_{l-1}^i + δ f_l^i``.
    """

    def __init__(self, ext: OreExtension, max_deg: int = 2):
        R = ext.ring
        if not R.is_finite:
            raise NotEnumerable(f"{R.name} is not finite-enumerable")
        self.ext = ext
        self.n = R.order
        self.z = R.zero
        self.A = np.asarray(R.add_table)
        self.M = np.asarray(R.mul_table)
        self.S = np.asarray(ext.sigma.table)
        self.D = np.asarray(ext.delta.table)
        self.F = [[np.arange(self.n)]]
        self.ensure(max_deg)

    def ensure(self, deg: int) -> None:
        A, S, D = self.A, self.S, self.D
        while len(self.F) <= deg:
            prev = self.F[-1]
            i = len(prev) - 1
            row = []
            for l in range(i + 2):
                acc = np.full(self.n, self.z)
                if l >= 1:
                    acc = A[acc, S[prev[l - 1]]]
                if l <= i:
                    acc = A[acc, D[prev[l]]]
                row.append(acc)
            self.F.append(row)

    def products(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        """All products ``u·v``: shape ``(len(U), len(V), Lu + Lv - 1)``."""
        U = np.atleast_2d(U)
        V = np.atleast_2d(V)
        Lu, Lv = U.shape[1], V.shape[1]
        self.ensure(Lu - 1)
        A, M = self.A, self.M
        out = np.full((U.shape[0], V.shape[0], Lu + Lv - 1), self.z, dtype=np.int64)
        for i in range(Lu):
            ui = U[:, i][:, None]
            if (ui == self.z).all():
                continue
            for j in range(Lv):
                vj = V[:, j]
                for l in range(i + 1):
                    term = M[ui, self.F[i][l][vj][None, :]]
                    out[:, :, l + j] = A[out[:, :, l + j], term]
        return out

    def is_zero(self, P: np.ndarray) -> np.ndarray:
        return (P == self.z).all(axis=-1)

    def to_poly(self, row) -> SkewPolynomial:
        return self.ext.poly([int(v) for v in row])


def all_polys(n: int, d: int, zero: int = 0) -> np.ndarray:
    """Coefficient rows of every polynomial of degree ``<= d``, lowest degree first."""
    rows = np.array(list(itertools.product(range(n), repeat=d + 1)), dtype=np.int64)[:, ::-1]
    nz = rows != zero
    deg = np.where(nz.any(axis=1), d - np.argmax(nz[:, ::-1], axis=1), -1)
    order = np.argsort(deg, kind="stable")
    return np.ascontiguousarray(rows[order])


def _blocks(count: int, per_item: int):
    size = max(1, _BLOCK_ELEMS // max(1, per_item))
    for start in range(0, count, size):
        yield start, min(count, start + size)


def _pick(total: int, budget: int, rng) -> np.ndarray:
    if budget >= total:
        return np.arange(total)
    return np.sort(rng.choice(total, size=max(1, budget), replace=False))


def _bits(row) -> int:
    packed = np.packbits(np.asarray(row, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# -- extensions per variant --------------------------------------------------------

def variant_extension(ring: Ring, sigma, delta, variant: str, var: str = "x") -> OreExtension:
    """The extension a variant lives in; σ-only variants force ``δ = 0``."""
    if variant not in ARMENDARIZ_VARIANTS:
        raise UnsupportedSpec(f"unknown Armendariz variant '{variant}'")
    _, use_sigma, use_delta = ARMENDARIZ_VARIANTS[variant]
    if not use_sigma or sigma is None:
        sigma = identity_morphism(ring)
        return OreExtension(ring, sigma, zero_derivation(ring, sigma), var=var)
    if not use_delta or delta is None:
        return OreExtension(ring, sigma, zero_derivation(ring, sigma), var=var)
    return OreExtension(ring, sigma, delta, var=var)


def coefficient_condition(ext: OreExtension, variant: str, a, i: int, b, j: int) -> bool:
    """Whether the pair ``(a_i, b_j)`` meets the variant's conclusion."""
    R = ext.ring
    if variant in ("plain", "sigma-armendariz", "sigma-delta-armendariz"):
        return R.is_zero(R.mul(a, b))
    if variant == "sigma-skew":
        s = b
        for _ in range(i):
            s = ext.sigma(s)
        return R.is_zero(R.mul(a, s))
    if variant == "sigma-delta-skew":
        return ext.mul(ext.monomial(a, i), ext.monomial(b, j)).is_zero()
    if variant == "skew":
        return i != 0 or R.is_zero(R.mul(a, b))
    raise UnsupportedSpec(f"unknown Armendariz variant '{variant}'")


def first_bad_pair(ext, variant, f: SkewPolynomial, g: SkewPolynomial):
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            if not coefficient_condition(ext, variant, a, i, b, j):
                return i, j
    return None


def _ok_table(eng: FiniteOreEngine, variant: str, U: np.ndarray) -> np.ndarray:
    """``ok[f, b]``: every coefficient of ``f`` meets the condition against ``b``."""
    M, z, n = eng.M, eng.z, eng.n
    idx = np.arange(n)
    ok = np.ones((U.shape[0], n), dtype=bool)
    for i in range(U.shape[1]):
        ai = U[:, i][:, None]
        if variant in ("plain", "sigma-armendariz", "sigma-delta-armendariz"):
            ok &= M[ai, idx[None, :]] == z
        elif variant == "sigma-skew":
            ok &= M[ai, eng.F[i][i][None, :]] == z
        elif variant == "sigma-delta-skew":
            for l in range(i + 1):
                ok &= M[ai, eng.F[i][l][None, :]] == z
        elif variant == "skew":
            if i == 0:
                ok &= M[ai, idx[None, :]] == z
    return ok


# -- Armendariz variants -----------------------------------------------------------

def armendariz_bounded(ring: Ring, sigma=None, delta=None, variant: str = "plain",
                       dmax: int = 2, work_cap: int = WORK_CAP, seed: int = 0,
                       candidates: Iterable | None = None, strict: bool = False,
                       engine: bool = True, var: str = "x") -> PropertyVerdict:
    """Search pairs ``(f, g)`` with ``deg <= dmax`` and ``fg = 0`` for a
    coefficient pair violating ``variant``'s conclusion.

    ``candidates`` (pairs of polynomials or coefficient lists) switches to
    witness mode.  ``strict`` raises :class:`BoundTooLarge` instead of
    sampling past ``work_cap``.
    """
    t0 = time.perf_counter()
    if dmax < 1:
        raise UnsupportedSpec("dmax must be at least 1")
    name = ARMENDARIZ_VARIANTS.get(variant, (None,))[0]
    ext = variant_extension(ring, sigma, delta, variant, var=var)
    bounds = {"dmax": dmax, "variant": variant}

    if candidates is not None or not ring.is_finite or not engine:
        pairs, mode, bounds = _generic_pairs(ext, dmax, candidates, work_cap, seed, strict, bounds)
        for f, g in pairs:
            if (f * g).is_zero():
                bad = first_bad_pair(ext, variant, f, g)
                if bad is not None:
                    return _verdict(name, Status.FAILS, {"f": f, "g": g, "i": bad[0], "j": bad[1]},
                                    bounds, mode, t0)
        return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)

    eng = FiniteOreEngine(ext, dmax)
    P = all_polys(eng.n, dmax, eng.z)
    N = len(P)
    fidx, mode = _budget(N, N, work_cap, seed, strict, bounds)
    L = 2 * dmax + 1
    for start, stop in _blocks(len(fidx), N * L):
        Fb = P[fidx[start:stop]]
        zero = eng.is_zero(eng.products(Fb, P))
        ok = _ok_table(eng, variant, Fb)
        cond = ok[np.arange(len(Fb))[:, None, None], P[None, :, :]].all(axis=2)
        bad = np.argwhere(zero & ~cond)
        if len(bad):
            f = eng.to_poly(Fb[bad[0][0]])
            g = eng.to_poly(P[bad[0][1]])
            i, j = first_bad_pair(ext, variant, f, g)
            return _verdict(name, Status.FAILS, {"f": f, "g": g, "i": i, "j": j}, bounds, mode, t0)
    return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)


def _budget(n_outer, inner_work, work_cap, seed, strict, bounds):
    work = n_outer * inner_work
    bounds["work"] = work
    if work <= work_cap:
        return np.arange(n_outer), BOUNDED
    if strict:
        raise BoundTooLarge(f"search needs {work} products, work cap is {work_cap}")
    rng = np.random.default_rng(seed)
    picked = _pick(n_outer, work_cap // max(1, inner_work), rng)
    bounds["sampled_outer"] = f"{len(picked)}/{n_outer}"
    bounds["seed"] = seed
    return picked, SAMPLED


def _poly_list(ext: OreExtension, dmax: int) -> list:
    R = ext.ring
    elems = R.sample_elements()
    return [ext.poly(list(c)) for c in itertools.product(elems, repeat=dmax + 1)]


def _as_poly(ext, p):
    if isinstance(p, SkewPolynomial):
        if p.ext is ext:
            return p
        return ext.poly(p.coeffs)
    if isinstance(p, str):
        return ext.parse(p)
    return ext.poly(list(p))


def _generic_pairs(ext, dmax, candidates, work_cap, seed, strict, bounds):
    if candidates is not None:
        pairs = [tuple(_as_poly(ext, p) for p in c) for c in candidates]
        bounds = dict(bounds, candidates=len(pairs))
        return pairs, WITNESS, bounds
    polys = _poly_list(ext, dmax)
    total = len(polys) ** 2
    cap = min(work_cap, GENERIC_WORK_CAP)
    bounds = dict(bounds, sample=len(ext.ring.sample_elements()), work=total)
    if total <= cap and ext.ring.is_finite:
        return itertools.product(polys, repeat=2), BOUNDED, bounds
    if total <= cap:
        return itertools.product(polys, repeat=2), SAMPLED, bounds
    if strict:
        raise BoundTooLarge(f"search needs {total} products, cap is {cap}")
    rng = np.random.default_rng(seed)
    picks = _pick(total, cap, rng)
    bounds["sampled_pairs"] = f"{len(picks)}/{total}"
    bounds["seed"] = seed
    m = len(polys)
    return ((polys[k // m], polys[k % m]) for k in picks), SAMPLED, bounds


def _verdict(name, status, witness, bounds, mode, t0):
    if status == Status.HOLDS:
        status = Status.HOLDS_UP_TO_BOUND
    return PropertyVerdict(name, status, witness, bounds, mode, time.perf_counter() - t0)


# -- reversibility / symmetry of the extension ------------------------------------

def poly_reversible(ext: OreExtension, dmax: int = 2, work_cap: int = WORK_CAP, seed: int = 0,
                    candidates=None, strict: bool = False, engine: bool = True) -> PropertyVerdict:
    t0 = time.perf_counter()
    name, bounds = "poly-reversible", {"dmax": dmax}
    if candidates is not None or not ext.ring.is_finite or not engine:
        pairs, mode, bounds = _generic_pairs(ext, dmax, candidates, work_cap, seed, strict, bounds)
        for f, g in pairs:
            if (f * g).is_zero() and not (g * f).is_zero():
                return _verdict(name, Status.FAILS, {"f": f, "g": g}, bounds, mode, t0)
        return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)

    eng = FiniteOreEngine(ext, dmax)
    P = all_polys(eng.n, dmax, eng.z)
    N = len(P)
    fidx, mode = _budget(N, N, work_cap, seed, strict, bounds)
    for start, stop in _blocks(len(fidx), 2 * N * (2 * dmax + 1)):
        Fb = P[fidx[start:stop]]
        fg = eng.is_zero(eng.products(Fb, P))
        gf = eng.is_zero(eng.products(P, Fb)).T
        bad = np.argwhere(fg & ~gf)
        if len(bad):
            witness = {"f": eng.to_poly(Fb[bad[0][0]]), "g": eng.to_poly(P[bad[0][1]])}
            return _verdict(name, Status.FAILS, witness, bounds, mode, t0)
    return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)


def _triples(eng, P, dmax, work_cap, seed, strict, bounds, visit):
    """Drive ``visit(f_row, g_rows, zero_fgh)`` over (f, g-chunk) blocks.

    ``zero_fgh[g, h]`` marks ``fgh = 0`` for every ``h`` in ``P``.  Returns the
    first witness ``visit`` reports, and the search mode.
    """
    N = len(P)
    work = N ** 3
    bounds["work"] = work
    rng = np.random.default_rng(seed)
    L = 3 * dmax + 1
    if work <= work_cap:
        mode = BOUNDED
        plan = ((f, np.arange(N)) for f in range(N))
    elif strict:
        raise BoundTooLarge(f"search needs {work} products, work cap is {work_cap}")
    else:
        mode = SAMPLED
        pairs = _pick(N * N, max(1, work_cap // N), rng)
        bounds["sampled_pairs"] = f"{len(pairs)}/{N * N}"
        bounds["seed"] = seed
        by_f: dict[int, list] = {}
        for k in pairs:
            by_f.setdefault(int(k // N), []).append(int(k % N))
        plan = ((f, np.array(gs)) for f, gs in sorted(by_f.items()))
    for f, gidx in plan:
        frow = P[f]
        FG = eng.products(frow, P[gidx])[0]
        for start, stop in _blocks(len(gidx), N * L):
            zero_fgh = eng.is_zero(eng.products(FG[start:stop], P))
            hit = visit(frow, gidx[start:stop], zero_fgh)
            if hit is not None:
                return hit, mode
    return None, mode


def poly_symmetric(ext: OreExtension, dmax: int = 2, work_cap: int = WORK_CAP, seed: int = 0,
                   candidates=None, strict: bool = False, engine: bool = True) -> PropertyVerdict:
    """``fgh = 0`` implies ``fhg = 0`` for polynomials of degree ``<= dmax``."""
    t0 = time.perf_counter()
    name, bounds = "poly-symmetric", {"dmax": dmax}
    if candidates is not None or not ext.ring.is_finite or not engine:
        triples, mode, bounds = _generic_triples(ext, dmax, candidates, work_cap, seed, strict, bounds)
        for f, g, h in triples:
            if (f * g * h).is_zero() and not (f * h * g).is_zero():
                return _verdict(name, Status.FAILS, {"f": f, "g": g, "h": h}, bounds, mode, t0)
        return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)

    eng = FiniteOreEngine(ext, 2 * dmax)
    P = all_polys(eng.n, dmax, eng.z)

    def visit(frow, gidx, zero_fgh):
        FH = eng.products(frow, P)[0]
        zero_fhg = eng.is_zero(eng.products(FH, P[gidx])).T
        bad = np.argwhere(zero_fgh & ~zero_fhg)
        if len(bad):
            g, h = bad[0]
            return {"f": eng.to_poly(frow), "g": eng.to_poly(P[gidx[g]]), "h": eng.to_poly(P[h])}
        return None

    hit, mode = _triples(eng, P, dmax, work_cap, seed, strict, bounds, visit)
    if hit is not None:
        return _verdict(name, Status.FAILS, hit, bounds, mode, t0)
    return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)


def triple_annihilation(ext: OreExtension, dmax: int = 2, work_cap: int = WORK_CAP, seed: int = 0,
                        strict: bool = False, engine: bool = True) -> PropertyVerdict:
    """``fgh = 0`` implies ``a_i b_j c_k = 0`` for all coefficient indices."""
    t0 = time.perf_counter()
    name, bounds = "triple-annihilation", {"dmax": dmax}
    R = ext.ring
    if not R.is_finite or not engine:
        triples, mode, bounds = _generic_triples(ext, dmax, None, work_cap, seed, strict, bounds)
        for f, g, h in triples:
            if (f * g * h).is_zero():
                bad = _first_bad_triple(R, f, g, h)
                if bad is not None:
                    return _verdict(name, Status.FAILS, dict(f=f, g=g, h=h, **bad), bounds, mode, t0)
        return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)

    eng = FiniteOreEngine(ext, 2 * dmax)
    P = all_polys(eng.n, dmax, eng.z)
    M, z = eng.M, eng.z
    # ann[x, h]: x annihilates every coefficient of h from the left
    ann = (M[:, P] == z).all(axis=2)

    def visit(frow, gidx, zero_fgh):
        G = P[gidx]
        AB = M[frow[None, :, None], G[:, None, :]].reshape(len(G), -1)
        cond = ann[AB].all(axis=1)
        bad = np.argwhere(zero_fgh & ~cond)
        if len(bad):
            g, h = bad[0]
            f_, g_, h_ = eng.to_poly(frow), eng.to_poly(G[g]), eng.to_poly(P[h])
            return dict(f=f_, g=g_, h=h_, **_first_bad_triple(R, f_, g_, h_))
        return None

    hit, mode = _triples(eng, P, dmax, work_cap, seed, strict, bounds, visit)
    if hit is not None:
        return _verdict(name, Status.FAILS, hit, bounds, mode, t0)
    return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)


def _first_bad_triple(R, f, g, h):
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            for k, c in enumerate(h.coeffs):
                if not R.is_zero(R.mul(R.mul(a, b), c)):
                    return {"i": i, "j": j, "k": k}
    return None


def _generic_triples(ext, dmax, candidates, work_cap, seed, strict, bounds):
    if candidates is not None:
        triples = [tuple(_as_poly(ext, p) for p in c) for c in candidates]
        return triples, WITNESS, dict(bounds, candidates=len(triples))
    polys = _poly_list(ext, dmax)
    m = len(polys)
    total = m ** 3
    cap = min(work_cap, GENERIC_WORK_CAP)
    bounds = dict(bounds, sample=len(ext.ring.sample_elements()), work=total)
    mode = BOUNDED if ext.ring.is_finite else SAMPLED
    if total <= cap:
        return itertools.product(polys, repeat=3), mode, bounds
    if strict:
        raise BoundTooLarge(f"search needs {total} products, cap is {cap}")
    picks = _pick(total, cap, np.random.default_rng(seed))
    bounds["sampled_triples"] = f"{len(picks)}/{total}"
    bounds["seed"] = seed
    return ((polys[k // (m * m)], polys[(k // m) % m], polys[k % m]) for k in picks), SAMPLED, bounds


# -- Baer-family transfer ----------------------------------------------------------

class NotIdempotentGenerated(UnsupportedSpec):
    """The coefficient ring misses the Baer-type hypothesis the transfer needs."""


def baer_transfer_bounded(ext: OreExtension, kind: str = "baer", dmax: int = 2,
                          work_cap: int = WORK_CAP, seed: int = 0,
                          strict: bool = False) -> PropertyVerdict:
    """Bounded check that annihilators in ``R[x; σ, δ]`` come from idempotents of ``R``.

    For each ``A`` (one or two polynomials of degree ``<= dmax``; for the
    ideal kinds, the right ideal they generate) let ``A*`` be the set (right
    ideal) of coefficients and ``e`` the idempotent with ``r_R(A*) = eR``.
    The degree-``<= dmax`` part of ``r(A)`` must equal the polynomials whose
    coefficients all lie in ``eR``: part ``a`` is ``eq`` annihilated by
    ``A``, part ``b`` is every annihilated ``q`` lying in ``eR[x]``.
    Ideals are generated with multipliers ``r·x^k``, ``k <= dmax``.
    """
    t0 = time.perf_counter()
    if kind not in ("baer", "quasi-baer", "pq-baer"):
        raise UnsupportedSpec(f"unknown transfer kind '{kind}'")
    name = f"{kind}-transfer"
    R = ext.ring
    if not R.is_finite:
        raise NotEnumerable(f"{R.name} is not finite-enumerable")
    ideal = kind != "baer"
    eng = FiniteOreEngine(ext, 2 * dmax)
    tabs = _AnnihilatorTables(R)
    n, z = eng.n, eng.z
    P = all_polys(n, dmax, z)
    N = len(P)
    bounds = {"dmax": dmax, "ideal_multiplier_degree": dmax if ideal else None}
    bounds = {k: v for k, v in bounds.items() if v is not None}

    if ideal:
        # multipliers r x^k
        RX = np.full((n * (dmax + 1), dmax + 1), z, dtype=np.int64)
        for k in range(dmax + 1):
            RX[k * n:(k + 1) * n, k] = np.arange(n)
    kernels, coeff_ann = [], []
    for p in range(N):
        if ideal:
            H = eng.products(P[p], RX)[0]
            kern = eng.is_zero(eng.products(H, P)).all(axis=0)
            coeffs = np.unique(H)
            source = tabs.ideal
        else:
            kern = eng.is_zero(eng.products(P[p], P))[0]
            coeffs = np.unique(P[p])
            source = tabs.point
        kernels.append(_bits(kern))
        m = (1 << n) - 1
        for c in coeffs:
            m &= source[int(c)]
        coeff_ann.append(m)

    in_eR = {e: np.isin(np.arange(n), eng.M[e]) for e in tabs.idempotents}
    e_poly = {e: _bits(in_eR[e][P].all(axis=1)) for e in tabs.idempotents}

    if kind == "pq-baer":
        subsets = [(p,) for p in range(N)]
        mode = BOUNDED
        bounds["subsets"] = N
    else:
        total = N * (N + 1) // 2
        budget = max(1, work_cap // 64)
        bounds["subsets"] = total
        if total <= budget:
            mode = BOUNDED
            subsets = itertools.chain(((p,) for p in range(N)), itertools.combinations(range(N), 2))
        elif strict:
            raise BoundTooLarge(f"{total} subsets exceed the budget {budget}")
        else:
            mode = SAMPLED
            rng = np.random.default_rng(seed)
            picks = _pick(N * N, budget, rng)
            subsets = [tuple(sorted({int(k // N), int(k % N)})) for k in picks]
            bounds["sampled_subsets"] = f"{len(picks)}/{N * N}"
            bounds["seed"] = seed

    gens = tabs.right_gen
    for A in subsets:
        ann = (1 << n) - 1
        kern = (1 << N) - 1
        for p in A:
            ann &= coeff_ann[p]
            kern &= kernels[p]
        e = gens.get(ann)
        if e is None:
            raise NotIdempotentGenerated(
                f"r_R(A*) is not idempotent-generated for A={[str(eng.to_poly(P[p])) for p in A]}")
        target = e_poly[e]
        if kern != target:
            part = "a" if target & ~kern else "b"
            q = _lowest_bit((target & ~kern) if part == "a" else (kern & ~target))
            witness = {"A": [eng.to_poly(P[p]) for p in A], "e": e, "q": eng.to_poly(P[q]),
                       "part": part}
            return _verdict(name, Status.FAILS, witness, bounds, mode, t0)
    return _verdict(name, Status.HOLDS_UP_TO_BOUND, None, bounds, mode, t0)


def poly_property_bounded(ring: Ring, sigma=None, delta=None, prop: str = "reversible",
                          dmax: int = 2, work_cap: int = WORK_CAP, seed: int = 0,
                          candidates=None, strict: bool = False, var: str = "x") -> PropertyVerdict:
    sigma = sigma or identity_morphism(ring)
    delta = delta or zero_derivation(ring, sigma)
    ext = OreExtension(ring, sigma, delta, var=var)
    if prop == "reversible":
        return poly_reversible(ext, dmax, work_cap, seed, candidates, strict)
    if prop == "symmetric":
        return poly_symmetric(ext, dmax, work_cap, seed, candidates, strict)
    if prop.endswith("-transfer"):
        return baer_transfer_bounded(ext, prop[: -len("-transfer")], dmax, work_cap, seed, strict)
    raise UnsupportedSpec(f"unknown polynomial property '{prop}'")
