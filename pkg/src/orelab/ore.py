"""Arithmetic in the Ore extension ``R[x; σ, δ]``.

Two routes compute ``x^n · a``:

* the iterated route applies ``x·c = σ(c)x + δ(c)`` ``n`` times;
* the word route sums, for each ``i``, every composite of ``i`` copies of
  ``σ`` and ``n - i`` copies of ``δ`` applied to ``a``.

The iterated route is the default.  The word route is exponential in ``n``
and exists as an independent cross-check.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .errors import ContextMismatch, IndexOutOfRange, ParseError
from .rings import Ring, RingMorphism, SigmaDerivation, identity_morphism, zero_derivation


class _NegInf:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()

SIGMA, DELTA = "s", "d"


class OreExtension:
    """The context ``(R, σ, δ)`` shared by all polynomials of one extension."""

    def __init__(self, ring: Ring, sigma: RingMorphism | None = None,
                 delta: SigmaDerivation | None = None, var: str = "x"):
        sigma = sigma or identity_morphism(ring)
        delta = delta or zero_derivation(ring, sigma)
        if sigma.ring is not ring or delta.ring is not ring:
            raise ContextMismatch("sigma and delta must act on the coefficient ring")
        if delta.sigma is not sigma:
            raise ContextMismatch("delta is a derivation for a different sigma")
        self.ring = ring
        self.sigma = sigma
        self.delta = delta
        self.var = var
        self._xpow_cache: dict = {}

    # -- constructors ------------------------------------------------------
    def poly(self, coeffs: Sequence) -> "SkewPolynomial":
        return SkewPolynomial(self, _strip(self.ring, coeffs))

    def const(self, a) -> "SkewPolynomial":
        return self.poly([a])

    def monomial(self, a, k: int) -> "SkewPolynomial":
        return self.poly([self.ring.zero] * k + [a])

    @property
    def zero(self) -> "SkewPolynomial":
        return SkewPolynomial(self, ())

    @property
    def one(self) -> "SkewPolynomial":
        return self.const(self.ring.one)

    # -- the x^n a expansion ------------------------------------------------
    def x_times(self, coeffs: Sequence) -> list:
        """Coefficients of ``x · Σ c_i x^i``."""
        R, s, d = self.ring, self.sigma, self.delta
        out = [R.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            out[i + 1] = R.add(out[i + 1], s(c))
            out[i] = R.add(out[i], d(c))
        return out

    def x_power_coeffs(self, n: int, a) -> tuple:
        """Coefficient list ``(f_0^n(a), ..., f_n^n(a))`` via the iterated rule."""
        key = (n, a) if _hashable(a) else None
        if key is not None and key in self._xpow_cache:
            return self._xpow_cache[key]
        if n == 0:
            out = (a,)
        else:
            out = tuple(self.x_times(self.x_power_coeffs(n - 1, a)))
        if key is not None:
            self._xpow_cache[key] = out
        return out

    def x_power_times(self, n: int, a) -> "SkewPolynomial":
        if n < 0:
            raise IndexOutOfRange(f"negative power {n}")
        return self.poly(self.x_power_coeffs(n, a))

    def word_map_apply(self, n: int, i: int, a):
        """``f_i^n(a)``: the sum over all words with ``i`` letters σ and ``n-i`` letters δ."""
        if n < 0 or i < 0 or i > n:
            raise IndexOutOfRange(f"need 0 <= i <= n, got i={i}, n={n}")
        R = self.ring
        acc = R.zero
        for word in words(n, i):
            v = a
            for letter in reversed(word):
                v = self.sigma(v) if letter == SIGMA else self.delta(v)
            acc = R.add(acc, v)
        return acc

    def x_power_times_words(self, n: int, a) -> "SkewPolynomial":
        return self.poly([self.word_map_apply(n, i, a) for i in range(n + 1)])

    # -- products -----------------------------------------------------------
    def _mul(self, p: Sequence, q: Sequence, expand) -> list:
        R = self.ring
        if not p or not q:
            return []
        out = [R.zero] * (len(p) + len(q) - 1)
        for j, b in enumerate(q):
            if R.is_zero(b):
                continue
            for i, a in enumerate(p):
                if R.is_zero(a):
                    continue
                for l, c in enumerate(expand(i, b)):
                    out[l + j] = R.add(out[l + j], R.mul(a, c))
        return out

    def mul(self, p: "SkewPolynomial", q: "SkewPolynomial") -> "SkewPolynomial":
        self._check(p, q)
        return self.poly(self._mul(p.coeffs, q.coeffs, self.x_power_coeffs))

    def mul_words(self, p: "SkewPolynomial", q: "SkewPolynomial") -> "SkewPolynomial":
        self._check(p, q)
        expand = lambda i, b: [self.word_map_apply(i, l, b) for l in range(i + 1)]
        return self.poly(self._mul(p.coeffs, q.coeffs, expand))

    def add(self, p: "SkewPolynomial", q: "SkewPolynomial") -> "SkewPolynomial":
        self._check(p, q)
        R = self.ring
        n = max(len(p.coeffs), len(q.coeffs))
        pc = list(p.coeffs) + [R.zero] * (n - len(p.coeffs))
        qc = list(q.coeffs) + [R.zero] * (n - len(q.coeffs))
        return self.poly([R.add(a, b) for a, b in zip(pc, qc)])

    def neg(self, p: "SkewPolynomial") -> "SkewPolynomial":
        self._check(p)
        return self.poly([self.ring.neg(a) for a in p.coeffs])

    def _check(self, *polys):
        for p in polys:
            if p.ext is not self:
                raise ContextMismatch("polynomials belong to different Ore extensions")

    # -- text ----------------------------------------------------------------
    def format(self, p: "SkewPolynomial") -> str:
        R = self.ring
        terms = []
        for i, a in enumerate(p.coeffs):
            if R.is_zero(a):
                continue
            coef = R.format(a)
            if any(ch in coef for ch in "+* "):
                coef = f"({coef})"
            if i == 0:
                terms.append(coef)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                terms.append(mono if R.eq(a, R.one) else f"{coef}*{mono}")
        return " + ".join(terms) or "0"

    def parse(self, text: str) -> "SkewPolynomial":
        R = self.ring
        coeffs: dict[int, object] = {}
        for term in _split_top(text.strip(), "+"):
            term = term.strip()
            if not term:
                raise ParseError(f"empty term in '{text}'")
            coef_txt, deg = _split_term(term, self.var)
            a = R.one if coef_txt is None else R.parse(coef_txt)
            coeffs[deg] = R.add(coeffs.get(deg, R.zero), a)
        if not coeffs:
            return self.zero
        top = max(coeffs)
        return self.poly([coeffs.get(k, R.zero) for k in range(top + 1)])

    def __repr__(self):
        return f"{self.ring.name}[{self.var};{self.sigma.name},{self.delta.name}]"


@dataclass(frozen=True, eq=False)
class SkewPolynomial:
    """A normalized element ``Σ a_i x^i`` of an :class:`OreExtension`."""

    ext: OreExtension
    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ext.ring.zero

    def __add__(self, other):
        return self.ext.add(self, other)

    def __neg__(self):
        return self.ext.neg(self)

    def __sub__(self, other):
        return self.ext.add(self, self.ext.neg(other))

    def __mul__(self, other):
        return self.ext.mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SkewPolynomial):
            return NotImplemented
        return poly_equal(self, other)

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return self.ext.format(self)

    def __repr__(self):
        return f"SkewPolynomial({self.ext.format(self)!r})"


def poly_equal(p: SkewPolynomial, q: SkewPolynomial) -> bool:
    if p.ext is not q.ext:
        raise ContextMismatch("polynomials belong to different Ore extensions")
    R = p.ext.ring
    return len(p.coeffs) == len(q.coeffs) and all(R.eq(a, b) for a, b in zip(p.coeffs, q.coeffs))


def skew_mul(p: SkewPolynomial, q: SkewPolynomial) -> SkewPolynomial:
    return p.ext.mul(p, q)


def skew_add(p: SkewPolynomial, q: SkewPolynomial) -> SkewPolynomial:
    return p.ext.add(p, q)


def skew_neg(p: SkewPolynomial) -> SkewPolynomial:
    return p.ext.neg(p)


def words(n: int, i: int) -> Iterator[tuple]:
    """All words of length ``n`` over {σ, δ} with exactly ``i`` letters σ."""
    if i < 0 or i > n:
        raise IndexOutOfRange(f"need 0 <= i <= n, got i={i}, n={n}")
    for pos in itertools.combinations(range(n), i):
        word = [DELTA] * n
        for k in pos:
            word[k] = SIGMA
        yield tuple(word)


def word_count(n: int, i: int) -> int:
    return comb(n, i)


def _strip(ring: Ring, coeffs: Sequence) -> tuple:
    coeffs = list(coeffs)
    while coeffs and ring.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def _hashable(a) -> bool:
    try:
        hash(a)
    except TypeError:
        return False
    return True


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _split_term(term: str, var: str):
    """Split ``coef*x^k`` / ``x^k`` / ``coef`` into (coef text or None, k)."""
    pieces = _split_top(term, "*")
    if len(pieces) > 2:
        raise ParseError(f"bad term '{term}'")
    mono = re.fullmatch(rf"\s*{re.escape(var)}(?:\^(\d+))?\s*", pieces[-1])
    if mono is None:
        if len(pieces) == 2:
            raise ParseError(f"expected a power of {var} in '{term}'")
        return pieces[0].strip(), 0
    k = int(mono.group(1)) if mono.group(1) else 1
    return (pieces[0].strip() if len(pieces) == 2 else None), k
