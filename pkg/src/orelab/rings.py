"""Unital rings, ring endomorphisms and sigma-derivations.

Finite rings are stored as dense operation tables over element indices
``0..n-1``; structured rings (``Z2[x]`` and the ``Z ⋉ Q`` trivial
extension) carry exact arithmetic but cannot be enumerated.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .errors import (
    AxiomViolation,
    NotADerivation,
    NotAHomomorphism,
    NotEnumerable,
    ParseError,
    UnsupportedSpec,
)

FINITE = "finite-enumerable"
STRUCTURED = "structured-infinite"

DEFAULT_ORDER_CAP = 16


class Ring:
    """Common interface: ``add``, ``mul``, ``neg``, ``zero``, ``one``."""

    carrier_kind = STRUCTURED
    name = "ring"
    spec: dict | None = None

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def sum(self, items: Iterable):
        acc = self.zero
        for item in items:
            acc = self.add(acc, item)
        return acc

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.carrier_kind == FINITE

    @property
    def elements(self) -> list:
        raise NotEnumerable(f"{self.name} is not finite-enumerable")

    def sample_elements(self, bound: int | None = None) -> list:
        """Elements used for sampled validation and witness-mode searches."""
        return self.elements

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FiniteRing(Ring):
    """A ring given by addition and multiplication tables on indices."""

    carrier_kind = FINITE

    def __init__(
        self,
        labels: Sequence[str],
        add_table,
        mul_table,
        zero: int,
        one: int,
        name: str = "R",
        spec: dict | None = None,
        order_cap: int = DEFAULT_ORDER_CAP,
        validate: bool = True,
    ):
        n = len(labels)
        if n == 0:
            raise UnsupportedSpec("a ring needs at least one element")
        if n > order_cap:
            raise UnsupportedSpec(f"ring order {n} exceeds the order cap {order_cap}")
        if len(set(labels)) != n:
            raise UnsupportedSpec("element labels must be distinct")
        self.labels = [str(s) for s in labels]
        self.name = name
        self.spec = spec
        self.order = n
        self.add_table = np.asarray(add_table, dtype=np.int64).reshape(n, n)
        self.mul_table = np.asarray(mul_table, dtype=np.int64).reshape(n, n)
        for tab in (self.add_table, self.mul_table):
            if tab.min() < 0 or tab.max() >= n:
                raise UnsupportedSpec("table entries must be element indices")
        self.zero = int(zero)
        self.one = int(one)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        neg = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.flatnonzero(self.add_table[a] == self.zero)
            if len(hits):
                neg[a] = hits[0]
        self.neg_table = neg
        if validate:
            validate_ring_axioms(self)
        self.neg_table.setflags(write=False)
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    @property
    def elements(self) -> list:
        return list(range(self.order))

    def format(self, a) -> str:
        return self.labels[a]

    def parse(self, text: str):
        key = text.strip().replace(" ", "")
        if key in self._index:
            return self._index[key]
        if key.startswith("(") and key.endswith(")") and key[1:-1] in self._index:
            return self._index[key[1:-1]]
        raise ParseError(f"'{text}' is not an element of {self.name}")

    def __len__(self):
        return self.order


def _first_false(mask: np.ndarray):
    bad = np.argwhere(~mask)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def validate_ring_axioms(ring: FiniteRing) -> None:
    """Check every ring law by exhaustion over all triples."""
    A, M, n = ring.add_table, ring.mul_table, ring.order
    idx = np.arange(n)
    z, o = ring.zero, ring.one
    lab = lambda *xs: tuple(ring.labels[x] for x in xs)

    if ring.neg_table.min() < 0:
        bad = int(np.flatnonzero(ring.neg_table < 0)[0])
        raise AxiomViolation("additive inverse", lab(bad))
    laws2 = [
        ("additive commutativity", A == A.T),
        ("additive identity", (A[z] == idx)[None, :] & (A[:, z] == idx)[:, None]),
        ("multiplicative identity", (M[o] == idx)[None, :] & (M[:, o] == idx)[:, None]),
    ]
    for law, mask in laws2:
        w = _first_false(np.broadcast_to(mask, (n, n)))
        if w is not None:
            raise AxiomViolation(law, lab(*w))
    a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    laws3 = [
        ("additive associativity", A[A[a, b], c] == A[a, A[b, c]]),
        ("multiplicative associativity", M[M[a, b], c] == M[a, M[b, c]]),
        ("left distributivity", M[a, A[b, c]] == A[M[a, b], M[a, c]]),
        ("right distributivity", M[A[a, b], c] == A[M[a, c], M[b, c]]),
    ]
    for law, mask in laws3:
        w = _first_false(mask)
        if w is not None:
            raise AxiomViolation(law, lab(*w))
    if n > 1 and z == o:
        raise AxiomViolation("one != zero", lab(z))


def ring_from_ops(elements: Sequence, add: Callable, mul: Callable, zero, one,
                  fmt: Callable = str, name: str = "R", spec: dict | None = None,
                  order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Tabulate a finite ring from Python-level operations on its elements."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    try:
        add_t = [[index[add(x, y)] for y in elements] for x in elements]
        mul_t = [[index[mul(x, y)] for y in elements] for x in elements]
    except KeyError as exc:
        raise UnsupportedSpec(f"operation leaves the carrier: {exc}") from None
    ring = FiniteRing([fmt(e) for e in elements], add_t, mul_t, index[zero], index[one],
                      name=name, spec=spec, order_cap=order_cap)
    ring.raw = elements
    return ring


# -- finite constructors -----------------------------------------------------

def zmod(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if n < 1:
        raise UnsupportedSpec("zmod needs n >= 1")
    return ring_from_ops(range(n), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n,
                         0, 1 % n, name=f"Z{n}", spec={"kind": "zmod", "params": {"n": n}},
                         order_cap=order_cap)


def _coords(orders: Sequence[int]) -> list[tuple]:
    # first coordinate varies fastest
    return [tuple(reversed(t)) for t in itertools.product(*[range(k) for k in reversed(orders)])]


def direct_product(*factors: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP,
                   spec: dict | None = None) -> FiniteRing:
    if not factors:
        raise UnsupportedSpec("direct_product needs at least one factor")
    elems = _coords([f.order for f in factors])
    ring = ring_from_ops(
        elems,
        lambda x, y: tuple(f.add(a, b) for f, a, b in zip(factors, x, y)),
        lambda x, y: tuple(f.mul(a, b) for f, a, b in zip(factors, x, y)),
        tuple(f.zero for f in factors),
        tuple(f.one for f in factors),
        fmt=lambda x: "(" + ",".join(f.format(a) for f, a in zip(factors, x)) + ")",
        name="x".join(f.name for f in factors),
        spec=spec or {"kind": "direct_product", "params": {"factors": [f.spec for f in factors]}},
        order_cap=order_cap,
    )
    ring.parts = factors
    return ring


def triangular2(diag: FiniteRing, offdiag: FiniteRing | None = None,
                action: Callable | None = None, order_cap: int = DEFAULT_ORDER_CAP,
                spec: dict | None = None) -> FiniteRing:
    """Matrices ``[[a, b], [0, a]]`` with ``a`` in ``diag`` and ``b`` in ``offdiag``.

    ``action`` maps diag elements into ``offdiag`` (a unital ring map); the
    product is ``(a, b)(a', b') = (aa', φ(a)b' + bφ(a'))``.  Without an
    explicit action the two rings must coincide, or both be ``Z_k``, ``Z_m``
    with ``m | k`` (reduction mod ``m``).
    """
    offdiag = offdiag or diag
    if action is None:
        if offdiag is diag:
            action = lambda a: a
        elif (diag.spec or {}).get("kind") == "zmod" and (offdiag.spec or {}).get("kind") == "zmod":
            k, m = diag.order, offdiag.order
            if k % m:
                raise UnsupportedSpec(f"no canonical action of Z{k} on Z{m}")
            action = lambda a: a % m
        else:
            raise UnsupportedSpec("triangular2 needs an explicit action for distinct rings")
    D, B = diag, offdiag
    elems = _coords([D.order, B.order])
    ring = ring_from_ops(
        elems,
        lambda x, y: (D.add(x[0], y[0]), B.add(x[1], y[1])),
        lambda x, y: (D.mul(x[0], y[0]),
                      B.add(B.mul(action(x[0]), y[1]), B.mul(x[1], action(y[0])))),
        (D.zero, B.zero),
        (D.one, B.zero),
        fmt=lambda x: f"[{D.format(x[0])},{B.format(x[1])}]",
        name=f"T({D.name},{B.name})",
        spec=spec or {"kind": "triangular2", "params": {"diag": D.spec, "offdiag": B.spec}},
        order_cap=order_cap,
    )
    ring.parts = (D, B)
    return ring


def upper_triangular(base: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Full upper-triangular 2x2 matrices ``[a, b; 0, c]`` over ``base``."""
    R = base
    elems = _coords([R.order] * 3)
    return ring_from_ops(
        elems,
        lambda x, y: tuple(R.add(p, q) for p, q in zip(x, y)),
        lambda x, y: (R.mul(x[0], y[0]),
                      R.add(R.mul(x[0], y[1]), R.mul(x[1], y[2])),
                      R.mul(x[2], y[2])),
        (R.zero,) * 3,
        (R.one, R.zero, R.one),
        fmt=lambda x: f"[{R.format(x[0])},{R.format(x[1])};0,{R.format(x[2])}]",
        name=f"UT2({R.name})",
        spec={"kind": "upper_triangular", "params": {"base": R.spec}},
        order_cap=order_cap,
    )


def _polymul_mod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * modulus[t]) % p
    return tuple(prod[:k])


def _is_irreducible(modulus, p):
    k = len(modulus) - 1
    for cand in itertools.product(range(p), repeat=k):
        a = tuple(cand)
        if all(x == 0 for x in a):
            continue
        # a is a zero divisor iff the quotient ring is not a field
        for cand2 in itertools.product(range(p), repeat=k):
            if any(cand2) and all(v == 0 for v in _polymul_mod(a, cand2, modulus, p)):
                return False
    return True


def gf(p: int, k: int = 1, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """The field with ``p**k`` elements, as ``Z_p[w]`` modulo the first irreducible."""
    if k == 1:
        return zmod(p, order_cap)
    for tail in itertools.product(range(p), repeat=k):
        modulus = tuple(tail) + (1,)
        if modulus[0] and _is_irreducible(modulus, p):
            break
    else:  # pragma: no cover - irreducibles always exist
        raise UnsupportedSpec(f"no irreducible of degree {k} over Z{p}")

    def fmt(a):
        terms = []
        for i, c in enumerate(a):
            if c:
                mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
                coef = "" if (c == 1 and i) else str(c)
                terms.append(coef + mono)
        return "+".join(terms) or "0"

    elems = _coords([p] * k)
    return ring_from_ops(
        elems,
        lambda x, y: tuple((u + v) % p for u, v in zip(x, y)),
        lambda x, y: _polymul_mod(x, y, modulus, p),
        (0,) * k,
        (1,) + (0,) * (k - 1),
        fmt=fmt,
        name=f"GF{p ** k}",
        spec={"kind": "gf", "params": {"p": p, "k": k}},
        order_cap=order_cap,
    )


# -- structured rings --------------------------------------------------------

class PolyMod2Ring(Ring):
    """``Z2[x]``; elements are Python ints whose bit ``k`` is the coefficient of ``x^k``."""

    carrier_kind = STRUCTURED
    zero = 0
    one = 1

    def __init__(self, sample_degree: int = 3):
        self.name = "Z2[x]"
        self.sample_degree = sample_degree
        self.spec = {"kind": "poly_mod2", "params": {"sample_degree": sample_degree}}

    def add(self, a, b):
        return a ^ b

    def neg(self, a):
        return a

    def mul(self, a, b):
        out = 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return out

    def format(self, a) -> str:
        if a == 0:
            return "0"
        terms = []
        k = 0
        while a >> k:
            if (a >> k) & 1:
                terms.append("1" if k == 0 else ("x" if k == 1 else f"x^{k}"))
            k += 1
        return "+".join(terms)

    def parse(self, text: str):
        s = text.strip().replace(" ", "")
        while s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s:
            raise ParseError("empty element")
        out = 0
        for term in s.split("+"):
            if term in ("0", "0̄"):
                continue
            if term in ("1", "1̄"):
                out ^= 1
            elif term == "x":
                out ^= 2
            elif term.startswith("x^") and term[2:].isdigit():
                out ^= 1 << int(term[2:])
            else:
                raise ParseError(f"bad Z2[x] term '{term}'")
        return out

    def sample_elements(self, bound: int | None = None) -> list:
        d = self.sample_degree if bound is None else bound
        return list(range(2 ** (d + 1)))


class IntRatTrivialExtension(Ring):
    """Matrices ``[[a, t], [0, a]]`` with ``a`` an integer and ``t`` rational.

    Elements are pairs ``(a, t)`` with ``t`` a :class:`fractions.Fraction`.
    """

    carrier_kind = STRUCTURED

    DEFAULT_SAMPLE = {
        "a": [-2, -1, 0, 1, 2],
        "t": ["0", "1", "-1", "1/2", "-1/2", "2", "3/4"],
    }

    def __init__(self, sample: dict | None = None):
        self.name = "ZxQ"
        self.zero = (0, Fraction(0))
        self.one = (1, Fraction(0))
        self.sample = sample or self.DEFAULT_SAMPLE
        self.spec = {"kind": "int_rat_triangular", "params": {"sample": self.sample}}

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def mul(self, x, y):
        return (x[0] * y[0], x[0] * y[1] + x[1] * y[0])

    def format(self, x) -> str:
        return f"[{x[0]},{x[1]}]"

    def parse(self, text: str):
        s = text.strip().replace(" ", "")
        if not (s.startswith("[") and s.endswith("]")) or s.count(",") != 1:
            raise ParseError(f"expected [a,t], got '{text}'")
        a, t = s[1:-1].split(",")
        try:
            return (int(a), Fraction(t))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def sample_elements(self, bound: int | None = None) -> list:
        return [(a, Fraction(t)) for a in self.sample["a"] for t in self.sample["t"]]


# -- morphisms and derivations -----------------------------------------------

class RingMorphism:
    """A validated ring endomorphism ``σ``.

    ``sampled`` is true when the homomorphism laws were only checked on the
    ring's sample set.  ``unital`` records whether ``σ(1) = 1``.
    """

    def __init__(self, ring: Ring, fn: Callable, name: str = "sigma",
                 spec: Any = None, injective: bool | None = None, validate: bool = True):
        self.ring = ring
        self.name = name
        self.spec = spec
        if ring.is_finite:
            table = np.array([fn(a) for a in range(ring.order)], dtype=np.int64)
            table.setflags(write=False)
            self.table = table
            self._list = table.tolist()
            self._fn = self._list.__getitem__
            self.injective = len(set(self._list)) == ring.order
            self.sampled = False
        else:
            self.table = None
            self._fn = fn
            self.injective = injective
            self.sampled = True
        if validate:
            validate_morphism(ring, self._fn, self.sampled)
        self.unital = ring.eq(self._fn(ring.one), ring.one)

    def __call__(self, a):
        return self._fn(a)

    def is_identity(self) -> bool:
        if self.table is not None:
            return bool(np.array_equal(self.table, np.arange(self.ring.order)))
        return all(self.ring.eq(self(a), a) for a in self.ring.sample_elements())

    def compose(self, other: "RingMorphism") -> "RingMorphism":
        """``self ∘ other``; validated again, which never fails for valid inputs."""
        return RingMorphism(self.ring, lambda a: self(other(a)),
                            name=f"{self.name}∘{other.name}",
                            injective=(self.injective and other.injective) or None)

    def __repr__(self):
        return f"<RingMorphism {self.name} on {self.ring.name}>"


def validate_morphism(ring: Ring, fn: Callable, sampled: bool = False) -> None:
    elems = ring.sample_elements() if (sampled or not ring.is_finite) else ring.elements
    for a, b in itertools.product(elems, repeat=2):
        if not ring.eq(fn(ring.add(a, b)), ring.add(fn(a), fn(b))):
            raise NotAHomomorphism("additive", (ring.format(a), ring.format(b)))
        if not ring.eq(fn(ring.mul(a, b)), ring.mul(fn(a), fn(b))):
            raise NotAHomomorphism("multiplicative", (ring.format(a), ring.format(b)))


class SigmaDerivation:
    """A validated additive map ``δ`` with ``δ(ab) = σ(a)δ(b) + δ(a)b``."""

    def __init__(self, ring: Ring, sigma: RingMorphism, fn: Callable, name: str = "delta",
                 spec: Any = None, validate: bool = True):
        if sigma.ring is not ring:
            raise UnsupportedSpec("derivation and morphism live on different rings")
        self.ring = ring
        self.sigma = sigma
        self.name = name
        self.spec = spec
        if ring.is_finite:
            table = np.array([fn(a) for a in range(ring.order)], dtype=np.int64)
            table.setflags(write=False)
            self.table = table
            self._list = table.tolist()
            self._fn = self._list.__getitem__
            self.sampled = False
        else:
            self.table = None
            self._fn = fn
            self.sampled = True
        if validate:
            validate_derivation(ring, sigma, self._fn, self.sampled)

    def __call__(self, a):
        return self._fn(a)

    def is_zero(self) -> bool:
        if self.table is not None:
            return bool((self.table == self.ring.zero).all())
        return all(self.ring.is_zero(self(a)) for a in self.ring.sample_elements())

    def __repr__(self):
        return f"<SigmaDerivation {self.name} on {self.ring.name}>"


def validate_derivation(ring: Ring, sigma: Callable, fn: Callable, sampled: bool = False) -> None:
    elems = ring.sample_elements() if (sampled or not ring.is_finite) else ring.elements
    for a, b in itertools.product(elems, repeat=2):
        if not ring.eq(fn(ring.add(a, b)), ring.add(fn(a), fn(b))):
            raise NotADerivation("additive", (ring.format(a), ring.format(b)))
        lhs = fn(ring.mul(a, b))
        rhs = ring.add(ring.mul(sigma(a), fn(b)), ring.mul(fn(a), b))
        if not ring.eq(lhs, rhs):
            raise NotADerivation("twisted Leibniz", (ring.format(a), ring.format(b)))


def identity_morphism(ring: Ring) -> RingMorphism:
    return RingMorphism(ring, lambda a: a, name="id", spec={"kind": "identity"}, injective=True)


def zero_derivation(ring: Ring, sigma: RingMorphism) -> SigmaDerivation:
    return SigmaDerivation(ring, sigma, lambda a: ring.zero, name="0", spec={"kind": "zero"})


def inner_derivation(ring: Ring, sigma: RingMorphism, c) -> SigmaDerivation:
    """``δ(a) = c·a − σ(a)·c``."""
    fn = lambda a: ring.sub(ring.mul(c, a), ring.mul(sigma(a), c))
    return SigmaDerivation(ring, sigma, fn, name=f"inner({ring.format(c)})",
                           spec={"kind": "inner", "params": {"c": ring.format(c)}})


# -- spec-driven builders ----------------------------------------------------

def _normalize(spec) -> dict:
    if isinstance(spec, str):
        return {"kind": spec, "params": {}}
    if not isinstance(spec, dict) or "kind" not in spec:
        raise UnsupportedSpec(f"malformed spec: {spec!r}")
    return {"kind": spec["kind"], "params": dict(spec.get("params") or {})}


def build_ring(spec, order_cap: int = DEFAULT_ORDER_CAP) -> Ring:
    """Build a ring from a spec dict such as ``{"kind": "zmod", "params": {"n": 4}}``."""
    s = _normalize(spec)
    kind, p = s["kind"], s["params"]
    try:
        if kind == "zmod":
            return zmod(int(p["n"]), order_cap)
        if kind == "gf":
            return gf(int(p["p"]), int(p.get("k", 1)), order_cap)
        if kind == "direct_product":
            factors = [build_ring(f, order_cap) for f in p["factors"]]
            if any(not f.is_finite for f in factors):
                raise UnsupportedSpec("direct_product of structured rings is not supported")
            return direct_product(*factors, order_cap=order_cap, spec=s)
        if kind == "triangular2":
            diag = build_ring(p["diag"], order_cap)
            off = build_ring(p["offdiag"], order_cap) if p.get("offdiag") else diag
            return triangular2(diag, off, order_cap=order_cap, spec=s)
        if kind == "upper_triangular":
            return upper_triangular(build_ring(p["base"], order_cap), order_cap)
        if kind == "tables":
            labels = [str(x) for x in p["elements"]]
            index = {lab: i for i, lab in enumerate(labels)}

            def tab(rows):
                return [[index[str(v)] for v in row] for row in rows]

            return FiniteRing(labels, tab(p["add"]), tab(p["mul"]), index[str(p["zero"])],
                              index[str(p["one"])], name=p.get("name", "R"), spec=s,
                              order_cap=order_cap)
        if kind == "poly_mod2":
            return PolyMod2Ring(int(p.get("sample_degree", 3)))
        if kind == "int_rat_triangular":
            return IntRatTrivialExtension(p.get("sample"))
    except (KeyError, TypeError, ValueError) as exc:
        raise UnsupportedSpec(f"bad parameters for '{kind}': {exc!r}") from None
    raise UnsupportedSpec(f"unknown ring kind '{kind}'")


def build_morphism(ring: Ring, spec, name: str | None = None) -> RingMorphism:
    s = _normalize(spec)
    kind, p = s["kind"], s["params"]
    rspec = ring.spec or {}
    rkind, rparams = rspec.get("kind"), rspec.get("params", {})
    label = name or kind

    if kind == "identity":
        m = identity_morphism(ring)
        m.name, m.spec = (name or "id"), s
        return m
    if kind == "table":
        images = p["images"]
        if isinstance(images, dict):
            lut = {ring.parse(k): ring.parse(v) for k, v in images.items()}
            if len(lut) != ring.order:
                raise UnsupportedSpec("table morphism must map every element")
            fn = lut.__getitem__
        else:
            lut = [ring.parse(v) for v in images]
            fn = lut.__getitem__
        return RingMorphism(ring, fn, name=label, spec=s)
    if kind in ("swap", "permute"):
        if rkind != "direct_product":
            raise UnsupportedSpec(f"'{kind}' needs a direct product ring")
        factors = ring.parts
        perm = p.get("perm", [1, 0] if kind == "swap" else None)
        if perm is None or sorted(perm) != list(range(len(factors))):
            raise UnsupportedSpec(f"'{kind}' needs a permutation of the {len(factors)} factors")
        if any(f.spec != factors[0].spec for f in factors):
            raise UnsupportedSpec(f"'{kind}' needs identical factors")
        # image coordinate i is source coordinate perm[i]
        return RingMorphism(ring, _coordinate_permutation(ring, perm), name=label, spec=s)
    if kind == "negate-offdiag":
        if rkind != "triangular2":
            raise UnsupportedSpec("negate-offdiag needs a triangular2 ring")
        off = ring.parts[1]
        back = {c: i for i, c in enumerate(ring.raw)}
        fn = lambda a: back[(ring.raw[a][0], off.neg(ring.raw[a][1]))]
        return RingMorphism(ring, fn, name=label, spec=s)
    if kind == "frobenius":
        if not ring.is_finite:
            raise UnsupportedSpec("frobenius needs a finite ring")
        q = int(p.get("p", rparams.get("p", 2)))

        def frob(a):
            out = ring.one
            for _ in range(q):
                out = ring.mul(out, a)
            return out

        return RingMorphism(ring, frob, name=label, spec=s)
    if kind == "halve-offdiag":
        if not isinstance(ring, IntRatTrivialExtension):
            raise UnsupportedSpec("halve-offdiag needs the integer/rational triangular ring")
        return RingMorphism(ring, lambda x: (x[0], x[1] / 2), name=label, spec=s, injective=True)
    if kind == "eval-at-zero":
        if not isinstance(ring, PolyMod2Ring):
            raise UnsupportedSpec("eval-at-zero needs Z2[x]")
        return RingMorphism(ring, lambda f: f & 1, name=label, spec=s, injective=False)
    raise UnsupportedSpec(f"unknown morphism kind '{kind}'")


def _coordinate_permutation(ring: FiniteRing, perm):
    coords = ring.raw
    back = {c: i for i, c in enumerate(coords)}
    return lambda a: back[tuple(coords[a][j] for j in perm)]


def build_derivation(ring: Ring, sigma: RingMorphism, spec, name: str | None = None) -> SigmaDerivation:
    s = _normalize(spec)
    kind, p = s["kind"], s["params"]
    if kind == "zero":
        d = zero_derivation(ring, sigma)
    elif kind == "inner":
        c = p["c"]
        d = inner_derivation(ring, sigma, ring.parse(c) if isinstance(c, str) else c)
    elif kind == "table":
        images = p["images"]
        if isinstance(images, dict):
            lut = {ring.parse(k): ring.parse(v) for k, v in images.items()}
        else:
            lut = [ring.parse(v) for v in images]
        d = SigmaDerivation(ring, sigma, lut.__getitem__, name=name or "delta", spec=s)
    else:
        raise UnsupportedSpec(f"unknown derivation kind '{kind}'")
    d.spec = s
    if name:
        d.name = name
    return d


def enumerate_idempotents(ring: Ring) -> list:
    """All ``e`` with ``e·e = e``, in carrier order."""
    if not ring.is_finite:
        raise NotEnumerable(f"{ring.name} is not finite-enumerable")
    M = ring.mul_table
    return [int(e) for e in np.flatnonzero(M[np.arange(ring.order), np.arange(ring.order)] == np.arange(ring.order))]


def power_map(fn: Callable, k: int) -> Callable:
    def apply(a):
        for _ in range(k):
            a = fn(a)
        return a
    return apply
