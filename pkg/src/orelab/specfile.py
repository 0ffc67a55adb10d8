"""JSON ring-spec documents: a ring plus named endomorphisms and σ-derivations.

A document looks like::

    {
      "name": "z2xz2-swap",
      "ring": {"kind": "direct_product",
               "params": {"factors": [{"kind": "zmod", "params": {"n": 2}},
                                      {"kind": "zmod", "params": {"n": 2}}]}},
      "morphisms": [{"name": "sigma", "kind": "swap"}],
      "derivations": [{"name": "delta", "sigma": "sigma", "kind": "zero"}],
      "var": "x"
    }

``ring`` may be omitted in favour of top-level ``kind``/``params``.  Fixture
documents add ``description``, ``claim`` and ``expected``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import OrelabError, ParseError, UnsupportedSpec
from .rings import (
    DEFAULT_ORDER_CAP,
    Ring,
    RingMorphism,
    SigmaDerivation,
    build_derivation,
    build_morphism,
    build_ring,
    identity_morphism,
    zero_derivation,
)


@dataclass
class RingSpec:
    """A validated ring together with its named maps."""

    name: str
    ring: Ring
    morphisms: dict = field(default_factory=dict)
    derivations: dict = field(default_factory=dict)
    var: str = "x"
    document: dict = field(default_factory=dict)

    def sigma(self, name: str | None = None) -> RingMorphism:
        if name is None:
            return next(iter(self.morphisms.values()), None) or identity_morphism(self.ring)
        if name not in self.morphisms:
            raise UnsupportedSpec(f"no morphism named '{name}' (have {sorted(self.morphisms)})")
        return self.morphisms[name]

    def delta(self, name: str | None = None, sigma: RingMorphism | None = None) -> SigmaDerivation:
        sigma = sigma or self.sigma()
        if name is None:
            for d in self.derivations.values():
                if d.sigma is sigma:
                    return d
            return zero_derivation(self.ring, sigma)
        if name not in self.derivations:
            raise UnsupportedSpec(f"no derivation named '{name}' (have {sorted(self.derivations)})")
        d = self.derivations[name]
        if d.sigma is not sigma:
            raise UnsupportedSpec(f"derivation '{name}' belongs to morphism '{d.sigma.name}'")
        return d


def _at(location: str, fn, *args):
    """Call ``fn``; on failure keep the error type and prefix where it happened."""
    try:
        return fn(*args)
    except OrelabError as exc:
        exc.location = location
        exc.args = (f"{location}: {exc}",)
        raise


def parse_spec(doc: dict, order_cap: int = DEFAULT_ORDER_CAP) -> RingSpec:
    if not isinstance(doc, dict):
        raise ParseError("spec document must be a JSON object")
    ring_doc = doc.get("ring") or {k: doc[k] for k in ("kind", "params") if k in doc}
    if "kind" not in ring_doc:
        raise ParseError("spec: missing ring 'kind'")
    ring = _at("ring", build_ring, ring_doc, order_cap)
    morphisms: dict = {}
    for i, m in enumerate(doc.get("morphisms", [])):
        name = m.get("name", f"sigma{i}")
        morphisms[name] = _at(f"morphisms[{i}]", build_morphism, ring, m, name)
    derivations: dict = {}
    for i, d in enumerate(doc.get("derivations", [])):
        name = d.get("name", f"delta{i}")
        sname = d.get("sigma")
        if sname is None:
            sigma = next(iter(morphisms.values()), None) or identity_morphism(ring)
            if not morphisms:
                morphisms["id"] = sigma
        elif sname in morphisms:
            sigma = morphisms[sname]
        else:
            raise UnsupportedSpec(f"derivations[{i}]: unknown morphism '{sname}'")
        derivations[name] = _at(f"derivations[{i}]", build_derivation, ring, sigma, d, name)
    return RingSpec(doc.get("name", ring.name), ring, morphisms, derivations,
                    doc.get("var", "x"), doc)


def load_spec(path, order_cap: int = DEFAULT_ORDER_CAP) -> RingSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return parse_spec(doc, order_cap)
    except OrelabError as exc:
        exc.args = (f"{path}: {exc}",)
        raise


def dump_spec(spec: RingSpec) -> dict:
    """A document that rebuilds ``spec``; maps without a named kind become tables."""
    R = spec.ring
    doc = {"name": spec.name, "ring": R.spec, "var": spec.var, "morphisms": [], "derivations": []}
    for name, m in spec.morphisms.items():
        doc["morphisms"].append({"name": name, **_map_doc(R, m)})
    for name, d in spec.derivations.items():
        sname = next(k for k, v in spec.morphisms.items() if v is d.sigma)
        doc["derivations"].append({"name": name, "sigma": sname, **_map_doc(R, d)})
    return doc


def _map_doc(R, f) -> dict:
    if (f.spec and f.spec.get("kind") != "table") or not R.is_finite:
        return {"kind": f.spec["kind"], "params": f.spec.get("params", {})}
    return {"kind": "table", "params": {"images": {R.format(a): R.format(f(a)) for a in R.elements}}}
