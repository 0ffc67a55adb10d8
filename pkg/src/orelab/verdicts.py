"""Decider outcomes and their serialization."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .ore import SkewPolynomial

REPORT_SCHEMA_VERSION = "1"

# witness keys holding plain integers (degrees, positions) rather than ring elements
INDEX_KEYS = frozenset({"i", "j", "k", "l", "n", "side", "part", "reason"})
# witness keys holding lists of ring elements or polynomials
COLLECTION_KEYS = frozenset({"generators", "annihilator", "A", "coefficients"})


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_UP_TO_BOUND = "holds-up-to-bound"


# modes, weakest claim last
EXHAUSTIVE, BOUNDED, WITNESS, SAMPLED = "exhaustive", "bounded", "witness", "sampled"


@dataclass
class PropertyVerdict:
    property: str
    status: Status
    witness: dict | None = None
    bounds: dict = field(default_factory=dict)
    mode: str = EXHAUSTIVE
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status == Status.FAILS and not self.witness:
            raise ValueError("a failing verdict needs a witness")
        if self.status == Status.HOLDS and self.mode != EXHAUSTIVE:
            raise ValueError("only exhaustive checks may report 'holds'")

    @property
    def holds(self) -> bool:
        """True unless a counterexample was found."""
        return self.status != Status.FAILS

    @property
    def fails(self) -> bool:
        return self.status == Status.FAILS

    @property
    def sampled(self) -> bool:
        return self.mode == SAMPLED

    def render_witness(self, ring) -> dict | None:
        if self.witness is None:
            return None
        return {k: render_value(ring, v, k) for k, v in self.witness.items()}

    def to_record(self, ring, timings: bool = True) -> dict:
        rec = {
            "property": self.property,
            "status": self.status.value,
            "mode": self.mode,
            "witness": self.render_witness(ring),
            "bounds": dict(self.bounds),
        }
        if timings:
            rec["elapsed"] = round(self.elapsed, 6)
        return rec

    def line(self, ring) -> str:
        bounds = ", ".join(f"{k}={v}" for k, v in sorted(self.bounds.items()))
        out = f"{self.property}: {self.status.value} [{self.mode}{'; ' + bounds if bounds else ''}]"
        w = self.render_witness(ring)
        if w:
            out += "  witness: " + ", ".join(f"{k}={v}" for k, v in w.items())
        return out


def render_value(ring, v, key: str = ""):
    if key in INDEX_KEYS:
        return v
    if isinstance(v, SkewPolynomial):
        return str(v)
    if key in COLLECTION_KEYS:
        return [render_value(ring, x) for x in v]
    return ring.format(v)
