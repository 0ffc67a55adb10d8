"""Decide ring-theoretic properties of finite rings and their Ore extensions ``R[x; σ, δ]``."""
from .checks import PROPERTY_NAMES, decide, replay_witness
from .ore import OreExtension, SkewPolynomial
from .rings import (
    FiniteRing,
    RingMorphism,
    SigmaDerivation,
    build_derivation,
    build_morphism,
    build_ring,
)
from .verdicts import PropertyVerdict, Status

__all__ = [
    "PROPERTY_NAMES", "decide", "replay_witness", "OreExtension", "SkewPolynomial",
    "FiniteRing", "RingMorphism", "SigmaDerivation", "build_ring", "build_morphism",
    "build_derivation", "PropertyVerdict", "Status",
]
