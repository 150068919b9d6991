"""Boundary behaviour of the extremal potential from the root multiplicity at each endpoint."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.rational import fmt
from ..algebra.roots import isolate_roots, positivity_report
from .boundary import ENDPOINTS, AmbitoricData, FormalSolution


@dataclass(frozen=True)
class Cone:
    """Cone angle ``2π · turns``."""

    turns: Fraction
    model: str = "l log l"

    @property
    def name(self) -> str:
        return "Cone"

    def to_json(self) -> dict:
        return {"type": "Cone", "angle_over_2pi": fmt(self.turns), "model": self.model}


@dataclass(frozen=True)
class PoincareType:
    model: str = "-a log l"

    @property
    def name(self) -> str:
        return "PoincareType"

    def to_json(self) -> dict:
        return {"type": "PoincareType", "model": self.model}


@dataclass(frozen=True)
class CuspThreeHalves:
    model: str = "a/l"

    @property
    def name(self) -> str:
        return "CuspThreeHalves"

    def to_json(self) -> dict:
        return {"type": "CuspThreeHalves", "model": self.model}


SingularityType = Cone | PoincareType | CuspThreeHalves


def root_multiplicity(p, z, lo, hi) -> int:
    """Multiplicity of the root ``z`` of ``p``, read off the exact isolation on ``[lo, hi]``."""
    for r in isolate_roots(p, lo, hi):
        if r.exact and r.lo == z:
            return r.multiplicity
    return 0


def classify_asymptotics(fs: FormalSolution, d: AmbitoricData) -> dict[str, SingularityType]:
    out: dict[str, SingularityType] = {}
    for name, poly, lo, hi in (("A", fs.A, d.alpha0, d.alpha_inf), ("B", fs.B, d.beta0, d.beta_inf)):
        positive, zero = positivity_report(poly, lo, hi)
        if zero:
            raise ValueError(f"{name} vanishes identically: no opposite-endpoint vanishing")
        if not positive:
            raise ValueError(f"{name} is not positive on the open interval")
    for name, weight in zip(ENDPOINTS, d.weights):
        poly, lo, hi = (fs.A, d.alpha0, d.alpha_inf) if name.startswith("alpha") else (fs.B, d.beta0, d.beta_inf)
        z = getattr(d, name)
        m = root_multiplicity(poly, z, lo, hi)
        if m == 1:
            out[name] = Cone(weight)
        elif m == 2:
            out[name] = PoincareType()
        elif m == 3:
            out[name] = CuspThreeHalves()
        else:
            # m == 0 contradicts the boundary conditions; m >= 4 forces A or B ≡ 0 for a quartic
            raise AssertionError(f"root of multiplicity {m} at {name}")
    return out
