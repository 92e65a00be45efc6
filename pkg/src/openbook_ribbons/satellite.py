"""Satellites, cables and plumbings of strongly quasipositive surfaces.

Work happens on summaries (Euler characteristic, boundary count, verdict);
when a concrete companion surface is attached, a concrete output surface
with the predicted cell counts is built as well: ``n`` parallel copies of
the companion's disks and bands, plus the pattern's bands joining the
copies of the first disk.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .exceptions import (InvalidP, NegativePatternBand, NonSqpInput,
                         PreconditionViolation)
from .front import GraphFront, chains
from .geometry import cyclic_gaps
from .position import to_arc_position
from .surface import (FROM_SATELLITE, Band, BennequinSurface, bennequin_from_bands,
                      boundary_components, euler_characteristic, invariant_report,
                      ribbon_to_bennequin)


@dataclass(frozen=True)
class SurfaceSummary:
    euler_char: int
    boundary_components: Optional[int] = None
    sqp: bool = True
    slack: int = 0
    surface: Optional[BennequinSurface] = None

    def to_dict(self):
        out = {"euler_char": self.euler_char,
               "boundary_components": self.boundary_components,
               "sqp": self.sqp, "slack": self.slack}
        if self.surface is not None:
            out["surface"] = invariant_report(self.surface).to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


CompanionSummary = SurfaceSummary


def summarize(s: BennequinSurface) -> SurfaceSummary:
    r = invariant_report(s)
    return SurfaceSummary(r.euler_char, r.boundary_components, r.is_sqp,
                          r.bennequin_slack, s)


@dataclass(frozen=True)
class PatternBraid:
    """Braid in the solid torus as band generators, listed in theta order."""

    n: int
    bands: Tuple[Tuple[int, int, int], ...] = ()
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(tuple(b) for b in self.bands))
        if self.n < 1:
            raise PreconditionViolation("a pattern needs at least one strand")
        for i, j, sg in self.bands:
            if not 0 <= i < j < self.n:
                raise PreconditionViolation(f"band ({i}, {j}) needs 0 <= i < j < n")
            if sg not in (1, -1):
                raise PreconditionViolation("band sign must be +1 or -1")

    @property
    def k(self) -> int:
        return len(self.bands)

    def surface(self) -> BennequinSurface:
        """Its own Bennequin surface on the disk open book."""
        m = len(self.bands)
        return bennequin_from_bands(
            self.n, [(Fraction(t + 1, m + 1), i, j, sg)
                     for t, (i, j, sg) in enumerate(self.bands)])


def torus_pattern(p: int, q: int) -> PatternBraid:
    """``(s_1 ... s_{p-1})^|q|`` with every band of sign ``sign(q)``."""
    if p < 1:
        raise InvalidP(f"p must be at least 1, got {p}")
    sg = 1 if q >= 0 else -1
    bands = [(i, i + 1, sg) for _ in range(abs(q)) for i in range(p - 1)]
    return PatternBraid(p, tuple(bands))


def _realize(pattern: PatternBraid, r: BennequinSurface) -> BennequinSurface:
    n, d = pattern.n, r.d
    thetas = sorted(b.theta for b in r.bands)
    gaps = cyclic_gaps(thetas) if thetas else [Fraction(1)]
    step = min(gaps) / (4 * n)
    disks = []
    for c in range(n):
        for t, z in r.disks:
            same = sorted(z2 for t2, z2 in r.disks if t2 == t)
            zg = min(cyclic_gaps(same)) / (2 * n)
            disks.append((t, z + c * zg))
    bands = []
    for c in range(n):
        for b in r.bands:
            bands.append(Band(b.theta + c * step, c * d + b.i, c * d + b.j, b.sign))
    # pattern bands inside the widest gap between companion band angles
    if thetas:
        k_gap = max(range(len(gaps)), key=lambda x: gaps[x])
        lo = thetas[k_gap] + gaps[k_gap] / 2
        width = gaps[k_gap] / 4
    else:
        lo, width = Fraction(0), Fraction(1)
    m = pattern.k
    for t, (i, j, sg) in enumerate(pattern.bands):
        bands.append(Band(lo + width * Fraction(t + 1, m + 1), i * d, j * d, sg))
    return BennequinSurface(tuple(disks), tuple(bands), FROM_SATELLITE)


def satellite(pattern: PatternBraid, companion: SurfaceSummary) -> SurfaceSummary:
    """Satellite of a strongly quasipositive pattern on an sqp companion."""
    if any(sg < 0 for _, _, sg in pattern.bands):
        raise NegativePatternBand("the pattern must be strongly quasipositive")
    if not companion.sqp:
        raise NonSqpInput("the companion must be strongly quasipositive")
    if pattern.n == 1 and pattern.k == 0:
        return companion
    chi = pattern.n * companion.euler_char - pattern.k
    if companion.surface is None:
        return SurfaceSummary(chi, None, True, 0, None)
    s = _realize(pattern, companion.surface)
    return SurfaceSummary(chi, boundary_components(s), True, 0, s)


def cable(p: int, q: int, companion: SurfaceSummary):
    """The ``(p, q)``-cable; returns ``(summary, verdict)``.

    The verdict is ``q >= 0``.  For ``q < 0`` the summary reports the slack
    ``2 |q| (p - 1)`` of the cabled surface.
    """
    if not isinstance(p, int) or p < 1:
        raise InvalidP(f"p must be a positive integer, got {p}")
    if not companion.sqp:
        raise NonSqpInput("the companion must be strongly quasipositive")
    verdict = q >= 0
    pattern = torus_pattern(p, q)
    chi = p * companion.euler_char - pattern.k
    slack = 0 if verdict else 2 * pattern.k
    if p == 1:
        surf = companion.surface
        bc = companion.boundary_components
    elif companion.surface is not None:
        surf = _realize(pattern, companion.surface)
        bc = boundary_components(surf)
    else:
        surf, bc = None, None
    return SurfaceSummary(chi, bc, verdict, slack, surf), verdict


def plumb(r1: SurfaceSummary, r2: SurfaceSummary) -> SurfaceSummary:
    """Plumbing along one square: the Euler characteristics add, minus one."""
    if not (r1.sqp and r2.sqp):
        raise NonSqpInput("plumbing needs two strongly quasipositive summaries")
    return SurfaceSummary(r1.euler_char + r2.euler_char - 1, None, True, 0, None)


def quasipositive_annulus(knot_front: GraphFront, epsilon="auto") -> BennequinSurface:
    """Ribbon of a Legendrian knot, as a Bennequin surface (an annulus)."""
    if knot_front.vertices:
        raise PreconditionViolation("a knot front has no graph vertices")
    cs = chains(knot_front)
    if len(cs) != 1 or not cs[0].closed:
        raise PreconditionViolation("the front must have exactly one closed component")
    arc, _ = to_arc_position(knot_front, epsilon)
    s = ribbon_to_bennequin(arc)
    if euler_characteristic(s) != 0 or boundary_components(s) != 2:
        raise PreconditionViolation("the ribbon is not an annulus")
    return s
