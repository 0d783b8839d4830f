"""Deterministic transforms between amplitudes, angles, and amplified probabilities.

An amplitude ``a`` in [0, 1] is parametrized by an angle ``theta`` in
[0, pi/2] through ``a = sin^2(theta)``.  Applying ``k`` rounds of amplitude
amplification multiplies the angle by ``K = 2k + 1``, so a measurement at
depth ``k`` observes success probability ``sin^2(K * theta)``.  Inverting
that probability back to an angle is a ``K``-valued problem; the branch is
selected by the quadrant index ``l = floor(K * theta / (pi/2))``.

All functions are pure and stateless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

HALF_PI = math.pi / 2.0

#: Inputs this far outside their nominal domain are clamped; further out is an error.
DOMAIN_TOL = 1e-12


class DomainError(ValueError):
    """An argument is outside its mathematical domain beyond tolerance."""


def _clamp_unit(x: float, name: str) -> float:
    if x < -DOMAIN_TOL or x > 1.0 + DOMAIN_TOL:
        raise DomainError(f"{name}={x!r} outside [0, 1]")
    return min(1.0, max(0.0, x))


@dataclass(frozen=True)
class ThetaInterval:
    """A closed angle interval inside [0, pi/2]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= HALF_PI + DOMAIN_TOL):
            raise DomainError(f"invalid theta interval [{self.lo}, {self.hi}]")

    @property
    def radius(self) -> float:
        return 0.5 * (self.hi - self.lo)

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class ProbInterval:
    """A closed probability interval inside [0, 1]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise DomainError(f"invalid probability interval [{self.lo}, {self.hi}]")

    @property
    def radius(self) -> float:
        return 0.5 * (self.hi - self.lo)


def amplitude_to_angle(a: float) -> float:
    """Return theta = arcsin(sqrt(a)) for a in [0, 1]."""
    return math.asin(math.sqrt(_clamp_unit(a, "a")))


def angle_to_amplitude(theta: float) -> float:
    """Return a = sin^2(theta)."""
    return math.sin(theta) ** 2


def amplified_probability(theta: float, k: int) -> float:
    """Success probability sin^2((2k+1) * theta) after k amplification rounds."""
    return math.sin((2 * k + 1) * theta) ** 2


def quadrant_of(x: float) -> int:
    """Index of the [0, pi/2) quadrant containing angle x >= 0.

    Exact multiples of pi/2 are assigned to the lower quadrant, so that
    e.g. theta = pi/2 at depth K maps to index K - 1, keeping the index
    inside [0, K - 1].
    """
    r = x / HALF_PI
    q = math.floor(r)
    if q > 0 and r == q:
        q -= 1
    return q


def quadrant_index(theta: float, K: int) -> int:
    """Quadrant index floor(K * theta / (pi/2)) of the amplified angle."""
    if K < 1 or K % 2 == 0:
        raise DomainError(f"K={K} must be odd and positive")
    return quadrant_of(K * theta)


def branch_angle(p: float, K: int, l: int) -> float:
    """Invert p = sin^2(K * theta) on the branch with quadrant index l.

    Even l uses the arcsin branch, odd l the arccos branch; the result lies
    in [l, l+1] * (pi/2) / K.
    """
    if not 0 <= l <= K - 1:
        raise DomainError(f"quadrant index l={l} outside [0, {K - 1}]")
    root = math.sqrt(_clamp_unit(p, "p"))
    if l % 2 == 0:
        return (math.asin(root) + l * HALF_PI) / K
    return (math.acos(root) + l * HALF_PI) / K


def invert_amplified(p_interval: ProbInterval, K: int, l: int) -> ThetaInterval:
    """Map a probability interval for sin^2(K * theta) back to a theta interval.

    On odd branches the inverse map is decreasing, so the endpoints swap to
    keep lo <= hi.
    """
    a = branch_angle(p_interval.lo, K, l)
    b = branch_angle(p_interval.hi, K, l)
    if l % 2 == 1:
        a, b = b, a
    return ThetaInterval(min(a, b), max(a, b))


def slot_index(offset: float, base: int) -> int:
    """Index of the width-(pi/2)/base reference slot containing an in-quadrant offset."""
    width = HALF_PI / base
    r = offset / width
    j = math.floor(r)
    if j > 0 and r == j:
        j -= 1
    return min(j, base - 1)


@dataclass(frozen=True)
class ContainmentReport:
    """Feasibility of scaling a theta interval by an odd factor K.

    ``feasible`` means [K*lo, K*hi] stays inside one quadrant.  When
    reference bases are monitored, ``slots[b]`` gives the index of the
    width-(pi/2)/b slot fully containing the scaled interval, or None.
    """

    feasible: bool
    quadrant: int
    slots: dict[int, int | None]


def containment_check(
    interval: ThetaInterval, K: int, bases: tuple[int, ...] = ()
) -> ContainmentReport:
    """Check whether the K-scaled interval fits in one quadrant and, per base,
    in one reference slot of that quadrant."""
    lo = K * interval.lo
    hi = K * interval.hi
    q_lo = quadrant_of(lo)
    q_hi = quadrant_of(hi)
    feasible = q_lo == q_hi
    slots: dict[int, int | None] = {}
    for b in bases:
        if not feasible:
            slots[b] = None
            continue
        off_lo = lo - q_lo * HALF_PI
        off_hi = hi - q_lo * HALF_PI
        j = slot_index(off_lo, b)
        slots[b] = j if off_hi <= (j + 1) * (HALF_PI / b) else None
    return ContainmentReport(feasible=feasible, quadrant=q_lo, slots=slots)
