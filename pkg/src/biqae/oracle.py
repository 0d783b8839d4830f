"""Exact Bernoulli simulation of measuring an amplified circuit.

The simulated circuit collapses k amplification rounds into a single
rotation by the amplified angle, so a measurement is a Bernoulli draw with
success probability sin^2((2k+1) * theta).  A ledger tracks every batch of
shots for oracle-call accounting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import angles


@dataclass(frozen=True)
class LedgerEntry:
    k: int
    n_shots: int

    @property
    def K(self) -> int:
        return 2 * self.k + 1


@dataclass
class ShotLedger:
    """Per-depth shot counts with totals under several weighting conventions."""

    entries: list[LedgerEntry] = field(default_factory=list)

    def record(self, k: int, n_shots: int) -> None:
        self.entries.append(LedgerEntry(k, n_shots))

    def total(self, convention: str) -> int:
        """Total weighted shots.

        ``k_weighted`` counts each shot with weight max(k, 1) so that
        unamplified estimators remain visible on the same axis;
        ``K_weighted`` uses the strict oracle-access count 2k+1;
        ``shots_only`` ignores depth.
        """
        if convention == "k_weighted":
            return sum(max(e.k, 1) * e.n_shots for e in self.entries)
        if convention == "K_weighted":
            return sum(e.K * e.n_shots for e in self.entries)
        if convention == "shots_only":
            return sum(e.n_shots for e in self.entries)
        raise ValueError(f"unknown weighting convention {convention!r}")

    @property
    def max_k(self) -> int:
        return max((e.k for e in self.entries), default=0)

    def max_depth(self, depth_a: int = 1, depth_q: int = 2) -> int:
        """Deepest simulated circuit: depth(A) + k_max * depth(Q)."""
        return depth_a + self.max_k * depth_q

    def extend(self, other: "ShotLedger") -> None:
        self.entries.extend(other.entries)


class AmplitudeOracle:
    """Bernoulli sampler for a fixed hidden angle.

    The same seed always reproduces the same shot sequence; each oracle
    instance is single-consumer.
    """

    def __init__(self, theta_true: float, seed) -> None:
        if not 0.0 <= theta_true <= angles.HALF_PI:
            raise ValueError(f"theta_true={theta_true} outside [0, pi/2]")
        self.theta_true = theta_true
        self._rng = np.random.default_rng(seed)
        self.ledger = ShotLedger()

    @classmethod
    def for_amplitude(cls, a: float, seed) -> "AmplitudeOracle":
        return cls(angles.amplitude_to_angle(a), seed)

    def sample_shots(self, k: int, n: int) -> int:
        """Draw n shots at amplification depth k; returns the success count."""
        if n < 1:
            raise ValueError(f"shot count n={n} must be >= 1")
        p = angles.amplified_probability(self.theta_true, k)
        successes = int(self._rng.binomial(n, p))
        self.ledger.record(k, n)
        return successes
