"""Seeded Monte Carlo classification.

detect_carmichael_composite assumes its input is composite and separates
Carmichael numbers from other composites: draw t bases with replacement
from {1, ..., n-1}, mark the Fermat witnesses, and either the marked
proportion stays under the threshold (Carmichael) or the marked bases are
scanned for one coprime to n (a non-trivial witness proves "other
composite"; none found means Carmichael).

detect_carmichael_general runs the same sampling on arbitrary n >= 2 and,
when the outcome lands on the Carmichael side, splits it with the
deterministic primality test: Carmichael numbers and primes are exactly
the n without non-trivial witnesses.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .arith import natural_log_squared_floor
from .errors import DomainError
from .factoring import prime_check
from .randutil import uniform_below

SEED_MASK = (1 << 64) - 1
DEFAULT_THRESHOLD = Fraction(45, 100)

SAMPLING_WITH_REPLACEMENT = "WithReplacement"


class Label(Enum):
    CARMICHAEL = "Carmichael"
    OTHER_COMPOSITE = "OtherComposite"
    PRIME = "Prime"


class Basis(Enum):
    PROPORTION_BELOW_THRESHOLD = "ProportionBelowThreshold"
    NO_NON_TRIVIAL_WITNESS_FOUND = "NoNonTrivialWitnessFound"
    NON_TRIVIAL_WITNESS_FOUND = "NonTrivialWitnessFound"
    DETERMINISTIC_PRIMALITY = "DeterministicPrimality"


def default_sample_size(n: int) -> int:
    """floor((ln n)^2), clamped to at least one draw."""
    if n < 3:
        return 1
    return max(1, natural_log_squared_floor(n))


def derive_seed(seed: int, n: int) -> int:
    """Independent per-n seed for batch campaigns over ranges."""
    return (seed ^ n) & SEED_MASK


@dataclass(frozen=True)
class DetectorConfig:
    t_override: int | None = None          # default: floor((ln n)^2)
    threshold: Fraction = DEFAULT_THRESHOLD
    rng_seed: int = 0
    sampling: str = SAMPLING_WITH_REPLACEMENT

    def __post_init__(self):
        if self.t_override is not None and self.t_override < 1:
            raise DomainError(f"t must be >= 1, got {self.t_override}")
        if not 0 < self.threshold < 1:
            raise DomainError(f"threshold must lie in (0, 1), got {self.threshold}")
        if self.sampling != SAMPLING_WITH_REPLACEMENT:
            raise DomainError(f"unsupported sampling mode {self.sampling!r}")

    def sample_size(self, n: int) -> int:
        return self.t_override if self.t_override is not None else default_sample_size(n)


@dataclass(frozen=True)
class Verdict:
    n: int
    label: Label
    basis: Basis
    sample_size: int
    witnesses_found: int
    evidence: tuple[int, int] | None  # (a, gcd(a, n)) exhibiting a coprime witness
    threshold: Fraction
    seed: int

    def __post_init__(self):
        if self.witnesses_found > self.sample_size:
            raise DomainError("witnesses_found cannot exceed sample_size")
        if self.label is Label.OTHER_COMPOSITE and self.evidence is None:
            raise DomainError("OtherComposite requires witness evidence")

    def to_json_dict(self) -> dict:
        return {"n": self.n, "label": self.label.value, "basis": self.basis.value,
                "t": self.sample_size,
                "threshold": f"{self.threshold.numerator}/{self.threshold.denominator}",
                "witnesses_found": self.witnesses_found,
                "evidence_a": self.evidence[0] if self.evidence else None,
                "seed": self.seed}


def _sample_witnesses(n: int, cfg: DetectorConfig) -> tuple[int, list[int]]:
    t = cfg.sample_size(n)
    rng = random.Random(cfg.rng_seed)
    exponent = n - 1
    witnesses = []
    for _ in range(t):
        a = 1 + uniform_below(rng, n - 1)
        if pow(a, exponent, n) != 1:
            witnesses.append(a)
    return t, witnesses


def detect_carmichael_composite(n: int, cfg: DetectorConfig | None = None) -> Verdict:
    """Classify a composite n as Carmichael or OtherComposite.

    The caller is responsible for compositeness: a prime input cannot be
    flagged here (primes have no witnesses at all) and will come back
    labeled Carmichael.
    """
    if n < 4:
        raise DomainError(f"composite classification needs n >= 4, got {n}")
    cfg = cfg or DetectorConfig()
    t, witnesses = _sample_witnesses(n, cfg)
    common = dict(n=n, sample_size=t, witnesses_found=len(witnesses),
                  threshold=cfg.threshold, seed=cfg.rng_seed)
    if Fraction(len(witnesses), t) < cfg.threshold:
        return Verdict(label=Label.CARMICHAEL,
                       basis=Basis.PROPORTION_BELOW_THRESHOLD,
                       evidence=None, **common)
    for a in witnesses:
        g = math.gcd(a, n)
        if g == 1:
            return Verdict(label=Label.OTHER_COMPOSITE,
                           basis=Basis.NON_TRIVIAL_WITNESS_FOUND,
                           evidence=(a, g), **common)
    return Verdict(label=Label.CARMICHAEL,
                   basis=Basis.NO_NON_TRIVIAL_WITNESS_FOUND,
                   evidence=None, **common)


def detect_carmichael_general(n: int, cfg: DetectorConfig | None = None) -> Verdict:
    """Classify any n >= 2 as Prime, Carmichael, or OtherComposite.

    Same sampling phase as the composite-only detector; only when the
    outcome lands on the {Carmichael, Prime} side does the deterministic
    primality test run to split the two, preserving the cheap path for
    everything a witness already settles.
    """
    if n < 2:
        raise DomainError(f"classification needs n >= 2, got {n}")
    cfg = cfg or DetectorConfig()
    t, witnesses = _sample_witnesses(n, cfg)
    common = dict(n=n, sample_size=t, witnesses_found=len(witnesses),
                  threshold=cfg.threshold, seed=cfg.rng_seed)
    carmichael_side_basis = None
    if Fraction(len(witnesses), t) < cfg.threshold:
        carmichael_side_basis = Basis.PROPORTION_BELOW_THRESHOLD
    else:
        evidence = None
        for a in witnesses:
            g = math.gcd(a, n)
            if g == 1:
                evidence = (a, g)
                break
        if evidence is not None:
            return Verdict(label=Label.OTHER_COMPOSITE,
                           basis=Basis.NON_TRIVIAL_WITNESS_FOUND,
                           evidence=evidence, **common)
        carmichael_side_basis = Basis.NO_NON_TRIVIAL_WITNESS_FOUND
    if prime_check(n).is_prime:
        return Verdict(label=Label.PRIME, basis=Basis.DETERMINISTIC_PRIMALITY,
                       evidence=None, **common)
    return Verdict(label=Label.CARMICHAEL, basis=carmichael_side_basis,
                   evidence=None, **common)
