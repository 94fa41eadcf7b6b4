"""Integer arithmetic primitives shared by every other module.

Python integers are arbitrary precision already, so most of this is thin,
checked wrappers.  The one genuinely fiddly piece is an exact floor of
(ln n)^2, which drives the default Monte Carlo sample size and must round
the same way on every platform.
"""

from __future__ import annotations

import math

from mpmath import mp

from .errors import DomainError

# escalate precision whenever (ln n)^2 lands this close to an integer
_NEAR_INTEGER_BITS = 30
_MAX_PRECISION = 1 << 16


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus by square-and-multiply."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if base < 0 or exponent < 0:
        raise DomainError("base and exponent must be non-negative")
    return pow(base, exponent, modulus)


def gcd(a: int, b: int) -> int:
    """Greatest common divisor; gcd(0, 0) is rejected."""
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    if a < 0 or b < 0:
        raise DomainError("arguments must be non-negative")
    return math.gcd(a, b)


def natural_log_squared_floor(n: int) -> int:
    """Exact floor((ln n)^2) for any integer n >= 3.

    Evaluates in extended precision and escalates whenever the value is
    within 2^-30 of an integer, so the floor provably lands on the right
    side.  (ln n)^2 is irrational for integer n >= 2, so escalation
    terminates; the hard cap below is pure paranoia.
    """
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    precision = 96
    while precision <= _MAX_PRECISION:
        with mp.workprec(precision):
            value = mp.log(n) ** 2
            floored = int(mp.floor(value))
            gap = min(value - floored, floored + 1 - value)
            if gap > mp.mpf(2) ** -_NEAR_INTEGER_BITS:
                return floored
        precision *= 2
    raise ArithmeticError(f"(ln {n})^2 is too close to an integer to resolve")
