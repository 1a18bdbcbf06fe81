"""Exact positive reals of the form prod p^(n_p) with rational exponents n_p.

Brascamp-Lieb constants of finite data are rational powers of integers
(masses of subgroups raised to reciprocal exponents), so they live in the
multiplicative group generated by the primes with rational exponents.
Representing them as prime -> exponent maps keeps multiplication, division
and rational powers exact, and makes multiplicativity identities testable
with no floating point at all.

Comparison of two distinct values reduces to the sign of sum_p e_p*log(p),
which is never zero for a nonzero exponent vector (unique factorization),
so interval arithmetic at escalating precision always terminates in
principle; we cap the precision and surface the failure rather than guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

_START_BITS = 128
_MAX_BITS = 4096


class UndecidedComparisonError(ArithmeticError):
    """Interval comparison still straddles zero at the precision cap."""


def _factorize(n: int) -> dict[int, int]:
    if n <= 0:
        raise ValueError(f"only positive integers factorize here, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class ExactValue:
    """A positive real prod p^e_p, canonically sorted, zero exponents dropped."""

    factors: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("factors must be sorted by prime and distinct")
        if any(e == 0 for _, e in self.factors):
            raise ValueError("zero exponents must be dropped")

    # -- constructors --------------------------------------------------

    @staticmethod
    def one() -> "ExactValue":
        return ExactValue(())

    @staticmethod
    def from_rational(q) -> "ExactValue":
        q = Fraction(q)
        if q <= 0:
            raise ValueError(f"ExactValue is positive, got {q}")
        exps: dict[int, Fraction] = {}
        for p, k in _factorize(q.numerator).items():
            exps[p] = exps.get(p, Fraction(0)) + k
        for p, k in _factorize(q.denominator).items():
            exps[p] = exps.get(p, Fraction(0)) - k
        return ExactValue._from_dict(exps)

    @staticmethod
    def _from_dict(exps: dict[int, Fraction]) -> "ExactValue":
        return ExactValue(tuple(sorted((p, e) for p, e in exps.items() if e != 0)))

    # -- algebra -------------------------------------------------------

    def __mul__(self, other: "ExactValue") -> "ExactValue":
        exps = dict(self.factors)
        for p, e in other.factors:
            exps[p] = exps.get(p, Fraction(0)) + e
        return ExactValue._from_dict(exps)

    def __truediv__(self, other: "ExactValue") -> "ExactValue":
        exps = dict(self.factors)
        for p, e in other.factors:
            exps[p] = exps.get(p, Fraction(0)) - e
        return ExactValue._from_dict(exps)

    def __pow__(self, exponent) -> "ExactValue":
        r = Fraction(exponent)
        if r == 0:
            return ExactValue.one()
        return ExactValue(tuple((p, e * r) for p, e in self.factors))

    @property
    def is_one(self) -> bool:
        return not self.factors

    def as_fraction(self):
        """Return the value as a Fraction when all exponents are integers, else None."""
        if any(e.denominator != 1 for _, e in self.factors):
            return None
        out = Fraction(1)
        for p, e in self.factors:
            out *= Fraction(p) ** int(e)
        return out

    def to_float(self) -> float:
        return math.exp(sum(float(e) * math.log(p) for p, e in self.factors))

    # -- order ---------------------------------------------------------

    def _log_interval(self, bits: int):
        iv.prec = bits
        total = iv.mpf(0)
        for p, e in self.factors:
            total += iv.log(p) * e.numerator / iv.mpf(e.denominator)
        return total

    def compare(self, other: "ExactValue") -> int:
        """Return -1, 0 or 1; exact zero only for identical factor maps."""
        if self.factors == other.factors:
            return 0
        diff = self / other
        if diff.is_one:
            return 0
        bits = _START_BITS
        while bits <= _MAX_BITS:
            box = diff._log_interval(bits)
            if box.a > 0:
                return 1
            if box.b < 0:
                return -1
            bits *= 2
        raise UndecidedComparisonError(
            f"cannot separate {self} from {other} at {_MAX_BITS} bits"
        )

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __str__(self):
        if self.is_one:
            return "1"
        return " * ".join(f"{p}^({e})" for p, e in self.factors)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {"primes": {str(p): str(e) for p, e in self.factors}}

    @staticmethod
    def from_json(obj: dict) -> "ExactValue":
        exps = {int(p): Fraction(e) for p, e in obj["primes"].items()}
        return ExactValue._from_dict(exps)


def exact_max(values):
    """Argmax over ExactValues with deterministic first-wins tie handling.

    Returns (index, value, tie) where tie means some other index attains the
    same value exactly.
    """
    values = list(values)
    if not values:
        raise ValueError("exact_max of empty sequence")
    best = 0
    for i in range(1, len(values)):
        if values[i].compare(values[best]) > 0:
            best = i
    tie = any(
        i != best and values[i].compare(values[best]) == 0 for i in range(len(values))
    )
    return best, values[best], tie
