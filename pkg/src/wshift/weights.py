"""Weight sequences of unilateral weighted shifts, stored as squared weights.

Every quantity the positivity tests consume (moments, Hankel entries, the
u/v/w sequences) depends on the weights only through their squares, so a
sequence is kept as ``s_n = alpha_n**2``. Back-step parameters are squared
weights too: ``backstep(w, x)`` prepends the weight ``sqrt(x)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .exactmath import Poly, as_fraction

if TYPE_CHECKING:
    from .measures import Measure

__all__ = [
    "InvalidWeights",
    "TailUndefined",
    "TailRule",
    "ConstantTail",
    "RationalFunctionTail",
    "MeasureTail",
    "SchurTail",
    "PacketTail",
    "WeightSequenceSq",
    "weight_sq",
    "moment",
    "backstep",
    "schur",
    "packet",
    "power_decompose",
    "bergman",
    "constant",
]


class InvalidWeights(ValueError):
    """A squared weight is zero, negative or undefined."""


class TailUndefined(InvalidWeights):
    pass


class TailRule:
    """Squared weights ``s_n`` for indices past the explicit prefix.

    ``n`` is always the absolute index in the owning sequence.
    """

    def value(self, n: int) -> Fraction:
        raise NotImplementedError

    def shifted(self, by: int) -> TailRule:
        """The rule seen after prepending ``by`` weights."""
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantTail(TailRule):
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        if self.c <= 0:
            raise InvalidWeights(f"constant squared weight {self.c} is not positive")

    def value(self, n):
        return self.c

    def shifted(self, by):
        return self


@dataclass(frozen=True)
class RationalFunctionTail(TailRule):
    """``s_n = p(n - offset) / q(n - offset)`` with ``p``, ``q`` in ``n``."""

    p: Poly
    q: Poly
    offset: int = 0

    def __post_init__(self):
        if self.q.is_zero() or self.p.is_zero():
            raise InvalidWeights("rational tail needs nonzero numerator and denominator")
        if self.p.degree > self.q.degree:
            raise InvalidWeights("rational tail is unbounded (deg p > deg q)")
        if self.p.degree == self.q.degree and self.p.lc / self.q.lc <= 0:
            raise InvalidWeights("rational tail has nonpositive limit")
        if self.p.degree < self.q.degree and self.p.lc / self.q.lc < 0:
            raise InvalidWeights("rational tail is eventually negative")

    def value(self, n):
        m = n - self.offset
        den = self.q(m)
        if den == 0:
            raise InvalidWeights(f"rational tail has a pole at n={n}")
        s = self.p(m) / den
        if s <= 0:
            raise InvalidWeights(f"rational tail gives s_{n} = {s} <= 0")
        return s

    def shifted(self, by):
        return RationalFunctionTail(self.p, self.q, self.offset + by)


@dataclass(frozen=True, eq=False)
class MeasureTail(TailRule):
    """``s_n = gamma_{m+1} / gamma_m`` with ``m = n - offset`` and
    ``gamma`` the moments of ``measure``."""

    measure: "Measure"
    offset: int = 0

    def value(self, n):
        m = n - self.offset
        lower = self.measure.moment(m)
        if lower == 0:
            raise TailUndefined(f"moment {m} of the measure vanishes")
        return self.measure.moment(m + 1) / lower

    def shifted(self, by):
        return MeasureTail(self.measure, self.offset + by)


@dataclass(frozen=True, eq=False)
class SchurTail(TailRule):
    left: "WeightSequenceSq"
    right: "WeightSequenceSq"
    offset: int = 0

    def value(self, n):
        m = n - self.offset
        return self.left.weight_sq(m) * self.right.weight_sq(m)

    def shifted(self, by):
        return SchurTail(self.left, self.right, self.offset + by)


@dataclass(frozen=True, eq=False)
class PacketTail(TailRule):
    base: "WeightSequenceSq"
    length: int
    start: int
    offset: int = 0

    def value(self, n):
        j = n - self.offset
        first = self.length * j + self.start
        out = Fraction(1)
        for m in range(self.length):
            out *= self.base.weight_sq(first + m)
        return out

    def shifted(self, by):
        return PacketTail(self.base, self.length, self.start, self.offset + by)


class WeightSequenceSq:
    """A positive bounded weight sequence given by squared weights.

    ``prefix`` lists the first squared weights explicitly; ``tail`` supplies
    the rest. Moments ``gamma_n`` are memoized in an append-only cache.
    """

    def __init__(self, prefix: Sequence = (), tail: TailRule | None = None):
        self.prefix = tuple(as_fraction(v) for v in prefix)
        for i, s in enumerate(self.prefix):
            if s <= 0:
                raise InvalidWeights(f"squared weight s_{i} = {s} is not positive")
        self.tail = tail if tail is not None else ConstantTail(Fraction(1))
        self._moments = [Fraction(1)]
        self._lock = threading.Lock()

    def weight_sq(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("weights are indexed from 0")
        if n < len(self.prefix):
            return self.prefix[n]
        s = self.tail.value(n)
        if s <= 0:
            raise InvalidWeights(f"squared weight s_{n} = {s} is not positive")
        return s

    def weights_sq(self, count: int) -> list[Fraction]:
        return [self.weight_sq(n) for n in range(count)]

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("moments are indexed from 0")
        memo = self._moments
        if n < len(memo):
            return memo[n]
        with self._lock:
            while len(memo) <= n:
                k = len(memo) - 1
                memo.append(memo[k] * self.weight_sq(k))
            return memo[n]

    def moments(self, count: int) -> list[Fraction]:
        self.moment(count - 1)
        return list(self._moments[:count])

    def __repr__(self):
        head = ", ".join(str(s) for s in self.weights_sq(4))
        return f"WeightSequenceSq([{head}, ...])"


def weight_sq(w: WeightSequenceSq, n: int) -> Fraction:
    return w.weight_sq(n)


def moment(w: WeightSequenceSq, n: int) -> Fraction:
    return w.moment(n)


def backstep(w: WeightSequenceSq, s) -> WeightSequenceSq:
    """Prepend the squared weight ``s`` (the extension by weight ``sqrt(s)``)."""
    s = as_fraction(s)
    if s <= 0:
        raise InvalidWeights(f"back-step squared weight {s} is not positive")
    return WeightSequenceSq((s, *w.prefix), w.tail.shifted(1))


def schur(w1: WeightSequenceSq, w2: WeightSequenceSq) -> WeightSequenceSq:
    """Pointwise product of squared weights; moments multiply too."""
    return WeightSequenceSq((), SchurTail(w1, w2))


def packet(w: WeightSequenceSq, length: int, start: int) -> WeightSequenceSq:
    """Products of ``length`` consecutive squared weights, beginning at
    ``start`` and stepping by ``length``."""
    if length < 1:
        raise ValueError("packet length must be >= 1")
    if not 0 <= start <= length - 1:
        raise IndexError(f"packet start {start} outside [0, {length - 1}]")
    if length == 1:
        return w
    return WeightSequenceSq((), PacketTail(w, length, start))


def power_decompose(w: WeightSequenceSq, length: int) -> list[WeightSequenceSq]:
    """The direct summands of the ``length``-th power of the shift."""
    if length < 1:
        raise ValueError("power must be >= 1")
    return [packet(w, length, i) for i in range(length)]


def bergman() -> WeightSequenceSq:
    """``s_n = (n+2)/(n+3)``, moments ``2/(n+2)``; Berger measure ``2t dt``."""
    return WeightSequenceSq((), RationalFunctionTail(Poly([2, 1], "n"), Poly([3, 1], "n")))


def constant(c=1) -> WeightSequenceSq:
    return WeightSequenceSq((), ConstantTail(as_fraction(c)))
