"""Finitely presented Berger measures on [0, 1].

A :class:`Measure` is a finite sum of point masses and generalized monomial
densities ``a * t**q dt`` on ``[0, 1]`` with rational ``q > -1``. The class is
closed under the power-piece transforms and back-step constructions below,
and every moment is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import INFINITE, as_fraction
from .weights import MeasureTail, WeightSequenceSq

__all__ = [
    "Measure",
    "DegenerateSupport",
    "AboveThreshold",
    "UnsupportedDensity",
    "MultiBackstepVerdict",
    "dirac",
    "monomial_density",
    "neg_moment",
    "split_origin",
    "shift_from_measure",
    "pushforward_power",
    "piece_measure",
    "backstep_subnormal_threshold",
    "backstep_measure",
    "multi_backstep_check",
    "power_backstep_subnormal_threshold",
]


class DegenerateSupport(ValueError):
    pass


class AboveThreshold(ValueError):
    pass


class UnsupportedDensity(ValueError):
    pass


@dataclass(frozen=True)
class Measure:
    atoms: tuple[tuple[Fraction, Fraction], ...] = ()
    density_terms: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        atoms = tuple((as_fraction(p), as_fraction(m)) for p, m in self.atoms)
        terms = tuple((as_fraction(a), as_fraction(q)) for a, q in self.density_terms)
        locs = [p for p, _ in atoms]
        if len(set(locs)) != len(locs):
            raise ValueError("atom locations must be distinct")
        for p, m in atoms:
            if not 0 <= p <= 1:
                raise ValueError(f"atom at {p} lies outside [0, 1]")
            if m <= 0:
                raise ValueError(f"atom mass {m} is not positive")
        for a, q in terms:
            if a <= 0:
                raise ValueError(f"density coefficient {a} is not positive")
            if q <= -1:
                raise ValueError(f"density exponent {q} is not integrable at 0")
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))
        object.__setattr__(self, "density_terms", terms)

    @property
    def total_mass(self) -> Fraction:
        return self.moment(0)

    @property
    def is_probability(self) -> bool:
        return self.total_mass == 1

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("use neg_moment for negative powers")
        out = sum((m * p**n for p, m in self.atoms), Fraction(0))
        return out + sum((a / (n + q + 1) for a, q in self.density_terms), Fraction(0))

    def moments(self, count: int) -> list[Fraction]:
        return [self.moment(n) for n in range(count)]

    def neg_moment(self, j: int):
        return neg_moment(self, j)

    def scaled(self, factor) -> Measure:
        factor = as_fraction(factor)
        return Measure(
            tuple((p, m * factor) for p, m in self.atoms),
            tuple((a * factor, q) for a, q in self.density_terms),
        )

    def __str__(self):
        parts = [f"{m}*delta({p})" for p, m in self.atoms]
        parts += [f"{a}*t^({q}) dt" for a, q in self.density_terms]
        return " + ".join(parts) or "0"

    def __add__(self, other: Measure) -> Measure:
        merged: dict[Fraction, Fraction] = {}
        for p, m in self.atoms + other.atoms:
            merged[p] = merged.get(p, Fraction(0)) + m
        return Measure(tuple(merged.items()), self.density_terms + other.density_terms)


def dirac(location, mass=1) -> Measure:
    return Measure(((location, mass),))


def monomial_density(coeff, exponent) -> Measure:
    """``coeff * t**exponent dt`` on [0, 1]."""
    return Measure((), ((coeff, exponent),))


def neg_moment(mu: Measure, j: int):
    """``integral of t**(-j) dmu``, or ``INFINITE`` when it diverges."""
    if j < 1:
        raise ValueError("neg_moment needs j >= 1")
    total = Fraction(0)
    for p, m in mu.atoms:
        if p == 0:
            return INFINITE
        total += m / p**j
    for a, q in mu.density_terms:
        if q - j <= -1:
            return INFINITE
        total += a / (q - j + 1)
    return total


def split_origin(mu: Measure) -> tuple[Measure, Fraction]:
    """``mu = nu + rho * delta_0``; ``nu`` is returned without renormalizing."""
    rho = sum((m for p, m in mu.atoms if p == 0), Fraction(0))
    nu = Measure(tuple((p, m) for p, m in mu.atoms if p != 0), mu.density_terms)
    return nu, rho


def shift_from_measure(mu: Measure) -> WeightSequenceSq:
    """The subnormal shift whose Berger measure is ``mu``."""
    if not mu.is_probability:
        raise ValueError(f"measure has total mass {mu.total_mass}, expected 1")
    if mu.moment(1) == 0:
        raise DegenerateSupport("all mass sits at the origin")
    return WeightSequenceSq((), MeasureTail(mu))


def pushforward_power(mu: Measure, power: int) -> Measure:
    """Image of ``mu`` under ``t -> t**power``; moments become ``gamma_{power*n}``."""
    if power < 1:
        raise ValueError("power must be >= 1")
    if power == 1:
        return mu
    return Measure(
        tuple((p**power, m) for p, m in mu.atoms),
        tuple((a / power, (q + 1) / power - 1) for a, q in mu.density_terms),
    )


def piece_measure(mu: Measure, power: int, i: int, gamma_i=None) -> Measure:
    """Berger measure of the ``i``-th summand (``1 <= i < power``) of the
    ``power``-th power of the shift with measure ``mu``.

    Its moments are ``gamma_{power*n + i} / gamma_i``. ``gamma_i`` defaults to
    the ``i``-th moment of ``mu``.
    """
    if not 1 <= i <= power - 1:
        raise IndexError(f"piece index {i} outside [1, {power - 1}]")
    g = mu.moment(i) if gamma_i is None else as_fraction(gamma_i)
    nu, _ = split_origin(mu)
    return Measure(
        tuple((p**power, m * p**i / g) for p, m in nu.atoms),
        tuple((a / (g * power), (q + i + 1) / power - 1) for a, q in nu.density_terms),
    )


def backstep_subnormal_threshold(mu: Measure) -> Fraction:
    """Largest squared weight ``s`` for which prepending ``sqrt(s)`` keeps
    the shift subnormal; ``0`` if no back-step extension is subnormal."""
    inv = neg_moment(mu, 1)
    if inv == INFINITE:
        return Fraction(0)
    return 1 / inv


def backstep_measure(mu: Measure, s) -> Measure:
    """Berger measure of the shift extended by the squared weight ``s``."""
    s = as_fraction(s)
    if s <= 0:
        raise ValueError("back-step squared weight must be positive")
    threshold = backstep_subnormal_threshold(mu)
    if s > threshold:
        raise AboveThreshold(f"{s} exceeds the subnormal threshold {threshold}")
    inv = neg_moment(mu, 1)
    theta = s * inv
    for a, q in mu.density_terms:
        if q - 1 <= -1:
            raise UnsupportedDensity(f"density exponent {q} leaves the class after division by t")
    atoms = [(p, theta * m / (p * inv)) for p, m in mu.atoms]
    if theta < 1:
        atoms.append((Fraction(0), 1 - theta))
    terms = tuple((theta * a / inv, q - 1) for a, q in mu.density_terms)
    return Measure(tuple(atoms), terms)


@dataclass(frozen=True)
class MultiBackstepVerdict:
    subnormal: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.subnormal

    def __str__(self):
        if self.subnormal:
            return "Subnormal"
        return f"NotSubnormal(step {self.step}: {self.reason})"


def multi_backstep_check(mu: Measure, s_list: Sequence) -> MultiBackstepVerdict:
    """Subnormality of a multi-step back-step extension.

    ``s_list[0]`` is the squared weight adjacent to the original sequence,
    ``s_list[-1]`` the new first weight. With ``P_j`` the product of the first
    ``j`` entries, the extension is subnormal iff ``1/t**j`` is integrable for
    all ``j <= n``, ``P_j`` equals ``1/neg_moment(mu, j)`` for ``j < n`` and
    ``P_n <= 1/neg_moment(mu, n)``.
    """
    values = [as_fraction(s) for s in s_list]
    if not values:
        raise ValueError("need at least one back-step weight")
    if any(v <= 0 for v in values):
        raise ValueError("back-step squared weights must be positive")
    n = len(values)
    # integrability does not depend on the weights, so it is checked first
    inverse = [neg_moment(mu, j) for j in range(1, n + 1)]
    for j, inv in enumerate(inverse, start=1):
        if inv == INFINITE:
            return MultiBackstepVerdict(False, j, f"1/t^{j} is not integrable")
    product = Fraction(1)
    for j in range(1, n + 1):
        product *= values[j - 1]
        bound = 1 / inverse[j - 1]
        if j < n and product != bound:
            return MultiBackstepVerdict(False, j, f"product {product} must equal {bound}")
        if j == n and product > bound:
            return MultiBackstepVerdict(False, j, f"product {product} exceeds {bound}")
    return MultiBackstepVerdict(True)


def power_backstep_subnormal_threshold(mu: Measure, power: int) -> Fraction:
    """Largest ``s`` with the ``power``-th power of the back-step extension
    by ``sqrt(s)`` subnormal.

    For ``power >= 2`` only the part of ``mu`` off the origin matters. For
    ``power == 1`` this is the plain back-step threshold, which is zero as
    soon as ``mu`` charges the origin.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    if power == 1:
        return backstep_subnormal_threshold(mu)
    nu, _ = split_origin(mu)
    inv = neg_moment(nu, 1)
    if inv == 0:
        raise DegenerateSupport("all mass sits at the origin")
    if inv == INFINITE:
        return Fraction(0)
    return 1 / inv
