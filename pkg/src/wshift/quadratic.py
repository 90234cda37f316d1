"""Quadratic hyponormality: the u/v/w sequences, the tridiagonal determinants
``d_n(t)``, their coefficient triangle ``c(n, i)``, and positive quadratic
hyponormality (PQH).

Only ``t = |s|**2`` of the complex parameter ever enters: the diagonal of the
truncated self-commutator is ``u_k + t v_k`` and the squared off-diagonal
moduli are ``t w_k``.

The recursions are written against any object with a ``weight_sq(n)``
method, and the scalars it returns may be Fractions or :class:`Poly`
instances in a formal parameter. The threshold search uses the latter with
the squared back-step weight as the parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import (
    INFINITE,
    Poly,
    det,
    isolate_nonneg_roots,
    nonneg_on_ray,
    rational_root_in,
    squarefree_decomposition,
    as_fraction,
)
from .weights import RationalFunctionTail, WeightSequenceSq, bergman, packet

__all__ = [
    "DEFAULT_HYP_WINDOW",
    "uvw",
    "d_poly",
    "det_window",
    "CnTable",
    "c_table",
    "PQHVerdict",
    "pqh_check",
    "QHVerdict",
    "qh_window",
    "beta_family",
    "BackstepPiece",
    "PQHThreshold",
    "pqh_backstep_threshold",
    "pqh_threshold_family",
    "qh_closed_form",
    "c32_closed_form",
    "hyponormal_closed_form",
]

DEFAULT_HYP_WINDOW = 100


def _s(w, j):
    return 0 if j < 0 else w.weight_sq(j)


def uvw(w, k: int):
    """``(u_k, v_k, w_k)`` with the convention ``s_{-1} = s_{-2} = 0``."""
    if k < 0:
        raise IndexError("k must be >= 0")
    s_m2, s_m1, s_0, s_p1 = _s(w, k - 2), _s(w, k - 1), _s(w, k), _s(w, k + 1)
    u = s_0 - s_m1
    v = s_0 * s_p1 - s_m1 * s_m2
    diff = s_p1 - s_m1
    return u, v, s_0 * diff * diff


def d_poly(w: WeightSequenceSq, n: int) -> Poly:
    """``d_n(t)`` from the three-term recursion ``d_{m+2} = q_{m+2} d_{m+1}
    - |r_{m+1}|**2 d_m``."""
    if n < 0:
        raise IndexError("n must be >= 0")
    data = [uvw(w, k) for k in range(n + 1)]
    q = [Poly([u, v]) for u, v, _ in data]
    r2 = [Poly([0, ww]) for _, _, ww in data]
    prev, cur = None, q[0]
    if n >= 1:
        prev, cur = cur, q[0] * q[1] - r2[0]
    for m in range(2, n + 1):
        prev, cur = cur, q[m] * cur - r2[m - 1] * prev
    return cur


def det_window(w: WeightSequenceSq, n: int, t) -> Fraction:
    """Determinant of the (n+1)x(n+1) truncation at ``t = |s|**2``, by plain
    elimination.

    The off-diagonal entries ``s sqrt(w_k)`` are irrational in general; the
    matrix used here is diagonally similar to it, carrying ``1`` above and
    ``t w_k`` below the diagonal, so the determinant is unchanged.
    """
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t = |s|^2 must be >= 0")
    size = n + 1
    rows = [[Fraction(0)] * size for _ in range(size)]
    for k in range(size):
        u, v, ww = uvw(w, k)
        rows[k][k] = u + t * v
        if k + 1 < size:
            rows[k][k + 1] = Fraction(1)
            rows[k + 1][k] = t * ww
    return det(rows)


@dataclass(frozen=True)
class CnTable:
    """The triangle ``c(n, i)``, ``0 <= i <= n + 1``, for ``n <= depth``."""

    rows: tuple[tuple, ...]

    @property
    def depth(self) -> int:
        return len(self.rows) - 1

    def __call__(self, n: int, i: int):
        if 0 <= n < len(self.rows) and 0 <= i < len(self.rows[n]):
            return self.rows[n][i]
        return 0

    def row_poly(self, n: int) -> Poly:
        return Poly(self.rows[n])

    def entries(self):
        for n, row in enumerate(self.rows):
            for i, value in enumerate(row):
                yield n, i, value


def c_table(w, depth: int) -> CnTable:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    data = [uvw(w, k) for k in range(depth + 1)]
    u = [d[0] for d in data]
    v = [d[1] for d in data]
    ww = [d[2] for d in data]
    rows = [
        [u[0], v[0]],
        [u[1] * u[0], u[1] * v[0] + u[0] * v[1] - ww[0], v[1] * v[0]],
    ]

    def get(n, i):
        row = rows[n]
        return row[i] if 0 <= i < len(row) else 0

    for n in range(depth - 1):
        m = n + 2
        rows.append(
            [
                u[m] * get(n + 1, i) + v[m] * get(n + 1, i - 1) - ww[n + 1] * get(n, i - 1)
                for i in range(m + 2)
            ]
        )
    return CnTable(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class PQHVerdict:
    status: str  # "certified", "failed" or "indeterminate"
    hyp_window: int
    failed_at: tuple[int, int] | None = None
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def __str__(self):
        if self.status == "certified":
            return f"CertifiedPQH(hypothesis checked for 3 <= n <= {self.hyp_window})"
        if self.status == "failed":
            return f"FailedPQH{self.failed_at}"
        return f"IndeterminateWindow({self.detail})"


def _hypothesis_gap(w, n):
    u1 = uvw(w, n + 1)[0]
    _, v, ww = uvw(w, n)
    return u1 * v - ww


def pqh_check(w: WeightSequenceSq, hyp_window: int = DEFAULT_HYP_WINDOW) -> PQHVerdict:
    """Positive quadratic hyponormality, certified through the reduction to
    ``c(3,2) >= 0`` and ``c(4,3) >= 0`` under ``u_{n+1} v_n >= w_n`` (n >= 3).

    That side condition quantifies over all n, so it is checked on
    ``3 <= n <= hyp_window`` and the window is carried in the verdict.
    """
    table = c_table(w, max(hyp_window, 4))
    for n, i, value in table.entries():
        if value < 0:
            return PQHVerdict("failed", hyp_window, (n, i))
    for n in range(3, hyp_window + 1):
        if _hypothesis_gap(w, n) < 0:
            return PQHVerdict("indeterminate", hyp_window, detail=f"u_{n+1} v_{n} < w_{n}")
    if table(3, 2) >= 0 and table(4, 3) >= 0:
        return PQHVerdict("certified", hyp_window)
    return PQHVerdict("indeterminate", hyp_window)  # pragma: no cover


@dataclass(frozen=True)
class QHVerdict:
    window: int
    violated_at: int | None = None

    @property
    def passed(self) -> bool:
        return self.violated_at is None

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"VerifiedUpToWindow({self.window})"
        return f"Violated({self.violated_at})"


def qh_window(w: WeightSequenceSq, window: int) -> QHVerdict:
    """Check ``d_n(t) >= 0`` on ``t >= 0`` for every ``n <= window``.

    A pass is necessary evidence for quadratic hyponormality, not a proof.
    """
    for n in range(window + 1):
        if not nonneg_on_ray(d_poly(w, n)):
            return QHVerdict(window, n)
    return QHVerdict(window)


def beta_family(power: int, x) -> WeightSequenceSq:
    """The first summand of the ``power``-th power of the Bergman shift
    back-stepped by ``sqrt(x)``: ``s_0 = 2x/(power+1)`` and
    ``s_n = (n*power + 1)/((n+1)*power + 1)`` for ``n >= 1``."""
    x = as_fraction(x)
    tail = RationalFunctionTail(Poly([1, power], "n"), Poly([power + 1, power], "n"))
    return WeightSequenceSq((2 * x / (power + 1),), tail)


class BackstepPiece:
    """First summand of ``W_{alpha(sqrt(x))}**power`` with ``x`` left formal.

    ``weight_sq(0)`` is the polynomial ``gamma_{power-1} * x``; later entries
    are the rational packet products of the base, independent of ``x``.
    """

    def __init__(self, base: WeightSequenceSq, power: int, var: str = "x"):
        if power < 1:
            raise ValueError("power must be >= 1")
        self.base = base
        self.power = power
        self.var = var
        self._rest = packet(base, power, power - 1) if power > 1 else base

    def weight_sq(self, n: int):
        if n == 0:
            return Poly([0, self.base.moment(self.power - 1)], self.var)
        return self._rest.weight_sq(n - 1)


def _upper_bound(value):
    """Largest ``x*`` with ``value(x) >= 0`` on all of ``(0, x*]``."""
    if not isinstance(value, Poly):
        return INFINITE if value >= 0 else Fraction(0)
    if value.is_zero():
        return INFINITE
    lowest = next(c for c in value.coeffs if c != 0)
    if lowest < 0:
        return Fraction(0)
    odd = Poly([1], value.var)
    for mult, factor in enumerate(squarefree_decomposition(value), start=1):
        if mult % 2:
            odd = odd * factor
    if odd.degree <= 0:
        return INFINITE
    roots = [iv for iv in isolate_nonneg_roots(odd) if iv[1] > 0]
    if not roots:
        return INFINITE
    lo, hi = roots[0]
    return rational_root_in(odd, lo, hi)


@dataclass(frozen=True)
class PQHThreshold:
    threshold: Fraction
    bounds: dict = field(default_factory=dict)
    hyp_window: int = DEFAULT_HYP_WINDOW


def pqh_backstep_threshold(
    base: WeightSequenceSq, power: int, hyp_window: int = DEFAULT_HYP_WINDOW
) -> PQHThreshold:
    """Largest squared back-step weight ``x`` for which the first summand of
    the ``power``-th power of the extension is PQH.

    The u/v/w and ``c(n, i)`` recursions run over polynomials in ``x``; the
    bounds from hyponormality (``u_1 >= 0``), ``c(3,2) >= 0`` and
    ``c(4,3) >= 0`` come from exact root isolation. Raises ``ValueError``
    if the ``x``-free side conditions fail inside ``hyp_window``.
    """
    piece = BackstepPiece(base, power)
    for k in range(2, hyp_window + 2):
        if uvw(piece, k)[0] < 0:
            raise ValueError(f"u_{k} < 0: the tail is not hyponormal")
    for n in range(3, hyp_window + 1):
        gap = _hypothesis_gap(piece, n)
        if isinstance(gap, Poly) or gap < 0:
            raise ValueError(f"side condition u_{n+1} v_{n} >= w_{n} fails")
    table = c_table(piece, 4)
    bounds = {
        "hyponormal": _upper_bound(uvw(piece, 1)[0]),
        "c(3,2)": _upper_bound(table(3, 2)),
        "c(4,3)": _upper_bound(table(4, 3)),
    }
    return PQHThreshold(min(bounds.values()), bounds, hyp_window)


def pqh_threshold_family(power: int, hyp_window: int = DEFAULT_HYP_WINDOW) -> Fraction:
    """PQH threshold of :func:`beta_family`, computed from scratch."""
    return pqh_backstep_threshold(bergman(), power, hyp_window).threshold


# closed forms, used only for cross-checking


def hyponormal_closed_form(power: int) -> Fraction:
    lp = Fraction(power)
    return (lp + 1) ** 2 / (2 * (2 * lp + 1))


def c32_closed_form(power: int) -> Fraction:
    lp = Fraction(power)
    return (lp + 1) ** 2 * (7 + 11 * lp) / (4 * (3 + 10 * lp + 11 * lp**2))


def c43_closed_form(power: int) -> Fraction:
    lp = Fraction(power)
    num = (lp + 1) ** 2 * (1 + 7 * lp + 34 * lp**2 + 44 * lp**3)
    den = 2 * (1 + 9 * lp + 45 * lp**2 + 99 * lp**3 + 94 * lp**4)
    return num / den


def qh_closed_form(power: int) -> Fraction:
    if power in (1, 2):
        return hyponormal_closed_form(power)
    return c43_closed_form(power)
