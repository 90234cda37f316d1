"""k-hyponormality via Hankel moment windows, and exact back-step thresholds.

A shift is k-hyponormal iff every Hankel window ``A_{n,k}`` of its moments
is PSD. For a general tail there is no finite certificate of "every n", so
the window checks report ``PassedWindow(N)`` rather than a full verdict.
For back-step extensions of a subnormal shift the question collapses to a
single bordered matrix, and the thresholds below are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import SymMatrix, is_psd, psd_corner_threshold
from .weights import WeightSequenceSq, power_decompose, schur

__all__ = [
    "DEFAULT_WINDOW",
    "HankelWindow",
    "KHypVerdict",
    "hankel",
    "is_k_hyponormal_window",
    "is_power_k_hyponormal_window",
    "all_passed",
    "backstep_k_threshold",
    "power_backstep_k_threshold",
    "backstep_matrix",
    "schur_preservation_check",
]

DEFAULT_WINDOW = 25


@dataclass(frozen=True)
class HankelWindow:
    n: int
    k: int
    matrix: SymMatrix


@dataclass(frozen=True)
class KHypVerdict:
    k: int
    window: int
    failed_at: int | None = None

    @property
    def passed(self) -> bool:
        return self.failed_at is None

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"PassedWindow({self.window})"
        return f"FailedAt({self.failed_at})"


def hankel(w: WeightSequenceSq, n: int, k: int) -> HankelWindow:
    """The (k+1)x(k+1) matrix ``[gamma_{n+r+c}]``."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    gam = [w.moment(n + j) for j in range(2 * k + 1)]
    mat = SymMatrix([[gam[r + c] for c in range(k + 1)] for r in range(k + 1)])
    return HankelWindow(n, k, mat)


def is_k_hyponormal_window(w: WeightSequenceSq, k: int, window: int = DEFAULT_WINDOW) -> KHypVerdict:
    for n in range(window + 1):
        if not is_psd(hankel(w, n, k).matrix):
            return KHypVerdict(k, window, n)
    return KHypVerdict(k, window)


def is_power_k_hyponormal_window(
    w: WeightSequenceSq, power: int, k: int, window: int = DEFAULT_WINDOW
) -> list[KHypVerdict]:
    """One verdict per direct summand of the ``power``-th power."""
    return [is_k_hyponormal_window(piece, k, window) for piece in power_decompose(w, power)]


def all_passed(verdicts) -> bool:
    return all(v.passed for v in verdicts)


def backstep_matrix(w: WeightSequenceSq, power: int, k: int) -> tuple[SymMatrix, list[Fraction]]:
    """Inner block and border of the bordered moment matrix whose corner is
    ``1/s`` for the back-step extension by ``sqrt(s)``, raised to ``power``.

    Border entries are ``gamma_{(j+1)*power - 1}`` and the block is
    ``gamma_{(r+c+2)*power - 1}``; ``power == 1`` gives the plain case.
    """
    if power < 1 or k < 1:
        raise ValueError("need power >= 1 and k >= 1")
    border = [w.moment((j + 1) * power - 1) for j in range(k)]
    block = SymMatrix(
        [[w.moment((r + c + 2) * power - 1) for c in range(k)] for r in range(k)]
    )
    return block, border


def backstep_k_threshold(w: WeightSequenceSq, k: int):
    """Largest squared weight ``s`` whose back-step extension of the
    subnormal shift ``w`` is k-hyponormal.

    May return ``INFINITE`` or ``None`` (see
    :func:`~wshift.exactmath.psd_corner_threshold`); raises ``NotPSD`` when
    ``w`` is visibly not subnormal.
    """
    return power_backstep_k_threshold(w, 1, k)


def power_backstep_k_threshold(w: WeightSequenceSq, power: int, k: int):
    block, border = backstep_matrix(w, power, k)
    return psd_corner_threshold(block, border)


def schur_preservation_check(
    w1: WeightSequenceSq, w2: WeightSequenceSq, k: int, window: int = DEFAULT_WINDOW
) -> bool:
    """Check on ``0 <= n <= window`` that the Hankel windows of the Schur
    product are the entrywise products of the factors' windows, and that
    PSD factors give a PSD product."""
    prod = schur(w1, w2)
    for n in range(window + 1):
        a = hankel(w1, n, k).matrix
        b = hankel(w2, n, k).matrix
        c = hankel(prod, n, k).matrix
        size = k + 1
        for r in range(size):
            for col in range(size):
                if c[r, col] != a[r, col] * b[r, col]:
                    return False
        if is_psd(a) and is_psd(b) and not is_psd(c):
            return False
    return True
