"""Exact arithmetic substrate: polynomials over Q, symmetric matrices,
characteristic polynomials, PSD tests and real-root isolation.

Scalars are :class:`fractions.Fraction` throughout; nothing here ever
touches a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Poly",
    "SymMatrix",
    "NotPSD",
    "ZeroPolynomial",
    "IrrationalRoot",
    "INFINITE",
    "as_fraction",
    "char_poly",
    "det",
    "is_psd",
    "psd_corner_threshold",
    "sturm_chain",
    "count_roots",
    "isolate_nonneg_roots",
    "nonneg_on_ray",
    "squarefree_decomposition",
    "rational_root_in",
]

INFINITE = math.inf

Scalar = Union[int, Fraction]


class NotPSD(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class IrrationalRoot(ValueError):
    pass


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(c in text for c in ".eE"):
            raise ValueError(f"decimal literal {value!r} not accepted; use p/q")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Immutable univariate polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``var**i``. Trailing zeros are
    stripped, so the zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1, var: str = "t") -> Poly:
        return cls([0] * degree + [coeff], var)

    @classmethod
    def x(cls, var: str = "t") -> Poly:
        return cls([0, 1], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc if self.coeffs else Fraction(0)

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly([other], self.var)

    def __add__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c / other for c in self.coeffs], self.var)
        return NotImplemented

    def __divmod__(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lead = other.lc
        for k in range(len(rem) - dq - 1, -1, -1):
            factor = rem[k + dq] / lead
            quot[k] = factor
            if factor:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= factor * b
        return Poly(quot, self.var), Poly(rem[:dq], self.var)

    def __floordiv__(self, other: Poly):
        return divmod(self, other)[0]

    def __mod__(self, other: Poly):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self / self.lc

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = self.var if i == 1 else f"{self.var}^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Poly) -> list[Poly]:
    """Yun's algorithm. Returns ``[f1, f2, ...]`` with ``p = lc * prod fi**i``,
    each ``fi`` monic and square-free, pairwise coprime."""
    if p.is_zero():
        raise ZeroPolynomial("square-free decomposition of 0")
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    factors = []
    while b.degree > 0:
        a = poly_gcd(b, d)
        factors.append(a)
        b = b // a
        c = d // a
        d = c - b.derivative()
    return factors


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    return chain[:-1]


def _sign_changes(chain: Sequence[Poly], value) -> int:
    signs = [s for s in (_sign(q(value)) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_roots(chain: Sequence[Poly], lo, hi) -> int:
    """Distinct real roots in ``(lo, hi]`` of the square-free head of ``chain``."""
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root has absolute value < the result."""
    lead = abs(p.lc)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_nonneg_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Isolate the distinct nonnegative real roots of ``p``.

    Returns closed rational intervals ``(lo, hi)`` sorted left to right,
    pairwise disjoint, each containing exactly one root. A root hit exactly
    (including a root at 0) comes back as a degenerate ``(r, r)``.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    sqf = p // poly_gcd(p, p.derivative())
    chain = sturm_chain(sqf)
    zero = Fraction(0)
    found: list[tuple[Fraction, Fraction]] = []
    if sqf(zero) == 0:
        found.append((zero, zero))
    # every interval on the stack is half-open (lo, hi]
    stack = [(zero, root_bound(sqf))]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(chain, lo, hi)
        if n == 0:
            continue
        if n == 1:
            found.append((hi, hi) if sqf(hi) == 0 else (lo, hi))
            continue
        mid = (lo + hi) / 2
        while sqf(mid) == 0:
            mid = (lo + mid) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    found.sort()
    for k in range(len(found) - 1):
        a, b = found[k], found[k + 1]
        if a[1] != b[0]:
            continue
        # shared endpoint is never a root unless one side is degenerate
        if a[0] == a[1]:
            found[k + 1] = _shrink(sqf, chain, b, keep_lo=False)
        else:
            found[k] = _shrink(sqf, chain, a, keep_lo=True)
    return found


def _shrink(sqf, chain, interval, keep_lo):
    """Bisect a one-root interval until the endpoint on the other side moves."""
    lo, hi = interval
    while True:
        mid = (lo + hi) / 2
        if sqf(mid) == 0:
            return mid, mid
        if count_roots(chain, lo, mid) == 1:
            if keep_lo:
                return lo, mid
            hi = mid
        else:
            if not keep_lo:
                return mid, hi
            lo = mid


def refine_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction):
    """Bisect an isolating interval of a square-free ``p`` down to ``width``."""
    if lo == hi:
        return lo, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        vm = p(mid)
        if vm == 0:
            return mid, mid
        if _sign(p(lo)) == _sign(vm):
            lo = mid
        else:
            hi = mid
    return lo, hi


def rational_root_in(p: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    """Recover the exact rational root of ``p`` isolated in ``[lo, hi]``.

    Any rational root ``a/b`` of an integer polynomial has ``b`` dividing the
    leading coefficient, which bounds the denominator; refinement to width
    below ``1/(2 b_max**2)`` then pins it down via best rational approximation.
    Raises :class:`IrrationalRoot` if the root is not rational.
    """
    sqf = p // poly_gcd(p, p.derivative())
    if lo == hi:
        return lo
    denominators = math.lcm(*(c.denominator for c in sqf.coeffs))
    lead = abs(sqf.lc * denominators)
    bmax = int(lead)
    lo, hi = refine_root(sqf, lo, hi, Fraction(1, 4 * bmax * bmax))
    if lo == hi:
        return lo
    guess = ((lo + hi) / 2).limit_denominator(bmax)
    if lo <= guess <= hi and sqf(guess) == 0:
        return guess
    raise IrrationalRoot(f"root of {sqf} in [{lo}, {hi}] is not rational")


def nonneg_on_ray(p: Poly) -> bool:
    """True iff ``p(t) >= 0`` for every real ``t >= 0``."""
    if p.is_zero():
        return True
    if p.lc < 0:
        return False
    odd_part = Poly([1], p.var)
    for mult, factor in enumerate(squarefree_decomposition(p), start=1):
        if mult % 2:
            odd_part = odd_part * factor
    # odd_part is square-free, so any positive root is a sign change of p
    if odd_part.degree <= 0:
        return True
    chain = sturm_chain(odd_part)
    return count_roots(chain, Fraction(0), root_bound(odd_part)) == 0


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymMatrix:
    """Symmetric rational matrix, stored as a tuple of row tuples."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(as_fraction(v) for v in row) for row in rows)
        n = len(grid)
        if n == 0:
            raise ValueError("empty matrix")
        for i, row in enumerate(grid):
            if len(row) != n:
                raise ValueError("matrix is not square")
            for j in range(i):
                if row[j] != grid[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", grid)

    @property
    def order(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def principal(self, index: Sequence[int]) -> SymMatrix:
        return SymMatrix([[self.entries[i][j] for j in index] for i in index])

    def bordered(self, corner, border: Sequence) -> SymMatrix:
        """The matrix ``[[corner, border^T], [border, self]]``."""
        g = [as_fraction(v) for v in border]
        if len(g) != self.order:
            raise ValueError("border length must equal matrix order")
        rows = [[as_fraction(corner), *g]]
        for i, row in enumerate(self.entries):
            rows.append([g[i], *row])
        return SymMatrix(rows)


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square (not necessarily symmetric) matrix by
    fraction-free Bareiss elimination over the common-denominator lift."""
    if isinstance(rows, SymMatrix):
        rows = rows.entries
    a = [[as_fraction(v) for v in row] for row in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    scale = math.lcm(*(v.denominator for row in a for v in row))
    m = [[int(v * scale) for v in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], scale**n)


def char_poly(m: SymMatrix, var: str = "lambda") -> Poly:
    """``det(lambda*I - m)`` via Faddeev-LeVerrier, exact over Q."""
    n = m.order
    a = m.rows()
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    # M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        nxt = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            ai = a[i]
            for j in range(n):
                s = sum(ai[r] * mk[r][j] for r in range(n))
                nxt[i][j] = s + (c_prev if i == j else 0)
        mk = nxt
        trace = sum(sum(a[i][r] * mk[r][i] for r in range(n)) for i in range(n))
        coeffs[n - k] = -trace / k
    return Poly(coeffs, var)


def is_psd(m: SymMatrix) -> bool:
    """Exact PSD test by the alternating-sign rule on the characteristic
    polynomial, which stays correct for singular matrices."""
    cp = char_poly(m)
    n = m.order
    return all((-1) ** (n - i) * cp[i] >= 0 for i in range(n + 1))


def _solve_consistent(h: Sequence[Sequence[Fraction]], g: Sequence[Fraction]):
    """Some solution ``y`` of ``h y = g`` by pivoted elimination, or None."""
    n = len(g)
    aug = [list(h[i]) + [g[i]] for i in range(n)]
    pivots = []
    row = 0
    for col in range(n):
        p = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        piv = aug[row][col]
        aug[row] = [v / piv for v in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    if any(aug[r][n] != 0 for r in range(row, n)):
        return None
    y = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        y[col] = aug[r][n]
    return y


def psd_corner_threshold(h: SymMatrix, g: Sequence):
    """Largest ``c`` with ``[[1/c, g^T], [g, h]]`` PSD.

    Returns ``INFINITE`` when ``g`` is zero, ``None`` when ``g`` lies outside
    the range of ``h`` (no positive ``c`` works), otherwise the exact value
    ``1 / (g^T h^+ g)``. Raises :class:`NotPSD` if ``h`` itself is not PSD.
    """
    g = [as_fraction(v) for v in g]
    if len(g) != h.order:
        raise ValueError("border length must equal matrix order")
    if not is_psd(h):
        raise NotPSD("inner block is not positive semidefinite")
    if all(v == 0 for v in g):
        return INFINITE
    y = _solve_consistent(h.rows(), g)
    if y is None:
        return None
    quad = sum(a * b for a, b in zip(g, y))
    return 1 / quad
