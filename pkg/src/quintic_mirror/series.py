"""Dense truncated power series over an exact coefficient ring.

A ``TruncSeries`` holds coefficients ``c0..cD`` of a series in one formal
variable, truncated at a fixed order ``D``.  Coefficients may be any ring
elements that support ``+``, ``-``, ``*`` among themselves and with plain
``int``/``Fraction`` scalars (``Fraction``, ``RatFunc``, ``HTruncPoly``, ...).
Binary operations require equal orders; callers down-truncate explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, OrderMismatch

__all__ = [
    "TruncSeries",
    "series_exp",
    "series_log",
    "series_reversion",
    "geometric_inverse",
]


class TruncSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise DomainError("truncation order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs = coeffs + [0] * (order + 1 - len(coeffs))
        elif len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def constant(cls, value, order: int) -> "TruncSeries":
        return cls([value] + [0] * order, order)

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls.constant(0, order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.constant(1, order)

    @classmethod
    def variable(cls, order: int) -> "TruncSeries":
        """The series ``q`` itself (requires order >= 1)."""
        if order < 1:
            raise DomainError("variable requires order >= 1")
        c = [0] * (order + 1)
        c[1] = 1
        return cls(c, order)

    def __getitem__(self, d: int):
        return self.coeffs[d]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1], order)

    def _check(self, other: "TruncSeries") -> None:
        if not isinstance(other, TruncSeries):
            raise TypeError("operand is not a TruncSeries")
        if other.order != self.order:
            raise OrderMismatch(
                f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)],
                           self.order)

    def __sub__(self, other):
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)],
                           self.order)

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order)

    def __mul__(self, other):
        """Cauchy product truncated at the common order."""
        self._check(other)
        D = self.order
        out = [0] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(D - i + 1):
                b = other.coeffs[j]
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncSeries(out, D)

    def scale(self, scalar) -> "TruncSeries":
        return TruncSeries([scalar * a for a in self.coeffs], self.order)

    def __truediv__(self, other):
        """Long division: c with other * c == self through the order."""
        self._check(other)
        b0 = other.coeffs[0]
        if b0 == 0:
            raise DomainError("division by series with zero constant term")
        D = self.order
        out: list = []
        for k in range(D + 1):
            acc = self.coeffs[k]
            for j in range(k):
                acc = acc - out[j] * other.coeffs[k - j]
            out.append(_divide(acc, b0))
        return TruncSeries(out, D)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise DomainError("negative powers not supported; divide instead")
        result = TruncSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """Substitute ``inner`` (zero constant term) for the variable."""
        self._check(inner)
        if inner.coeffs[0] != 0:
            raise DomainError("composition requires inner constant term 0")
        D = self.order
        out = TruncSeries.constant(self.coeffs[0], D)
        power = TruncSeries.one(D)
        for k in range(1, D + 1):
            power = power * inner
            out = out + power.scale(self.coeffs[k])
        return out

    def map(self, fn: Callable) -> "TruncSeries":
        return TruncSeries([fn(a) for a in self.coeffs], self.order)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, tuple(str(c) for c in self.coeffs)))

    def __repr__(self):
        return f"TruncSeries({self.coeffs!r})"

    def __str__(self):
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"({c})*q^{d}" if d else f"({c})")
        return " + ".join(parts) if parts else "0"


def _divide(a, b):
    # Exact division in the coefficient ring; Fractions of ints stay exact.
    if isinstance(a, int) and isinstance(b, (int, Fraction)):
        return Fraction(a) / b
    return a / b


def series_exp(a: TruncSeries) -> TruncSeries:
    """exp of a series with zero constant term.

    Solved order by order from E' = a'E, which only ever divides by an
    integer, so it works over any ring of characteristic zero.
    """
    if a.coeffs[0] != 0:
        raise DomainError("series_exp requires zero constant term")
    D = a.order
    out: list = [1]
    for k in range(1, D + 1):
        acc = 0
        for j in range(1, k + 1):
            term = a.coeffs[j]
            if term == 0:
                continue
            acc = acc + term * out[k - j] * j
        acc = _int_divide(acc, k)
        out.append(acc)
    return TruncSeries(out, D)


def series_log(u: TruncSeries) -> TruncSeries:
    """log of a series with constant term 1 (inverse expansion of exp)."""
    if u.coeffs[0] != 1:
        raise DomainError("series_log requires constant term 1")
    D = u.order
    out: list = [0]
    for k in range(1, D + 1):
        acc = 0
        for j in range(1, k):
            if out[j] == 0 or u.coeffs[k - j] == 0:
                continue
            acc = acc + out[j] * u.coeffs[k - j] * j
        out.append(u.coeffs[k] - _int_divide(acc, k))
    return TruncSeries(out, D)


def _int_divide(a, k: int):
    if isinstance(a, int):
        return Fraction(a, k)
    return a / k


def geometric_inverse(b: TruncSeries) -> TruncSeries:
    """1 / b for b with invertible constant term."""
    return TruncSeries.one(b.order) / b


def series_reversion(v: TruncSeries) -> TruncSeries:
    """Compositional inverse of the map q -> q*v(q), for v(0) = 1.

    Returns w with w(0) = 1 such that substituting q = q'*w(q') into
    q*v(q) gives back q' through the truncation order.  Solved order by
    order: the degree-k coefficient of the inverse is determined by the
    lower ones (O(D^2) ring products per step).
    """
    if v.coeffs[0] != 1:
        raise DomainError("series_reversion requires v(0) = 1")
    D = v.order
    # psi = compositional inverse of phi(q) = q*v(q) = sum phi_e q^e with
    # phi_e = v_{e-1}.  [q'^k] phi(psi(q')) = 0 for k >= 2 determines psi_k
    # from psi_j, j < k, since psi^e only involves lower coefficients.
    psi = [0, 1]
    for k in range(2, D + 2):
        p = psi + [0] * (k + 1 - len(psi))
        acc = 0
        running = p
        for e in range(2, k + 1):
            running = _poly_trunc_mul(running, p, k)
            if e - 1 > D:
                break
            ve = v.coeffs[e - 1]
            if ve != 0:
                acc = acc + ve * running[k]
        psi.append(-acc)
    # w(q') = psi(q')/q'
    return TruncSeries(psi[1: D + 2], D)


def _poly_trunc_mul(a: list, b: list, top: int) -> list:
    out = [0] * (top + 1)
    for i, x in enumerate(a[: top + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: top + 1 - i]):
            if y == 0:
                continue
            out[i + j] = out[i + j] + x * y
    return out
