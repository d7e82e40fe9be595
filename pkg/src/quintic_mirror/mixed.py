"""Nilpotent-H polynomials and the (H, t, q) mixed series ring.

``HTruncPoly`` models the cohomology presentation with H nilpotent:
multiplication simply discards every term of H-degree above the cap.

``MixedSeries`` models elements of H*[t][[q]] with q = e^t: a finite
array of coefficients ``c[i][k][d]`` for H^i t^k q^d.  The derivative
in t obeys the chain rule d/dt (t^k q^d) = k t^{k-1} q^d + d t^k q^d.
Scalars may be Fraction or Laurent (for hbar-graded solutions).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError, OrderMismatch
from .series import TruncSeries

__all__ = ["HTruncPoly", "MixedSeries"]


class HTruncPoly:
    """a0 + a1*H + ... + aN*H^N in the quotient by H^(N+1)."""

    __slots__ = ("c", "nilpotency")

    def __init__(self, coeffs: Sequence, nilpotency: int):
        if nilpotency < 1:
            raise DomainError("nilpotency order must be >= 1")
        c = list(coeffs)[:nilpotency]
        c += [0] * (nilpotency - len(c))
        self.c = c
        self.nilpotency = nilpotency

    @classmethod
    def const(cls, value, nilpotency: int) -> "HTruncPoly":
        return cls([value], nilpotency)

    @classmethod
    def h(cls, nilpotency: int) -> "HTruncPoly":
        return cls([0, 1], nilpotency)

    @staticmethod
    def _coerce(x, nilpotency: int):
        if isinstance(x, HTruncPoly):
            return x if x.nilpotency == nilpotency else None
        if isinstance(x, (int, Fraction)):
            return HTruncPoly([x], nilpotency)
        return None

    def __add__(self, other):
        other = HTruncPoly._coerce(other, self.nilpotency)
        if other is None:
            return NotImplemented
        return HTruncPoly([a + b for a, b in zip(self.c, other.c)],
                          self.nilpotency)

    __radd__ = __add__

    def __sub__(self, other):
        other = HTruncPoly._coerce(other, self.nilpotency)
        if other is None:
            return NotImplemented
        return HTruncPoly([a - b for a, b in zip(self.c, other.c)],
                          self.nilpotency)

    def __rsub__(self, other):
        other = HTruncPoly._coerce(other, self.nilpotency)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return HTruncPoly([-a for a in self.c], self.nilpotency)

    def __mul__(self, other):
        other = HTruncPoly._coerce(other, self.nilpotency)
        if other is None:
            return NotImplemented
        n = self.nilpotency
        out = [0] * n
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.c[j]
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return HTruncPoly(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HTruncPoly":
        result = HTruncPoly.const(1, self.nilpotency)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "HTruncPoly":
        """(a0 + N)^-1 via the finite geometric series in the nilpotent part."""
        a0 = self.c[0]
        if a0 == 0:
            raise DomainError("constant term not invertible")
        if isinstance(a0, int):
            inv0 = Fraction(1, a0)
        elif isinstance(a0, Fraction):
            inv0 = 1 / a0
        else:
            inv0 = a0.inverse()
        rest = HTruncPoly([0] + [-x * inv0 for x in self.c[1:]],
                          self.nilpotency)
        out = HTruncPoly.const(1, self.nilpotency)
        power = HTruncPoly.const(1, self.nilpotency)
        for _ in range(1, self.nilpotency):
            power = power * rest
            out = out + power
        return HTruncPoly([x * inv0 for x in out.c], self.nilpotency)

    def __truediv__(self, other):
        other = HTruncPoly._coerce(other, self.nilpotency)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < self.nilpotency else 0

    def __eq__(self, other):
        other = HTruncPoly._coerce(other, self.nilpotency)
        if other is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash((self.nilpotency, tuple(str(x) for x in self.c)))

    def __repr__(self):
        terms = [f"({a})*H^{i}" for i, a in enumerate(self.c) if a != 0]
        return "HTruncPoly(" + (" + ".join(terms) or "0") + ")"


class MixedSeries:
    """Triple-graded truncated element: sum c[i][k][d] H^i t^k q^d.

    ``h_top``/``t_top`` are the largest retained exponents (inclusive),
    ``order`` the q-truncation.  Multiplication truncates in all three
    gradings; H-truncation is the nilpotency H^(h_top+1) = 0, while the
    t and q caps must be chosen by the caller to absorb the result.
    """

    __slots__ = ("c", "h_top", "t_top", "order")

    def __init__(self, h_top: int, t_top: int, order: int, coeffs=None):
        if h_top < 0 or t_top < 0 or order < 0:
            raise DomainError("caps must be nonnegative")
        self.h_top = h_top
        self.t_top = t_top
        self.order = order
        if coeffs is None:
            self.c = [[[0] * (order + 1) for _ in range(t_top + 1)]
                      for _ in range(h_top + 1)]
        else:
            self.c = coeffs

    @classmethod
    def constant(cls, value, h_top: int, t_top: int, order: int):
        out = cls(h_top, t_top, order)
        out.c[0][0][0] = value
        return out

    def clone(self) -> "MixedSeries":
        return MixedSeries(
            self.h_top, self.t_top, self.order,
            [[row[:] for row in plane] for plane in self.c])

    def coeff(self, i: int, k: int, d: int):
        if i > self.h_top or k > self.t_top or d > self.order:
            return 0
        return self.c[i][k][d]

    def set_coeff(self, i, k, d, value) -> None:
        self.c[i][k][d] = value

    def caps(self) -> tuple[int, int, int]:
        return (self.h_top, self.t_top, self.order)

    def _check(self, other: "MixedSeries") -> None:
        if self.caps() != other.caps():
            raise OrderMismatch(
                f"caps mismatch: {self.caps()} vs {other.caps()}")

    def __add__(self, other):
        self._check(other)
        out = self.clone()
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                row = out.c[i][k]
                orow = other.c[i][k]
                for d in range(self.order + 1):
                    if orow[d] != 0:
                        row[d] = row[d] + orow[d]
        return out

    def __sub__(self, other):
        self._check(other)
        out = self.clone()
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                row = out.c[i][k]
                orow = other.c[i][k]
                for d in range(self.order + 1):
                    if orow[d] != 0:
                        row[d] = row[d] - orow[d]
        return out

    def __neg__(self):
        out = self.clone()
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                out.c[i][k] = [-x for x in out.c[i][k]]
        return out

    def __mul__(self, other):
        self._check(other)
        out = MixedSeries(self.h_top, self.t_top, self.order)
        for i1 in range(self.h_top + 1):
            for k1 in range(self.t_top + 1):
                for d1 in range(self.order + 1):
                    a = self.c[i1][k1][d1]
                    if a == 0:
                        continue
                    for i2 in range(self.h_top + 1 - i1):
                        for k2 in range(self.t_top + 1 - k1):
                            orow = other.c[i2][k2]
                            row = out.c[i1 + i2][k1 + k2]
                            for d2 in range(self.order + 1 - d1):
                                b = orow[d2]
                                if b == 0:
                                    continue
                                row[d1 + d2] = row[d1 + d2] + a * b
        return out

    def scale(self, scalar) -> "MixedSeries":
        out = self.clone()
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                out.c[i][k] = [scalar * x for x in out.c[i][k]]
        return out

    def mul_qseries(self, s: TruncSeries) -> "MixedSeries":
        """Multiply by a pure q-series (Cauchy product in q only)."""
        if s.order != self.order:
            raise OrderMismatch(
                f"q-order mismatch: {self.order} vs {s.order}")
        out = MixedSeries(self.h_top, self.t_top, self.order)
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                row = self.c[i][k]
                orow = out.c[i][k]
                for d1 in range(self.order + 1):
                    a = row[d1]
                    if a == 0:
                        continue
                    for d2 in range(self.order + 1 - d1):
                        b = s.coeffs[d2]
                        if b == 0:
                            continue
                        orow[d1 + d2] = orow[d1 + d2] + a * b
        return out

    def div_qseries(self, s: TruncSeries) -> "MixedSeries":
        return self.mul_qseries(TruncSeries.one(s.order) / s)

    def mul_q(self) -> "MixedSeries":
        """Multiply by q = e^t (shift q-order up; the top order falls off)."""
        out = MixedSeries(self.h_top, self.t_top, self.order)
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                row = self.c[i][k]
                out.c[i][k] = [0] + row[: self.order]
        return out

    def ddt(self) -> "MixedSeries":
        """d/dt with q = e^t: t^k q^d -> k t^(k-1) q^d + d t^k q^d."""
        out = MixedSeries(self.h_top, self.t_top, self.order)
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                row = self.c[i][k]
                for d in range(self.order + 1):
                    a = row[d]
                    if a == 0:
                        continue
                    if k > 0:
                        out.c[i][k - 1][d] = out.c[i][k - 1][d] + k * a
                    if d > 0:
                        out.c[i][k][d] = out.c[i][k][d] + d * a
        return out

    def h_component(self, i: int) -> "MixedSeries":
        """The H^i coefficient as an (t, q) series (h_top = 0)."""
        out = MixedSeries(0, self.t_top, self.order)
        out.c[0] = [row[:] for row in self.c[i]]
        return out

    def t_zero_part(self, i: int) -> TruncSeries:
        """The t^0 part of the H^i component, as a q-series."""
        return TruncSeries(self.c[i][0][:], self.order)

    def is_zero(self) -> bool:
        return all(x == 0
                   for plane in self.c for row in plane for x in row)

    def first_nonzero(self):
        """(i, k, d, value) of the first nonzero coefficient, or None."""
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                for d in range(self.order + 1):
                    if self.c[i][k][d] != 0:
                        return (i, k, d, self.c[i][k][d])
        return None

    def __eq__(self, other):
        if not isinstance(other, MixedSeries):
            return NotImplemented
        return self.caps() == other.caps() and (self - other).is_zero()

    def __repr__(self):
        return (f"MixedSeries(h_top={self.h_top}, t_top={self.t_top}, "
                f"order={self.order})")

    def substitute_mirror(self, g: TruncSeries, w: TruncSeries) -> "MixedSeries":
        """Change of variables t = T - g(q(q')), q = q'*w(q').

        ``g`` is the additive shift (g(0) = 0) and ``w`` the reversion
        factor with q'*w(q')*exp(g(q'*w(q'))) = q'.  The result is a
        MixedSeries in (T, q') with the same caps; the substitution
        preserves q-adic order and t-degree, so nothing is lost.
        """
        if g.order != self.order or w.order != self.order:
            raise OrderMismatch("mirror substitution needs matching orders")
        if g.coeffs[0] != 0:
            raise DomainError("shift series must vanish at q = 0")
        if w.coeffs[0] != 1:
            raise DomainError("reversion factor must have constant term 1")
        D = self.order
        q_of = TruncSeries([0] + list(w.coeffs[:D]), D)  # q(q') = q' w(q')
        g_sub = g.compose(q_of)                           # g as a series in q'
        # Powers of q(q') and of g_sub, precomputed.
        q_pow = [TruncSeries.one(D)]
        for _ in range(D):
            q_pow.append(q_pow[-1] * q_of)
        g_pow = [TruncSeries.one(D)]
        for _ in range(self.t_top):
            g_pow.append(g_pow[-1] * g_sub)
        out = MixedSeries(self.h_top, self.t_top, self.order)
        binom = _binomial_table(self.t_top)
        for i in range(self.h_top + 1):
            for k in range(self.t_top + 1):
                for d in range(D + 1):
                    a = self.c[i][k][d]
                    if a == 0:
                        continue
                    # t^k = (T - g_sub)^k, q^d = q_pow[d]
                    for j in range(k + 1):
                        sign = 1 if (k - j) % 2 == 0 else -1
                        factor = q_pow[d] * g_pow[k - j]
                        coefmul = binom[k][j] * sign
                        row = out.c[i][j]
                        for e in range(D + 1):
                            b = factor.coeffs[e]
                            if b == 0:
                                continue
                            row[e] = row[e] + a * coefmul * b
        return out


def _binomial_table(n: int) -> list[list[int]]:
    table = [[1]]
    for k in range(1, n + 1):
        prev = table[-1]
        table.append([1] + [prev[j - 1] + prev[j]
                            for j in range(1, k)] + [1])
    return table
