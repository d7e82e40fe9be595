"""Exact arithmetic in the formal parameter hbar.

Three representations, each matching one role in the pipeline:

* ``Poly``    -- dense univariate polynomial over Fraction.
* ``RatFunc`` -- quotient of two ``Poly`` in lowest terms with monic
  denominator (canonical form, so ``==`` is structural equality).
* ``Laurent`` -- finite Laurent polynomial (integer exponents of either
  sign), used for the ambient fundamental solution where every
  coefficient is a polynomial in 1/hbar.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import DomainError, PoleError, StructureError

__all__ = ["Poly", "RatFunc", "Laurent"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction")


class Poly:
    """Polynomial in hbar with Fraction coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, x) -> "Poly":
        return cls([x])

    @classmethod
    def hbar(cls, power: int = 1) -> "Poly":
        return cls([0] * power + [1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def leading(self) -> Fraction:
        if not self.c:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        lead = self.c[-1]
        if lead == 1:
            return self
        return Poly(x / lead for x in self.c)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly([x])
        return None

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return Poly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __rsub__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(self.c) - len(other.c)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        dlead = other.c[-1]
        for k in range(dq, -1, -1):
            coef = rem[k + len(other.c) - 1] / dlead
            quot[k] = coef
            if coef:
                for j, b in enumerate(other.c):
                    rem[k + j] -= coef * b
        return Poly(quot), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm.

        Remainders are re-normalized to monic at every step to keep the
        Fraction coefficients from exploding along the remainder sequence.
        """
        a, b = self, other
        while not b.is_zero():
            r = a % b
            a, b = b, r.monic()
        return a.monic()

    def eval(self, x) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    __call__ = eval

    def subs_neg(self) -> "Poly":
        """Substitute hbar -> -hbar."""
        return Poly(
            (-x if k % 2 else x) for k, x in enumerate(self.c))

    def deflate_root(self, r: Fraction) -> "Poly | None":
        """Divide out (hbar - r) if r is a root, else None."""
        if self.eval(r) != 0:
            return None
        quot, rem = self.divmod(Poly([-r, 1]))
        assert rem.is_zero()
        return quot

    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "Poly(0)"
        terms = [f"{x}*h^{k}" for k, x in enumerate(self.c) if x != 0]
        return "Poly(" + " + ".join(terms) + ")"


def _poly_from_roots_linear(factors: Iterable[tuple]) -> Poly:
    """Product of linear polynomials given as (constant, hbar-coefficient)."""
    out = Poly([1])
    for a, b in factors:
        out = out * Poly([a, b])
    return out


class RatFunc:
    """num/den in lowest terms, den monic and nonzero.

    Construction normalizes, trying exact division first (the common case
    in the class-P sums, where denominators provably clear) and falling
    back to a gcd reduction.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized: bool = False):
        num = num if isinstance(num, Poly) else Poly._coerce(num)
        if den is None:
            den = Poly([1])
        else:
            den = den if isinstance(den, Poly) else Poly._coerce(den)
        if num is None or den is None:
            raise TypeError("RatFunc components must be Poly-coercible")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if _normalized:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        if den.degree == 0:
            lead = den.c[0]
            self.num = num if lead == 1 else Poly(x / lead for x in num.c)
            self.den = Poly([1])
            return
        quot, rem = num.divmod(den)
        if rem.is_zero():
            self.num, self.den = quot, Poly([1])
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading()
        if lead != 1:
            num = Poly(x / lead for x in num.c)
            den = Poly(x / lead for x in den.c)
        self.num, self.den = num, den

    @classmethod
    def const(cls, x) -> "RatFunc":
        return cls(Poly([x]), Poly([1]), _normalized=True)

    @classmethod
    def from_factors(cls, num_factors, den_factors, scale=1) -> "RatFunc":
        """Build from lists of linear factors (constant, hbar-coeff)."""
        num = _poly_from_roots_linear(num_factors) * Poly([scale])
        den = _poly_from_roots_linear(den_factors)
        return cls(num, den)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x, Poly([1]), _normalized=True)
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise DomainError(f"not a polynomial: denominator {self.den!r}")
        return self.num

    def __add__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g = self.den.gcd(other.den)
        if g.degree > 0:
            da = self.den // g
            db = other.den // g
            num = self.num * db + other.num * da
            den = self.den * db
        else:
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
        return RatFunc(num, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.const(0)
        # Cross-reduce before multiplying to keep degrees down.
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1 = self.num // g1 if g1.degree > 0 else self.num
        d2 = other.den // g1 if g1.degree > 0 else other.den
        n2 = other.num // g2 if g2.degree > 0 else other.num
        d1 = self.den // g2 if g2.degree > 0 else self.den
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _normalized=True)

    def eval(self, x) -> Fraction:
        x = _frac(x)
        d = self.den.eval(x)
        if d == 0:
            raise PoleError(x)
        return self.num.eval(x) / d

    __call__ = eval

    def subs_neg(self) -> "RatFunc":
        den = self.den.subs_neg()
        lead = den.leading()
        num = self.num.subs_neg()
        if lead != 1:
            num = Poly(v / lead for v in num.c)
            den = Poly(v / lead for v in den.c)
        return RatFunc(num, den, _normalized=True)

    def laurent_at_infinity(self, depth: int) -> tuple[Fraction, ...]:
        """Coefficients of hbar^0, hbar^-1, ..., hbar^-depth at hbar=infinity.

        Requires deg(num) <= deg(den); otherwise positive powers of hbar
        would be present, which this expansion cannot represent.
        """
        if self.is_zero():
            return tuple(Fraction(0) for _ in range(depth + 1))
        n, d = self.num.degree, self.den.degree
        if n > d:
            raise StructureError(
                f"positive hbar powers present (deg num {n} > deg den {d})")
        # In u = 1/hbar: num/den = u^{d-n} * rev(num)(u)/rev(den)(u) with
        # rev(den)(0) = 1 since den is monic.
        shift = d - n
        rnum = list(reversed(self.num.c))
        rden = list(reversed(self.den.c))
        out = []
        series: list[Fraction] = []
        for k in range(depth + 1):
            if k < shift:
                out.append(Fraction(0))
                continue
            j = k - shift
            acc = rnum[j] if j < len(rnum) else Fraction(0)
            for i in range(j):
                bidx = j - i
                if bidx < len(rden):
                    acc -= series[i] * rden[bidx]
            series.append(acc)
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_polynomial():
            return f"RatFunc({self.num!r})"
        return f"RatFunc({self.num!r} / {self.den!r})"


class Laurent:
    """Finite Laurent polynomial in hbar over Fraction."""

    __slots__ = ("c",)

    def __init__(self, coeffs: dict | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _frac(v)
                if v != 0:
                    c[k] = v
        self.c = c

    @classmethod
    def const(cls, x) -> "Laurent":
        return cls({0: x})

    @classmethod
    def unit(cls, power: int, x=1) -> "Laurent":
        """x * hbar^power (power may be negative)."""
        return cls({power: x})

    @staticmethod
    def _coerce(x):
        if isinstance(x, Laurent):
            return x
        if isinstance(x, (int, Fraction)):
            return Laurent({0: x})
        return None

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, k: int) -> Fraction:
        return self.c.get(k, Fraction(0))

    def min_power(self) -> int:
        return min(self.c) if self.c else 0

    def max_power(self) -> int:
        return max(self.c) if self.c else 0

    def __add__(self, other):
        other = Laurent._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.c)
        for k, v in other.c.items():
            s = out.get(k, Fraction(0)) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return Laurent(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = Laurent._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Laurent._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return Laurent({k: -v for k, v in self.c.items()})

    def __mul__(self, other):
        other = Laurent._coerce(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                s = out.get(k, Fraction(0)) + v1 * v2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return Laurent(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Laurent({k: v / other for k, v in self.c.items()})
        return NotImplemented

    def inverse(self) -> "Laurent":
        """Inverse of a monomial c*hbar^k; other shapes are not units."""
        if len(self.c) != 1:
            raise DomainError("only monomial Laurent elements are invertible")
        ((k, v),) = self.c.items()
        return Laurent({-k: 1 / v})

    def shift(self, powers: int) -> "Laurent":
        """Multiply by hbar^powers."""
        return Laurent({k + powers: v for k, v in self.c.items()})

    def __eq__(self, other):
        other = Laurent._coerce(other)
        if other is None:
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __repr__(self):
        if not self.c:
            return "Laurent(0)"
        terms = [f"{v}*h^{k}" for k, v in sorted(self.c.items())]
        return "Laurent(" + " + ".join(terms) + ")"
