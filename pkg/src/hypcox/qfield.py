"""Exact arithmetic in the small real quadratic extensions of Q used here.

Root coordinates and Gram entries never touch floating point on the exact
paths: plain ``fractions.Fraction`` covers the crystallographic root systems,
``Q5`` covers Q(sqrt5) where the icosahedral root systems live, and ``Q23``
covers the biquadratic field Q(sqrt2, sqrt3) spanned by cos(pi/m) for
m in {2, 3, 4, 6}.

Both field classes keep canonical reduced Fraction coefficients, have exact
equality and hashing, and can decide the sign of any element without leaving
Q (comparisons reduce to squaring, since sqrt2, sqrt3, sqrt5, sqrt6 are
irrational the tie cases cannot occur for nonzero elements).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)
SQRT6 = math.sqrt(6.0)


def _sign_rat(a: Fraction) -> int:
    return (a > 0) - (a < 0)


def _sign_quad(a: Fraction, b: Fraction, n: int) -> int:
    """Sign of a + b*sqrt(n) for rational a, b and non-square n."""
    if b == 0:
        return _sign_rat(a)
    if a == 0:
        return _sign_rat(b)
    sa, sb = _sign_rat(a), _sign_rat(b)
    if sa == sb:
        return sa
    # opposite signs: compare |a| against |b|sqrt(n) by squaring
    return sa * _sign_rat(a * a - n * b * b)


class Q5:
    """Element a + b*sqrt(5) of Q(sqrt5)."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rat = 0, b: Rat = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(x) -> "Q5":
        if isinstance(x, Q5):
            return x
        if isinstance(x, (int, Fraction)):
            return Q5(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Q5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Q5(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Q5(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Q5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "Q5":
        n = self.a * self.a - 5 * self.b * self.b
        if n == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt5)")
            raise ArithmeticError("norm vanished for nonzero element")  # unreachable
        return Q5(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, "sqrt5"))

    def sign(self) -> int:
        return _sign_quad(self.a, self.b, 5)

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT5

    def __repr__(self):
        return f"Q5({self.a!r}, {self.b!r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt5"
        return f"{self.a}{'+' if self.b > 0 else ''}{self.b}*sqrt5"


# Golden-ratio constants used by the icosahedral root systems.
GOLDEN_A = Q5(Fraction(1, 4), Fraction(1, 4))    # (1+sqrt5)/4
GOLDEN_B = Q5(Fraction(-1, 4), Fraction(1, 4))   # (-1+sqrt5)/4


class Q23:
    """Element a + b*sqrt2 + c*sqrt3 + d*sqrt6 of Q(sqrt2, sqrt3)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Rat = 0, b: Rat = 0, c: Rat = 0, d: Rat = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    @staticmethod
    def _coerce(x) -> "Q23":
        if isinstance(x, Q23):
            return x
        if isinstance(x, (int, Fraction)):
            return Q23(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Q23(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return Q23(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Q23(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def _conj2(self) -> "Q23":
        return Q23(self.a, -self.b, self.c, -self.d)

    def _conj3(self) -> "Q23":
        return Q23(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "Q23":
        if not self:
            raise ZeroDivisionError("division by zero in Q(sqrt2,sqrt3)")
        adj = self._conj2() * self._conj3() * self._conj2()._conj3()
        norm = self * adj
        assert norm.b == 0 and norm.c == 0 and norm.d == 0 and norm.a != 0
        n = norm.a
        return Q23(adj.a / n, adj.b / n, adj.c / n, adj.d / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        if self.b == 0 and self.c == 0 and self.d == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d, "sqrt23"))

    def sign(self) -> int:
        # view as alpha + beta*sqrt3 with alpha, beta in Q(sqrt2)
        a, b, c, d = self.a, self.b, self.c, self.d
        s_beta = _sign_quad(c, d, 2)
        s_alpha = _sign_quad(a, b, 2)
        if s_beta == 0:
            return s_alpha
        if s_alpha == 0:
            return s_beta
        if s_alpha == s_beta:
            return s_alpha
        # alpha^2 - 3*beta^2 lies in Q(sqrt2); its sign settles the comparison
        pa = a * a + 2 * b * b - 3 * (c * c + 2 * d * d)
        pb = 2 * a * b - 6 * c * d
        return s_alpha * _sign_quad(pa, pb, 2)

    def __bool__(self):
        return (self.a, self.b, self.c, self.d) != (0, 0, 0, 0)

    def __float__(self):
        return (
            float(self.a)
            + float(self.b) * SQRT2
            + float(self.c) * SQRT3
            + float(self.d) * SQRT6
        )

    def __repr__(self):
        return f"Q23({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self):
        parts = []
        for coeff, tag in ((self.a, ""), (self.b, "sqrt2"), (self.c, "sqrt3"), (self.d, "sqrt6")):
            if coeff == 0:
                continue
            text = str(coeff) if not tag else (f"{coeff}*{tag}" if abs(coeff) != 1 else f"{'-' if coeff < 0 else ''}{tag}")
            if parts and not text.startswith("-"):
                parts.append("+" + text)
            else:
                parts.append(text)
        return "".join(parts) if parts else "0"


def cos_pi_over(m: int) -> Q23 | None:
    """Exact cos(pi/m) in Q(sqrt2, sqrt3) when it exists there, else None."""
    if m == 1:
        return Q23(-1)
    if m == 2:
        return Q23(0)
    if m == 3:
        return Q23(Fraction(1, 2))
    if m == 4:
        return Q23(0, Fraction(1, 2))
    if m == 6:
        return Q23(0, 0, Fraction(1, 2))
    return None
