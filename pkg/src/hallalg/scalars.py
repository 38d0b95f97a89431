"""Exact arithmetic in Q(v) with v**2 = q.

Every structure constant in the Hall-type algebras is a rational number
times an integer power of ``v``, so an element ``a + b*v`` with rational
``a`` and ``b`` is enough.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


class TwistScalar:
    """The value ``rat + vpart*v`` in the quadratic field Q(sqrt(q))."""

    __slots__ = ("q", "rat", "vpart", "_hash")

    def __init__(self, q: int, rat=0, vpart=0):
        if q < 2:
            raise ValueError("q must be at least 2")
        self.q = q
        self.rat = _frac(rat)
        self.vpart = _frac(vpart)
        self._hash = None

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "TwistScalar":
        if isinstance(other, TwistScalar):
            if other.q != self.q:
                raise ValueError(f"mixing scalars over q={self.q} and q={other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return TwistScalar(self.q, other)
        return NotImplemented

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return TwistScalar(self.q, self.rat + o.rat, self.vpart + o.vpart)

    __radd__ = __add__

    def __neg__(self):
        return TwistScalar(self.q, -self.rat, -self.vpart)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return TwistScalar(self.q, self.rat - o.rat, self.vpart - o.vpart)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.rat, self.vpart, o.rat, o.vpart
        # (a + b v)(c + d v) = ac + q bd + (ad + bc) v
        return TwistScalar(self.q, a * c + self.q * b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``rat**2 - q*vpart**2``; nonzero for nonzero values when q is not a square."""
        return self.rat * self.rat - self.q * self.vpart * self.vpart

    def inverse(self) -> "TwistScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero TwistScalar")
        n = self.norm()
        if n == 0:
            # only possible when q is a perfect square
            raise ZeroDivisionError(f"{self} is a zero divisor for q={self.q}")
        return TwistScalar(self.q, self.rat / n, -self.vpart / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = TwistScalar(self.q, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons ------------------------------------------------------
    def is_zero(self) -> bool:
        return self.rat == 0 and self.vpart == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.vpart == 0 and self.rat == other
        if isinstance(other, TwistScalar):
            return self.q == other.q and self.rat == other.rat and self.vpart == other.vpart
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.q, self.rat, self.vpart))
        return self._hash

    # -- display / serialization -----------------------------------------
    def __repr__(self):
        return f"TwistScalar(q={self.q}, {self.rat}, {self.vpart})"

    def __str__(self):
        return format_scalar(self)

    def to_json(self) -> dict:
        return {"rat": f"{self.rat.numerator}/{self.rat.denominator}",
                "v": f"{self.vpart.numerator}/{self.vpart.denominator}"}

    @classmethod
    def from_json(cls, q: int, data: dict) -> "TwistScalar":
        return cls(q, Fraction(data["rat"]), Fraction(data["v"]))


def v_power(q: int, k: int) -> TwistScalar:
    """Return ``v**k`` where ``v = sqrt(q)``."""
    if k % 2 == 0:
        return TwistScalar(q, Fraction(q) ** (k // 2))
    return TwistScalar(q, 0, Fraction(q) ** ((k - 1) // 2))


def format_scalar(x: TwistScalar) -> str:
    """Render in the expression grammar: ``3``, ``-1/2``, ``v``, ``(1+2*v)``."""
    a, b = x.rat, x.vpart
    if b == 0:
        return str(a)
    if a == 0:
        if b == 1:
            return "v"
        if b == -1:
            return "-v"
        return f"({b}*v)"
    sign = "+" if b > 0 else "-"
    return f"({a}{sign}{abs(b)}*v)"
