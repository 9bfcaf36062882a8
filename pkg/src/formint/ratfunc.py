"""Normalized rational functions: fractions of MPoly with canonical denominators.

Invariants: den != 0, gcd(num, den) = 1, den integer-primitive with positive
leading coefficient under grevlex.  Equality of values is equality of
representations.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroDenominator
from .mpoly import MPoly, gcd_mpoly, lcm_mpoly


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly, _normalized: bool = False):
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_mpoly(cls, p: MPoly) -> "RatFunc":
        return cls(p, MPoly.const(p.vars, 1), _normalized=True)

    @classmethod
    def const(cls, vars: tuple[str, ...], q) -> "RatFunc":
        return cls.from_mpoly(MPoly.const(vars, q))

    @classmethod
    def zero(cls, vars: tuple[str, ...]) -> "RatFunc":
        return cls.from_mpoly(MPoly.zero(vars))

    @classmethod
    def var(cls, vars: tuple[str, ...], name: str) -> "RatFunc":
        return cls.from_mpoly(MPoly.var(vars, name))

    # -- basics ---------------------------------------------------------------

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_const() and self.den.const_value() == 1

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def free_of(self, var: str) -> bool:
        return self.num.free_of(var) and self.den.free_of(var)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            self._hash = h
        return h

    def __repr__(self):
        from .printer import ratfunc_text

        return f"RatFunc({ratfunc_text(self)})"

    def __str__(self):
        from .printer import ratfunc_text

        return ratfunc_text(self)

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.zero(self.vars)
        # cross-cancel before multiplying to keep intermediates small
        g1 = gcd_mpoly(self.num, other.den)
        g2 = gcd_mpoly(other.num, self.den)
        n1 = self.num.exact_div(g1) if not g1.is_const() else self.num
        d2 = other.den.exact_div(g1) if not g1.is_const() else other.den
        n2 = other.num.exact_div(g2) if not g2.is_const() else other.num
        d1 = self.den.exact_div(g2) if not g2.is_const() else self.den
        return RatFunc(n1 * n2, d1 * d2)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDenominator("inverse of zero")
        return RatFunc(self.den, self.num)

    def scale(self, q) -> "RatFunc":
        return RatFunc(self.num.scale(q), self.den, _normalized=Fraction(q) != 0)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def deriv(self, var: str) -> "RatFunc":
        n, d = self.num, self.den
        if d.is_const():
            return RatFunc(n.deriv(var), d, _normalized=False)
        return RatFunc(n.deriv(var) * d - n * d.deriv(var), d * d)

    def eval(self, subs: dict) -> "RatFunc":
        return RatFunc(self.num.eval(subs), self.den.eval(subs))

    def extend(self, newvars: tuple[str, ...]) -> "RatFunc":
        if newvars == self.vars:
            return self
        return RatFunc(self.num.extend(newvars), self.den.extend(newvars), _normalized=True)

    def restrict(self, newvars: tuple[str, ...]) -> "RatFunc":
        return RatFunc(self.num.restrict(newvars), self.den.restrict(newvars), _normalized=True)

    def degree(self, var: str) -> int:
        """Degree of the numerator minus denominator in var (rational degree)."""
        return self.num.degree(var) - max(self.den.degree(var), 0)


def _normalize(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    if num.is_zero():
        return MPoly.zero(num.vars), MPoly.const(num.vars, 1)
    if den.is_const():
        c = den.const_value()
        return num.scale(1 / c), MPoly.const(num.vars, 1)
    g = gcd_mpoly(num, den)
    if not g.is_const():
        num = num.exact_div(g)
        den = den.exact_div(g)
    u = den.content_unit()
    if u != 1:
        den = den.scale(1 / u)
        num = num.scale(1 / u)
    return num, den


def normalize_ratfunc(num: MPoly, den: MPoly) -> RatFunc:
    """Canonical representative of num/den (value-preserving)."""
    return RatFunc(num, den)


def common_denominator(fs) -> tuple[list[MPoly], MPoly]:
    """Numerators of the fs over their least common denominator."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty list")
    den = MPoly.const(fs[0].vars, 1)
    for f in fs:
        den = lcm_mpoly(den, f.den)
    nums = [f.num * den.exact_div(f.den) for f in fs]
    return nums, den
