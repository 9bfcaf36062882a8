"""Dense univariate polynomials in a distinguished variable over the rational
function field in the remaining variables.

This is the workhorse view for Euclidean algorithms: division, extended gcd,
Yun decomposition, resultants, and modular inverses.  Coefficients are RatFunc
values free of the distinguished variable.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MPoly
from .ratfunc import RatFunc


class UPoly:
    __slots__ = ("var", "ring", "coeffs")

    def __init__(self, var: str, ring: tuple[str, ...], coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.var = var
        self.ring = ring
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, var: str, ring: tuple[str, ...]) -> "UPoly":
        return cls(var, ring, [])

    @classmethod
    def const(cls, var: str, ring: tuple[str, ...], c: RatFunc) -> "UPoly":
        return cls(var, ring, [c])

    @classmethod
    def from_mpoly(cls, p: MPoly, var: str) -> "UPoly":
        return cls(var, p.vars, [RatFunc.from_mpoly(c) for c in p.var_coeffs(var)])

    @classmethod
    def from_ratfunc(cls, f: RatFunc, var: str) -> tuple["UPoly", "UPoly"]:
        """Split f into (numerator, denominator) as polynomials in var."""
        return cls.from_mpoly(f.num, var), cls.from_mpoly(f.den, var)

    # -- basics ----------------------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, UPoly)
            and self.var == other.var
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"UPoly({self.var}; {[str(c) for c in self.coeffs]})"

    def lc(self) -> RatFunc:
        return self.coeffs[-1]

    def coeff(self, k: int) -> RatFunc:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RatFunc.zero(self.ring)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def to_ratfunc(self) -> RatFunc:
        """Collapse back into a RatFunc over the full ring."""
        out = RatFunc.zero(self.ring)
        x = RatFunc.var(self.ring, self.var)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def to_mpoly_pair(self) -> tuple[MPoly, MPoly]:
        """Clear coefficient denominators: returns (P, d) with self = P/d, P an MPoly."""
        f = self.to_ratfunc()
        return f.num, f.den

    def extend_ring(self, newring: tuple[str, ...]) -> "UPoly":
        return UPoly(self.var, newring, [c.extend(newring) for c in self.coeffs])

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(
            self.var, self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __neg__(self) -> "UPoly":
        return UPoly(self.var, self.ring, [-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        if self.is_zero() or other.is_zero():
            return UPoly.zero(self.var, self.ring)
        out = [RatFunc.zero(self.ring) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.var, self.ring, out)

    def scale(self, c) -> "UPoly":
        if not isinstance(c, RatFunc):
            c = RatFunc.const(self.ring, c)
        return UPoly(self.var, self.ring, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "UPoly":
        """Multiply by var^k."""
        if self.is_zero():
            return self
        return UPoly(self.var, self.ring, [RatFunc.zero(self.ring)] * k + list(self.coeffs))

    def __pow__(self, n: int) -> "UPoly":
        result = UPoly.const(self.var, self.ring, RatFunc.const(self.ring, 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, d: "UPoly") -> tuple["UPoly", "UPoly"]:
        if d.is_zero():
            raise ZeroDivisionError("UPoly division by zero")
        q = [RatFunc.zero(self.ring)] * max(0, len(self.coeffs) - len(d.coeffs) + 1)
        r = list(self.coeffs)
        dlc = d.lc()
        dd = d.degree()
        while len(r) - 1 >= dd and r:
            f = r[-1] / dlc
            off = len(r) - 1 - dd
            q[off] = f
            for k in range(len(d.coeffs)):
                r[off + k] = r[off + k] - f * d.coeffs[k]
            while r and r[-1].is_zero():
                r.pop()
        return UPoly(self.var, self.ring, q), UPoly(self.var, self.ring, r)

    def __mod__(self, d: "UPoly") -> "UPoly":
        return self.divmod(d)[1]

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self.scale(self.lc().inverse())

    def deriv(self) -> "UPoly":
        return UPoly(
            self.var,
            self.ring,
            [c.scale(k) for k, c in enumerate(self.coeffs)][1:],
        )

    def integrate(self) -> "UPoly":
        out = [RatFunc.zero(self.ring)]
        for k, c in enumerate(self.coeffs):
            out.append(c.scale(Fraction(1, k + 1)))
        return UPoly(self.var, self.ring, out)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd via the Euclidean algorithm over the coefficient field."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def upoly_ext_gcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    ring, var = a.ring, a.var
    one = UPoly.const(var, ring, RatFunc.const(ring, 1))
    zero = UPoly.zero(var, ring)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = r0.lc().inverse()
    return r0.scale(c), s0.scale(c), t0.scale(c)


def upoly_invert_mod(a: UPoly, m: UPoly) -> UPoly | None:
    """Inverse of a modulo m, or None if gcd(a, m) != 1."""
    g, s, _ = upoly_ext_gcd(a % m, m)
    if g.degree() != 0:
        return None
    return s % m


def solve_diophantine(a: UPoly, b: UPoly, w: UPoly) -> tuple[UPoly, UPoly]:
    """Solve s*a + t*b = w with deg(s) < deg(b); requires gcd(a, b) = 1."""
    g, sa, tb = upoly_ext_gcd(a, b)
    if g.degree() != 0:
        raise ArithmeticError("diophantine solve needs coprime inputs")
    # g is monic 1
    s = (sa * w) % b
    t = (w - s * a).divmod(b)[0]
    return s, t


def upoly_resultant(a: UPoly, b: UPoly) -> RatFunc:
    """Resultant via the Euclidean recursion over the coefficient field."""
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return RatFunc.zero(ring)
    res = RatFunc.const(ring, 1)
    if a.degree() < b.degree():
        if (a.degree() * b.degree()) % 2 == 1:
            res = -res
        a, b = b, a
    while b.degree() > 0:
        r = a % b
        if r.is_zero():
            return RatFunc.zero(ring)
        da, db, dr = a.degree(), b.degree(), r.degree()
        if (da * db) % 2 == 1:
            res = -res
        res = res * b.lc() ** (da - dr)
        a, b = b, r
    return res * b.lc() ** a.degree()


def squarefree_decomposition_upoly(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun over the coefficient field: p = lc * prod(f_i^i) with f_i monic squarefree."""
    out: list[tuple[UPoly, int]] = []
    p = p.monic()
    if p.degree() <= 0:
        return out
    dp = p.deriv()
    g = upoly_gcd(p, dp)
    if g.degree() == 0:
        return [(p, 1)]
    c = p.divmod(g)[0]
    d = dp.divmod(g)[0] - c.deriv()
    i = 1
    while c.degree() > 0:
        f = upoly_gcd(c, d)
        if f.degree() > 0:
            out.append((f, i))
            c = c.divmod(f)[0]
            d = d.divmod(f)[0]
        d = d - c.deriv()
        i += 1
    return out
