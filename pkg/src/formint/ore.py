"""Linear differential operators in one parameter with rational-function
coefficients, under the commutation rule Dt * a = a * Dt + da/dt."""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb

from .mpoly import MPoly, gcd_mpoly, lcm_mpoly
from .ratfunc import RatFunc


class OreOp:
    """sum coeffs[i] * Dt^i; coeffs are rational functions of the parameter."""

    __slots__ = ("param", "coeffs")

    def __init__(self, param: str, coeffs):
        ring = (param,)
        cs = []
        for c in coeffs:
            if c.vars != ring:
                c = RatFunc(c.num.restrict(ring), c.den.restrict(ring))
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.param = param
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, param: str = "t") -> "OreOp":
        return cls(param, [])

    @classmethod
    def identity(cls, param: str = "t") -> "OreOp":
        return cls(param, [RatFunc.const((param,), 1)])

    @classmethod
    def d(cls, param: str = "t") -> "OreOp":
        ring = (param,)
        return cls(param, [RatFunc.zero(ring), RatFunc.const(ring, 1)])

    @classmethod
    def from_coeff_list(cls, param: str, coeffs) -> "OreOp":
        return cls(param, coeffs)

    # -- basics --------------------------------------------------------------------

    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RatFunc:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RatFunc.zero((self.param,))

    def __eq__(self, other):
        return (
            isinstance(other, OreOp)
            and self.param == other.param
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"OreOp({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            dt = "" if i == 0 else ("Dt" if i == 1 else f"Dt^{i}")
            neg = c.num.leading_coeff() < 0
            if neg:
                c = -c
            text = str(c)
            if dt and text == "1":
                body = dt
            else:
                if ("+" in text[1:]) or ("-" in text[1:]) or "/" in text:
                    text = f"({text})"
                body = text + ("*" + dt if dt else "")
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out or "0"

    def __add__(self, other: "OreOp") -> "OreOp":
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOp(self.param, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "OreOp":
        return OreOp(self.param, [-c for c in self.coeffs])

    def __sub__(self, other: "OreOp") -> "OreOp":
        return self + (-other)

    def scale(self, f: RatFunc) -> "OreOp":
        """Left multiplication by a rational function of the parameter."""
        return OreOp(self.param, [c * f for c in self.coeffs])

    def apply(self, f: RatFunc) -> RatFunc:
        """sum coeffs[i] * (d/dt)^i f, in f's ring."""
        if self.is_zero():
            return RatFunc.zero(f.vars)
        ring = f.vars
        out = RatFunc.zero(ring)
        df = f
        for i, c in enumerate(self.coeffs):
            if i > 0:
                df = df.deriv(self.param)
            if not c.is_zero():
                out = out + c.extend(ring) * df
        return out

    def derivative_of_coeffs(self) -> "OreOp":
        return OreOp(self.param, [c.deriv(self.param) for c in self.coeffs])

    def normalize(self) -> "OreOp":
        """Content-free polynomial coefficients with positive leading coefficient."""
        if self.is_zero():
            return self
        ring = (self.param,)
        den = MPoly.const(ring, 1)
        for c in self.coeffs:
            den = lcm_mpoly(den, c.den)
        nums = [c.num * den.exact_div(c.den) for c in self.coeffs]
        cont = None
        for n in nums:
            if n.is_zero():
                continue
            cont = n.primitive() if cont is None else gcd_mpoly(cont, n)
        nums = [n.exact_div(cont) for n in nums]
        # rational content across all coefficients, signed by the leading one
        num_gcd = 0
        den_lcm = 1
        for n in nums:
            for c in n.terms.values():
                num_gcd = math.gcd(num_gcd, c.numerator)
                den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        u = Fraction(num_gcd, den_lcm)
        if nums[-1].leading_coeff() < 0:
            u = -u
        return OreOp(self.param, [RatFunc.from_mpoly(n.scale(1 / u)) for n in nums])


def ore_multiply(a: OreOp, b: OreOp) -> OreOp:
    """Composition a ∘ b under Dt*c = c*Dt + dc/dt."""
    param = a.param
    out = OreOp.zero(param)
    for i, c in enumerate(a.coeffs):
        if c.is_zero():
            continue
        # Dt^i ∘ b = sum_k C(i,k) * b^(i-k-th coefficient derivative) shifted by k
        bi = b
        layers = [b]
        for _ in range(i):
            layers.append(layers[-1].derivative_of_coeffs())
        term = OreOp.zero(param)
        for k in range(i + 1):
            dbk = layers[i - k]  # coefficients differentiated i-k times
            shifted = OreOp(param, [RatFunc.zero((param,))] * k + list(dbk.coeffs))
            term = term + shifted.scale(RatFunc.const((param,), comb(i, k)))
        out = out + term.scale(c)
    return out


def ore_apply(op: OreOp, f: RatFunc) -> RatFunc:
    return op.apply(f)
