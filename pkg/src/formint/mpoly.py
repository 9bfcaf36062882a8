"""Sparse multivariate polynomials over Q with exact rational coefficients.

An MPoly is a map from exponent vectors to nonzero Fractions over a fixed,
ordered variable tuple.  The global monomial order is graded reverse
lexicographic on that tuple.  Canonical polynomials have integer coefficients
with content 1 and a positive leading coefficient, which makes equality of
canonical values representational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import BothZero, ZeroInput

Exponent = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _grevlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


class MPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: tuple[str, ...], terms: dict[Exponent, Fraction]):
        # terms must already be zero-free; constructors below enforce this
        self.vars = vars
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: tuple[str, ...]) -> "MPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: tuple[str, ...], value) -> "MPoly":
        q = Fraction(value)
        if q == 0:
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): q})

    @classmethod
    def var(cls, vars: tuple[str, ...], name: str) -> "MPoly":
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): _ONE})

    @classmethod
    def from_terms(cls, vars: tuple[str, ...], terms) -> "MPoly":
        out: dict[Exponent, Fraction] = {}
        for e, c in dict(terms).items():
            c = Fraction(c)
            if c != 0:
                out[tuple(e)] = c
        return cls(vars, out)

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            self._hash = h
        return h

    def __repr__(self):
        from .printer import mpoly_text

        return f"MPoly({mpoly_text(self)})"

    def __str__(self):
        from .printer import mpoly_text

        return mpoly_text(self)

    def sort_key(self):
        return tuple(sorted((e, c.numerator, c.denominator) for e, c in self.terms.items()))

    def is_const(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        [(e, c)] = self.terms.items()
        if sum(e) != 0:
            raise ValueError("not a constant")
        return c

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def free_of(self, var: str) -> bool:
        if var not in self.vars:
            return True
        i = self.vars.index(var)
        return all(e[i] == 0 for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=_grevlex_key)
        return e, self.terms[e]

    def leading_coeff(self) -> Fraction:
        return self.leading()[1]

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.vars, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.vars)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, _ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    def scale(self, q) -> "MPoly":
        q = Fraction(q)
        if q == 0:
            return MPoly.zero(self.vars)
        return MPoly(self.vars, {e: c * q for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def deriv(self, var: str) -> "MPoly":
        i = self.vars.index(var)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                s = out.get(e2, _ZERO) + c * k
                if s:
                    out[e2] = s
                else:
                    out.pop(e2, None)
        return MPoly(self.vars, out)

    def eval(self, subs: dict) -> "MPoly":
        """Partially evaluate at rational points; result stays in the same ring."""
        idx = {self.vars.index(v): Fraction(q) for v, q in subs.items()}
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            val = c
            e2 = list(e)
            for i, q in idx.items():
                val *= q ** e[i]
                e2[i] = 0
            if val:
                key = tuple(e2)
                s = out.get(key, _ZERO) + val
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return MPoly(self.vars, out)

    # -- ring moves ----------------------------------------------------------

    def extend(self, newvars: tuple[str, ...]) -> "MPoly":
        """Reinterpret over a superset variable tuple."""
        if newvars == self.vars:
            return self
        pos = [newvars.index(v) for v in self.vars]
        n = len(newvars)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for p, x in zip(pos, e):
                e2[p] = x
            out[tuple(e2)] = c
        return MPoly(newvars, out)

    def restrict(self, newvars: tuple[str, ...]) -> "MPoly":
        """Move to a smaller ring; dropped variables must be unused."""
        pos = [newvars.index(v) if v in newvars else None for v in self.vars]
        n = len(newvars)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for p, x in zip(pos, e):
                if p is None:
                    if x:
                        raise ValueError("cannot drop a used variable")
                else:
                    e2[p] = x
            out[tuple(e2)] = c
        return MPoly(newvars, out)

    def rename(self, mapping: dict) -> "MPoly":
        newvars = tuple(mapping.get(v, v) for v in self.vars)
        return MPoly(newvars, dict(self.terms))

    # -- normalization -------------------------------------------------------

    def content_unit(self) -> Fraction:
        """The signed rational u with self = u * primitive(self)."""
        if not self.terms:
            return _ONE
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        u = Fraction(num_gcd, den_lcm)
        if self.leading_coeff() < 0:
            u = -u
        return u

    def primitive(self) -> "MPoly":
        """Integer coefficients, content 1, positive leading coefficient."""
        if not self.terms:
            return self
        u = self.content_unit()
        if u == 1:
            return self
        return self.scale(1 / u)

    def monic_part(self) -> tuple[Fraction, "MPoly"]:
        u = self.content_unit()
        return u, (self.scale(1 / u) if u != 1 else self)

    # -- division ------------------------------------------------------------

    def divmod_single(self, d: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Division by a single divisor under grevlex.

        Returns (q, r) with self = q*d + r and no term of r divisible by lt(d).
        """
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        de, dc = d.leading()
        q: dict[Exponent, Fraction] = {}
        r: dict[Exponent, Fraction] = {}
        work = dict(self.terms)
        while work:
            e = max(work, key=_grevlex_key)
            c = work.pop(e)
            diff = tuple(x - y for x, y in zip(e, de))
            if all(x >= 0 for x in diff):
                coef = c / dc
                q[diff] = q.get(diff, _ZERO) + coef
                for e2, c2 in d.terms.items():
                    if e2 == de:
                        continue
                    key = tuple(x + y for x, y in zip(diff, e2))
                    s = work.get(key, _ZERO) - coef * c2
                    if s:
                        work[key] = s
                    else:
                        work.pop(key, None)
            else:
                r[e] = c
        return MPoly.from_terms(self.vars, q), MPoly(self.vars, r)

    def exact_div(self, d: "MPoly") -> "MPoly":
        q, r = self.divmod_single(d)
        if not r.is_zero():
            raise ArithmeticError("exact division failed")
        return q

    def divides(self, other: "MPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        try:
            other.exact_div(self)
            return True
        except ArithmeticError:
            return False

    # -- univariate views -----------------------------------------------------

    def var_coeffs(self, var: str) -> list["MPoly"]:
        """Dense coefficient list in var; coefficients are free of var."""
        i = self.vars.index(var)
        n = self.degree(var)
        if n < 0:
            return []
        out: list[dict] = [dict() for _ in range(n + 1)]
        for e, c in self.terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1 :]
            out[k][e2] = c
        return [MPoly(self.vars, t) for t in out]

    @classmethod
    def from_var_coeffs(cls, vars: tuple[str, ...], var: str, coeffs) -> "MPoly":
        i = vars.index(var)
        out: dict[Exponent, Fraction] = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                e2 = e[:i] + (e[i] + k,) + e[i + 1 :]
                s = out.get(e2, _ZERO) + c
                if s:
                    out[e2] = s
                else:
                    out.pop(e2, None)
        return cls(vars, out)

    def lc_in_var(self, var: str) -> "MPoly":
        cs = self.var_coeffs(var)
        return cs[-1] if cs else MPoly.zero(self.vars)


# -- pseudo-division ----------------------------------------------------------


def pseudo_rem(a: MPoly, b: MPoly, var: str) -> MPoly:
    """prem(a, b) = rem(lc(b)^(deg a - deg b + 1) * a, b) with respect to var."""
    da, db = a.degree(var), b.degree(var)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if da < db:
        return a
    lcb = b.lc_in_var(var)
    x = MPoly.var(a.vars, var)
    r = a
    steps = 0
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        r = r * lcb - b * r.lc_in_var(var) * x ** (dr - db)
        steps += 1
    if steps < da - db + 1:
        r = r * lcb ** (da - db + 1 - steps)
    return r


def content_in_var(p: MPoly, var: str) -> MPoly:
    """Polynomial content: gcd of the var-coefficients (free of var, canonical)."""
    cs = [c for c in p.var_coeffs(var) if not c.is_zero()]
    if not cs:
        return MPoly.zero(p.vars)
    g = cs[0]
    for c in cs[1:]:
        g = gcd_mpoly(g, c)
        if g.is_const():
            break
    return g.primitive()


def primitive_in_var(p: MPoly, var: str) -> MPoly:
    c = content_in_var(p, var)
    if c.is_const():
        return p
    return p.exact_div(c)


# -- gcd ----------------------------------------------------------------------


def _monomial_gcd(p: MPoly, q: MPoly) -> MPoly:
    mins = None
    for poly in (p, q):
        for e in poly.terms:
            if mins is None:
                mins = list(e)
            else:
                mins = [min(a, b) for a, b in zip(mins, e)]
    return MPoly(p.vars, {tuple(mins): _ONE})


def _gcd_univariate_q(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Monic Euclid for polynomials in one variable over Q (fast path)."""
    i = p.vars.index(var)

    def coeffs(m: MPoly) -> list[Fraction]:
        out = [_ZERO] * (m.degree(var) + 1)
        for e, c in m.terms.items():
            out[e[i]] = c
        return out

    a, b = coeffs(p), coeffs(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        inv = 1 / b[-1]
        while len(a) >= len(b):
            f = a[-1] * inv
            off = len(a) - len(b)
            for k in range(len(b)):
                a[off + k] -= f * b[k]
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    terms = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * len(p.vars)
            e[i] = k
            terms[tuple(e)] = c
    return MPoly(p.vars, terms).primitive()


def _prs_gcd(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Subresultant PRS gcd of polynomials primitive with respect to var."""
    if a.degree(var) < b.degree(var):
        a, b = b, a
    one = MPoly.const(a.vars, 1)
    g = h = one
    while True:
        delta = a.degree(var) - b.degree(var)
        r = pseudo_rem(a, b, var)
        if r.is_zero():
            break
        if r.degree(var) == 0:
            return one
        a, b = b, r.exact_div(g * h**delta)
        g = a.lc_in_var(var)
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g**delta).exact_div(h ** (delta - 1))
    return primitive_in_var(b, var).primitive()


@lru_cache(maxsize=1 << 14)
def _gcd_cached(p: MPoly, q: MPoly) -> MPoly:
    pv = p.used_vars()
    qv = q.used_vars()
    if not pv or not qv:
        return MPoly.const(p.vars, 1)
    if len(p.terms) == 1 or len(q.terms) == 1:
        return _monomial_gcd(p, q)
    if len(pv) == 1 and pv == qv:
        return _gcd_univariate_q(p, q, pv[0])
    var = None
    for v in reversed(p.vars):
        if v in pv or v in qv:
            var = v
            break
    if p.free_of(var):
        return gcd_mpoly(p, content_in_var(q, var))
    if q.free_of(var):
        return gcd_mpoly(q, content_in_var(p, var))
    cp, cq = content_in_var(p, var), content_in_var(q, var)
    pp = p.exact_div(cp) if not cp.is_const() else p
    qq = q.exact_div(cq) if not cq.is_const() else q
    cont = gcd_mpoly(cp, cq)
    core = _prs_gcd(pp.primitive(), qq.primitive(), var)
    return (cont * core).primitive()


def gcd_mpoly(p: MPoly, q: MPoly) -> MPoly:
    """Canonical (primitive, positive-leading) gcd; divides both inputs exactly."""
    if p.is_zero() and q.is_zero():
        raise BothZero("gcd of two zero polynomials")
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    if p == q:
        return p.primitive()
    return _gcd_cached(p.primitive(), q.primitive())


def lcm_mpoly(p: MPoly, q: MPoly) -> MPoly:
    if p.is_zero() or q.is_zero():
        return MPoly.zero(p.vars)
    return (p * q).exact_div(gcd_mpoly(p, q)).primitive()


# -- squarefree factorization ---------------------------------------------------


class SqfFactorization:
    """unit * prod(factor^multiplicity) reconstructs the input."""

    __slots__ = ("unit", "factors")

    def __init__(self, unit: Fraction, factors: list[tuple[MPoly, int]]):
        self.unit = unit
        self.factors = factors

    def expand(self, vars: tuple[str, ...]) -> MPoly:
        out = MPoly.const(vars, self.unit)
        for f, m in self.factors:
            out = out * f**m
        return out

    def __repr__(self):
        return f"SqfFactorization({self.unit}, {self.factors})"


def squarefree_factorization(p: MPoly, var: str) -> SqfFactorization:
    """Yun decomposition with respect to var; factors pairwise coprime.

    A factor free of var (the var-content of p) is reported with multiplicity 1.
    """
    if p.is_zero():
        raise ZeroInput("squarefree factorization of zero")
    unit, prim = p.monic_part()
    factors: list[tuple[MPoly, int]] = []
    cont = content_in_var(prim, var)
    if not cont.is_const():
        prim = prim.exact_div(cont)
        factors.append((cont, 1))
    u = prim.content_unit()
    if u != 1:
        unit *= u
        prim = prim.scale(1 / u)
    if prim.degree(var) <= 0:
        if not prim.is_const():  # var-free residue folds into the content factor
            factors.append((prim, 1))
        else:
            unit *= prim.const_value()
        return SqfFactorization(unit, factors)
    dp = prim.deriv(var)
    g = gcd_mpoly(prim, dp)
    if g.is_const():
        factors.append((prim, 1))
        return SqfFactorization(unit, factors)
    c = prim.exact_div(g)
    d = dp.exact_div(g) - c.deriv(var)
    i = 1
    while c.degree(var) > 0:
        f = gcd_mpoly(c, d) if not d.is_zero() else c.primitive()
        if f.degree(var) > 0:
            factors.append((f, i))
            c = c.exact_div(f)
            d = d.exact_div(f)
        d = d - c.deriv(var)
        i += 1
    if not c.is_const():
        factors.append((c, 1))
    # canonical factor scaling leaves a rational unit; recover it exactly
    rebuilt = MPoly.const(p.vars, 1)
    for f, m in factors:
        rebuilt = rebuilt * f**m
    e, c0 = rebuilt.leading()
    pe = p.terms.get(e)
    if pe is None or rebuilt.scale(pe / c0) != p:
        raise AssertionError("squarefree reconstruction failed")
    return SqfFactorization(pe / c0, factors)
