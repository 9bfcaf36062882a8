"""Univariate integration over a rational-function coefficient field.

Hermite reduction splits off the derivative part; the logarithmic remainder is
represented by Rothstein-Trager pairs computed Lazard-Rioboo-Trager style from
a polynomial remainder sequence, so no algebraic numbers are ever split.

A LogTerm (respoly R, argpoly W, var x) denotes

    sum over roots c of R of  c * log( W(c, .) / lc_x(W)(c, .) ),

i.e. the argument is read monically in the integration variable; W itself is
stored as a canonical primitive polynomial.  The root variable is ROOTVAR.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotCoprime, PreconditionViolated, ZeroDenominator
from .mpoly import MPoly, gcd_mpoly, primitive_in_var, squarefree_factorization
from .ratfunc import RatFunc
from .upoly import (
    UPoly,
    solve_diophantine,
    squarefree_decomposition_upoly,
    upoly_gcd,
    upoly_invert_mod,
    upoly_resultant,
)
from .algebra import coprime_split, trace_sum

ROOTVAR = "_c"


class LogTerm:
    """One Rothstein-Trager pair; see the module docstring for the semantics."""

    __slots__ = ("respoly", "argpoly", "var", "_hash")

    def __init__(self, respoly: MPoly, argpoly: MPoly, var: str):
        self.respoly = respoly
        self.argpoly = argpoly
        self.var = var
        self._hash = None

    @property
    def ring(self) -> tuple[str, ...]:
        return self.respoly.vars

    def __eq__(self, other):
        return (
            isinstance(other, LogTerm)
            and self.var == other.var
            and self.respoly == other.respoly
            and self.argpoly == other.argpoly
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.respoly, self.argpoly, self.var))
            self._hash = h
        return h

    def sort_key(self):
        return (self.respoly.sort_key(), self.argpoly.sort_key(), self.var)

    def __repr__(self):
        return f"LogTerm({self.respoly}, {self.argpoly}; {self.var})"

    def scale(self, q) -> "LogTerm | None":
        """Multiply the denoted function by a rational q (roots scale by q)."""
        q = Fraction(q)
        if q == 0:
            return None
        if q == 1:
            return self
        ring = self.ring
        i = ring.index(ROOTVAR)
        n = self.respoly.degree(ROOTVAR)
        terms = {}
        for e, c in self.respoly.terms.items():
            k = e[i]
            terms[e] = c * q ** (n - k)
        newres = MPoly(ring, terms).primitive()
        return LogTerm(newres, self.argpoly, self.var)

    def partial(self, wrt: str) -> RatFunc:
        """d/d(wrt) of the denoted function, as a rational function (base ring).

        Only the chain-rule part through the argument; the part through the
        residues (d(c) * log) is handled by the residue machinery in pform.
        """
        ring = self.ring
        w = self.argpoly
        lam = w.lc_in_var(self.var)
        z = MPoly.var(ring, ROOTVAR)
        dw = w.deriv(wrt)
        dlam = lam.deriv(wrt)
        num = z * (dw * lam - dlam * w)
        if num.is_zero():
            base = tuple(v for v in ring if v != ROOTVAR)
            return RatFunc.zero(base)
        val = trace_sum(self.respoly, (num, w * lam), ROOTVAR)
        base = tuple(v for v in ring if v != ROOTVAR)
        return val.restrict(base)

    def argpoly_monic_text(self) -> str:
        """Text of the monic argument W/lc_var(W) as a rational expression."""
        from .printer import ratfunc_text

        lam = self.argpoly.lc_in_var(self.var)
        return ratfunc_text(RatFunc(self.argpoly, lam))


class Primitive:
    """Antiderivative shape: a rational part plus a list of LogTerms."""

    __slots__ = ("rational", "logs")

    def __init__(self, rational: RatFunc, logs=()):
        self.rational = rational
        self.logs = tuple(sorted(logs, key=lambda lt: lt.sort_key()))

    def __eq__(self, other):
        return (
            isinstance(other, Primitive)
            and self.rational == other.rational
            and self.logs == other.logs
        )

    def __repr__(self):
        return f"Primitive({self.rational!r}, logs={list(self.logs)})"

    def is_zero(self) -> bool:
        return self.rational.is_zero() and not self.logs

    def __add__(self, other: "Primitive") -> "Primitive":
        from collections import Counter

        counts: Counter = Counter()
        order = []
        for lt in self.logs + other.logs:
            key = (lt.respoly, lt.argpoly, lt.var)
            if key not in counts:
                order.append((key, lt))
            counts[key] += 1
        logs = []
        for key, lt in order:
            scaled = lt.scale(counts[key])
            if scaled is not None:
                logs.append(scaled)
        return Primitive(self.rational + other.rational, logs)

    def __neg__(self) -> "Primitive":
        return Primitive(-self.rational, [lt.scale(-1) for lt in self.logs])

    def partial(self, wrt: str) -> RatFunc:
        out = self.rational.deriv(wrt)
        for lt in self.logs:
            out = out + lt.partial(wrt)
        return out


def _extended_ring(ring: tuple[str, ...]) -> tuple[str, ...]:
    if ROOTVAR in ring:
        return ring
    return ring + (ROOTVAR,)


def hermite_rat(A: MPoly, D: MPoly, var: str) -> tuple[RatFunc, RatFunc]:
    """Hermite reduction: A/D = d(g)/d(var) + h with h proper over a squarefree
    denominator in var.  The var-polynomial part of A/D is integrated into g."""
    if D.is_zero():
        raise ZeroDenominator("hermite_rat: zero denominator")
    if var not in A.vars:
        raise PreconditionViolated(f"{var} is not a ring variable")
    if not A.is_zero():
        g = gcd_mpoly(A, D)
        if g.degree(var) > 0:
            raise NotCoprime("hermite_rat: inputs share a factor in the variable")
    numU = UPoly.from_mpoly(A, var)
    denU = UPoly.from_mpoly(D, var)
    return _hermite_upoly(numU, denU)


def hermite_ratfunc(f: RatFunc, var: str) -> tuple[RatFunc, RatFunc]:
    numU, denU = UPoly.from_ratfunc(f, var)
    return _hermite_upoly(numU, denU)


def _hermite_upoly(numU: UPoly, denU: UPoly) -> tuple[RatFunc, RatFunc]:
    ring = numU.ring
    if numU.is_zero():
        return RatFunc.zero(ring), RatFunc.zero(ring)
    lc = denU.lc()
    d = denU.monic()
    n = numU.scale(lc.inverse())
    q, r = n.divmod(d)
    g = q.integrate().to_ratfunc()
    h = RatFunc.zero(ring)
    if r.is_zero():
        return g, h
    if d.degree() == 0:
        return g, h
    sqf = squarefree_decomposition_upoly(d)
    moduli = [v**e for v, e in sqf]
    nums = coprime_split(r, moduli)
    for (v, e), num in zip(sqf, nums):
        dv = v.deriv()
        j = e
        cur = num
        vf = v.to_ratfunc()
        while j > 1:
            b, c = solve_diophantine(dv, v, cur)
            g = g + b.to_ratfunc().scale(Fraction(-1, j - 1)) / vf ** (j - 1)
            cur = c + b.deriv().scale(Fraction(1, j - 1))
            j -= 1
        if not cur.is_zero():
            h = h + cur.to_ratfunc() / vf
    return g, h


def log_part(h: RatFunc, var: str) -> list[LogTerm]:
    """Rothstein-Trager pairs for a proper h with squarefree denominator in var."""
    ring = h.vars
    if h.is_zero():
        return []
    numU, denU = UPoly.from_ratfunc(h, var)
    if denU.degree() < 1:
        raise PreconditionViolated("log_part: denominator is free of the variable")
    if numU.degree() >= denU.degree():
        raise PreconditionViolated("log_part: input is not proper")
    if upoly_gcd(denU, denU.deriv()).degree() != 0:
        raise PreconditionViolated("log_part: denominator is not squarefree")
    ring2 = _extended_ring(ring)
    d = denU.monic().extend_ring(ring2)
    a = numU.scale(denU.lc().inverse()).extend_ring(ring2)
    z = RatFunc.var(ring2, ROOTVAR)
    u = a - d.deriv().scale(z)
    res = upoly_resultant(d, u)
    if res.is_zero():
        raise AssertionError("Rothstein-Trager resultant vanished")
    res_poly = res.num  # denominator is free of the root variable
    classes = [
        (qp, mult)
        for qp, mult in squarefree_factorization(res_poly, ROOTVAR).factors
        if qp.degree(ROOTVAR) > 0
    ]
    # polynomial remainder sequence of (d, u); any PRS works once the chosen
    # element is made primitive, so use the plain Euclidean one
    prs = [d, u]
    while prs[-1].degree() > 0:
        rem = prs[-2] % prs[-1]
        if rem.is_zero():
            break
        prs.append(rem.monic())
    by_degree = {p.degree(): p for p in prs[1:]}
    terms = []
    for qi, mult in classes:
        qi = qi.primitive()
        if mult == d.degree():
            s_up = d
        else:
            s_up = by_degree.get(mult)
            if s_up is None:
                raise AssertionError("PRS has no element of the required degree")
        w_pre = s_up.to_ratfunc().num
        w_pre = primitive_in_var(w_pre, var).primitive()
        lam = w_pre.lc_in_var(var)
        qi_up = UPoly.from_mpoly(qi, ROOTVAR)
        lam_up = UPoly.from_mpoly(lam, ROOTVAR)
        inv = upoly_invert_mod(lam_up % qi_up, qi_up)
        if inv is None:
            raise AssertionError("argument leading coefficient not invertible")
        coeffs = [UPoly.from_mpoly(c, ROOTVAR) for c in w_pre.var_coeffs(var)]
        monic_coeffs = [((c * inv) % qi_up).to_ratfunc() for c in coeffs]
        w_monic = RatFunc.zero(ring2)
        xv = RatFunc.var(ring2, var)
        for k, c in enumerate(monic_coeffs):
            w_monic = w_monic + c * xv**k
        w = w_monic.num.primitive()
        terms.append(LogTerm(qi, w, var))
    terms.sort(key=lambda lt: lt.sort_key())
    # internal soundness check: the var-derivative of the log sum gives back h
    back = RatFunc.zero(ring)
    for lt in terms:
        back = back + lt.partial(var)
    if back != h:
        raise AssertionError("log part does not differentiate back to the input")
    return terms


def integrate_univariate(f: RatFunc, var: str) -> Primitive:
    """Antiderivative of f with respect to var as rational part plus logs."""
    g, h = hermite_ratfunc(f, var)
    logs = log_part(h, var) if not h.is_zero() else []
    return Primitive(g, logs)


def primitive_derivative(prim: Primitive, var: str) -> RatFunc:
    return prim.partial(var)
