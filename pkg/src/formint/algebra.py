"""Resultants, partial fractions, and trace sums over the rational function field."""

from __future__ import annotations

from fractions import Fraction

from .errors import NonInvertibleDenominator, NotPolynomialInVar, PreconditionViolated, ZeroDenominator
from .mpoly import MPoly, gcd_mpoly
from .ratfunc import RatFunc
from .upoly import (
    UPoly,
    squarefree_decomposition_upoly,
    upoly_ext_gcd,
    upoly_gcd,
    upoly_invert_mod,
    upoly_resultant,
)


def resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Resultant with respect to var; an MPoly free of var, zero iff common root."""
    if var not in p.vars or var not in q.vars:
        raise NotPolynomialInVar(f"{var} is not a ring variable")
    if p.is_zero() or q.is_zero():
        raise NotPolynomialInVar("resultant of the zero polynomial")
    r = upoly_resultant(UPoly.from_mpoly(p, var), UPoly.from_mpoly(q, var))
    if not r.is_polynomial():
        raise AssertionError("resultant of polynomials must be polynomial")
    return r.num


def coprime_split(num: UPoly, moduli: list[UPoly]) -> list[UPoly]:
    """Split num / prod(moduli) across pairwise coprime monic moduli.

    Requires deg(num) < sum of the moduli degrees; returns numerators n_i with
    deg(n_i) < deg(moduli_i) and sum n_i/m_i = num/prod(m_i).
    """
    if len(moduli) == 1:
        return [num]
    a = moduli[0]
    b = moduli[1]
    for m in moduli[2:]:
        b = b * m
    g, _, t = upoly_ext_gcd(a, b)
    if g.degree() != 0:
        raise ArithmeticError("moduli are not pairwise coprime")
    n_a = (num * t) % a
    rest = (num - n_a * b).divmod(a)
    if not rest[1].is_zero():
        raise AssertionError("coprime split failed")
    return [n_a] + coprime_split(rest[0], moduli[1:])


def partial_fractions(f: RatFunc, var: str):
    """Partial fraction decomposition of f with respect to var.

    Returns (polypart, terms) where polypart is a RatFunc polynomial in var and
    terms is a list of (denfactor: MPoly, power: int, numerator: RatFunc) with
    each numerator of smaller var-degree than its denfactor.  Denominator
    factors are the squarefree-decomposition factors, not irreducible ones.
    """
    if var not in f.vars:
        raise NotPolynomialInVar(f"{var} is not a ring variable")
    if f.is_zero():
        return RatFunc.zero(f.vars), []
    numU, denU = UPoly.from_ratfunc(f, var)
    if denU.degree() <= 0:
        return f, []
    lc = denU.lc()
    d = denU.monic()
    n = numU.scale(lc.inverse())
    q, r = n.divmod(d)
    polypart = q.to_ratfunc()
    if r.is_zero():
        return polypart, []
    sqf = squarefree_decomposition_upoly(d)
    moduli = [v**e for v, e in sqf]
    nums = coprime_split(r, moduli)
    terms = []
    for (v, e), num in zip(sqf, nums):
        # v-adic digits: num = sum digits[j] * v^j with deg(digit) < deg(v)
        digits = []
        cur = num
        for _ in range(e):
            cur, dig = cur.divmod(v)
            digits.append(dig)
        vf = v.to_ratfunc()
        # clear v's coefficient denominators into a canonical MPoly factor
        w = vf.num
        lam = vf.den  # v = w/lam with lam free of var
        lam_rf = RatFunc.from_mpoly(lam)
        for j, dig in enumerate(digits):
            if dig.is_zero():
                continue
            power = e - j
            numerator = dig.to_ratfunc() * lam_rf**power
            terms.append((w, power, numerator))
    terms.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return polypart, terms


def recombine_partial_fractions(polypart: RatFunc, terms, vars) -> RatFunc:
    out = polypart
    for w, power, numerator in terms:
        out = out + numerator / RatFunc.from_mpoly(w) ** power
    return out


def trace_sum(respoly: MPoly, h: tuple[MPoly, MPoly], rootvar: str) -> RatFunc:
    """Sum of h(c, .) over the roots c of respoly, without splitting the roots.

    h is a (numerator, denominator) pair; the denominator must be invertible
    modulo respoly.  Computed by a modular inverse followed by the trace of the
    multiplication map, with power sums from Newton's identities.
    """
    num, den = h
    if den.is_zero():
        raise ZeroDenominator("trace_sum denominator is zero")
    ring = respoly.vars
    r_up = UPoly.from_mpoly(respoly, rootvar)
    n = r_up.degree()
    if n < 0:
        raise PreconditionViolated("respoly is zero")
    if n == 0:
        return RatFunc.zero(ring)
    g = upoly_gcd(r_up, r_up.deriv())
    if g.degree() != 0:
        raise PreconditionViolated("respoly is not squarefree in the root variable")
    den_up = UPoly.from_mpoly(den, rootvar)
    inv = upoly_invert_mod(den_up % r_up, r_up)
    if inv is None:
        raise NonInvertibleDenominator("denominator shares a factor with respoly")
    w = (UPoly.from_mpoly(num, rootvar) * inv) % r_up
    if w.is_zero():
        return RatFunc.zero(ring)
    # power sums p_0 .. p_{n-1} of the roots via Newton's identities
    r_monic = r_up.monic()
    e = [RatFunc.zero(ring)] * (n + 1)
    for i in range(1, n + 1):
        sign = Fraction(1) if i % 2 == 0 else Fraction(-1)
        e[i] = r_monic.coeff(n - i).scale(sign)
    p = [RatFunc.zero(ring)] * n
    p[0] = RatFunc.const(ring, n)
    for k in range(1, n):
        acc = e[k].scale(k if (k % 2 == 1) else -k)
        for i in range(1, k):
            term = e[i] * p[k - i]
            acc = acc + (term if i % 2 == 1 else -term)
        p[k] = acc
    out = RatFunc.zero(ring)
    for k in range(min(len(w.coeffs), n)):
        c = w.coeff(k)
        if not c.is_zero():
            out = out + c * p[k]
    if not out.free_of(rootvar):
        raise AssertionError("trace did not eliminate the root variable")
    return out


def trace_sum_rf(respoly: MPoly, h: RatFunc, rootvar: str) -> RatFunc:
    return trace_sum(respoly, (h.num, h.den), rootvar)
