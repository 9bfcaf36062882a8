"""Canonical text rendering for polynomials, rational functions, and forms.

Output is compact (no spaces) and re-parses to an equal value; golden tests
diff these strings byte-for-byte.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .mpoly import MPoly, _grevlex_key


def _monomial_text(vars, e) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def mpoly_text(p: MPoly) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)
    out = []
    for e, c in items:
        mono = _monomial_text(p.vars, e)
        neg = c < 0
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def _needs_parens_as_factor(p: MPoly) -> bool:
    """True if p's text cannot stand as a single '*'/'/' factor."""
    if len(p.terms) != 1:
        return True
    [(e, c)] = p.terms.items()
    nvars = sum(1 for k in e if k)
    if c < 0:
        return True
    if c != 1:
        return nvars > 0 or c.denominator != 1
    return nvars > 1


def ratfunc_text(f) -> str:
    num, den = f.num, f.den
    if num.is_zero():
        return "0"
    # display with an integer numerator: fold its coefficient denominators into den
    lcm = 1
    for c in num.terms.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    if lcm != 1:
        num = num.scale(lcm)
        den = den.scale(lcm)
    if den.is_const() and den.const_value() == 1:
        return mpoly_text(num)
    ntext = mpoly_text(num)
    if len(num.terms) > 1:
        ntext = f"({ntext})"
    dtext = mpoly_text(den)
    if _needs_parens_as_factor(den):
        dtext = f"({dtext})"
    return f"{ntext}/{dtext}"


def form_text(w) -> str:
    """Render a differential form as a sum of coeff*d(...) terms."""
    if not w.coeffs:
        return "0"
    out = []
    for idx in sorted(w.coeffs):
        coeff = w.coeffs[idx]
        dpart = "d(" + ",".join(w.fvars[i] for i in idx) + ")"
        neg = coeff.num.leading_coeff() < 0
        if neg:
            coeff = -coeff
        text = ratfunc_text(coeff)
        if text == "1":
            body = dpart
        else:
            if len(coeff.num.terms) > 1 and "/" not in text:
                text = f"({text})"
            body = f"{text}*{dpart}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def fraction_text(q: Fraction) -> str:
    return str(q)
