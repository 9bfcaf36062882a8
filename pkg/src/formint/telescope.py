"""Reduction-based creative telescoping for closed rational 1-forms in one parameter.

The bivariate kernel Hermite-reduces successive t-derivatives of the integrand
to proper fractions over squarefree denominators and looks for the first
k(t)-linear dependence among the residuals; such a residual vanishes iff the
combination has a rational antiderivative, which makes the telescoper minimal.
The 1-form algorithm threads this kernel through the Hermite reduction of the
form, one variable at a time, composing the per-stage operators.
"""

from __future__ import annotations

from .errors import RationalityAssertionFailed
from .forms import DiffForm, exterior_derivative, require_closed
from .mpoly import MPoly
from .oneform import hermite_one_form
from .ore import OreOp, ore_multiply
from .ratfunc import RatFunc, common_denominator
from .univar import Primitive, hermite_ratfunc


class Telescoped:
    """Operator plus certificate with apply(L, input) = d(certificate)."""

    __slots__ = ("operator", "certificate")

    def __init__(self, operator: OreOp, certificate: Primitive):
        self.operator = operator
        self.certificate = certificate

    def __repr__(self):
        return f"Telescoped({self.operator}, certificate={self.certificate!r})"


def _solve_dependence(columns, param: str):
    """First k(t)-linear dependence sum a_i * columns[i] = 0 with a_last != 0.

    columns are RatFunc values in (param, x...); returns the a_i over (param,)
    or None.  Assumes columns[:-1] are known to be independent.
    """
    if columns[-1].is_zero():
        ring = (param,)
        zero = RatFunc.zero(ring)
        return [zero] * (len(columns) - 1) + [RatFunc.const(ring, 1)]
    nums, _ = common_denominator(columns)
    ring = nums[0].vars
    monomials = sorted({e for n in nums for e in _x_monomials(n, param)})
    rows = len(monomials)
    mat = [[_coeff_of(n, e, param) for n in nums] for e in monomials]
    # solve mat[:, :-1] * a = -mat[:, -1] over Q(t) by Gaussian elimination
    ncols = len(columns) - 1
    aug = [row[:ncols] + [row[-1]] for row in mat]
    tring = (param,)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, rows):
            if not aug[rr][c].is_zero():
                pr = rr
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for rr in range(rows):
            if rr != r and not aug[rr][c].is_zero():
                f = aug[rr][c]
                aug[rr] = [v - f * w for v, w in zip(aug[rr], aug[r])]
        pivots.append(c)
        r += 1
    # consistency: rows beyond the pivots must have zero RHS
    for rr in range(r, rows):
        if not aug[rr][-1].is_zero():
            return None
    sol = [RatFunc.zero(ring) for _ in range(ncols)]
    for k, c in enumerate(pivots):
        sol[c] = -aug[k][-1]
    out = [RatFunc(s.num.restrict(tring), s.den.restrict(tring)) for s in sol]
    out.append(RatFunc.const(tring, 1))
    return out


def _x_monomials(p: MPoly, param: str):
    i = p.vars.index(param)
    return {e[:i] + (0,) + e[i + 1 :] for e in p.terms}


def _coeff_of(p: MPoly, mono, param: str) -> RatFunc:
    i = p.vars.index(param)
    out = {}
    for e, c in p.terms.items():
        if e[:i] + (0,) + e[i + 1 :] == mono:
            out[tuple(0 if k != i else e[i] for k in range(len(e)))] = c
    return RatFunc.from_mpoly(MPoly(p.vars, out))


def dependence_search(f: RatFunc, x: str, param: str, max_order: int):
    """Residual dependence of order <= max_order, or None.

    Returns (coeffs over k(t), certificates G_i) on success; used both by the
    minimal-telescoper construction and by the minimality re-check in tests.
    """
    g0, s = hermite_ratfunc(f, x)
    residuals = [s]
    certs = [g0]
    for rho in range(0, max_order + 1):
        if rho > 0:
            h, s = hermite_ratfunc(residuals[-1].deriv(param), x)
            residuals.append(s)
            certs.append(certs[-1].deriv(param) + h)
        coeffs = _solve_dependence(residuals, param)
        if coeffs is not None:
            return coeffs, certs
    return None


def min_telescoper_bivariate(f: RatFunc, x: str, param: str = "t") -> Telescoped:
    """Minimal operator L in k(t)<Dt> with L(f) = d(certificate)/dx."""
    ring = f.vars
    _, s0 = hermite_ratfunc(f, x)
    # the residual space dimension bounds the order; pad against degree growth
    cap = max(8, 2 * max(s0.den.degree(x), 1) + 4)
    found = dependence_search(f, x, param, cap)
    if found is None:
        raise RationalityAssertionFailed("telescoper search exceeded the dimension bound")
    coeffs, certs = found
    norm = OreOp(param, coeffs).normalize()
    # normalize() rescales all coefficients by one k(t) factor, so the same
    # combination of the Hermite certificates stays a matching certificate
    cert = RatFunc.zero(ring)
    for a, g in zip(norm.coeffs, certs):
        cert = cert + a.extend(ring) * g
    if norm.apply(f) != cert.deriv(x):
        raise RationalityAssertionFailed("telescoper verification failed")
    return Telescoped(norm, Primitive(cert))


def ct_one_form(w: DiffForm, param: str = "t") -> Telescoped:
    """Minimal telescoper and certificate for a closed rational 1-form in t."""
    require_closed(w)
    red = hermite_one_form(w)
    return _ct_reduced(red.residual, red.g, w.fvars, param)


def _ct_reduced(wt: DiffForm, gtilde: RatFunc, fvars, param: str) -> Telescoped:
    ring = wt.ring
    m = _top_active(wt, fvars)
    if m < 0:
        # zero residual: the identity operator telescopes with the Hermite part
        one = OreOp.identity(param)
        return Telescoped(one, Primitive(gtilde))
    x = fvars[m]
    fm = wt.coeff((m,))
    tele = min_telescoper_bivariate(fm, x, param)
    lm, gm = tele.operator, tele.certificate.rational
    if m == 0:
        cert = lm.apply(gtilde) + gm
        return Telescoped(lm, Primitive(cert))
    # bar w = L_m(wt) - d(g_m), free of x_m and dx_m
    bar_coeffs = {}
    for i in range(m):
        v = fvars[i]
        c = lm.apply(wt.coeff((i,))) - gm.deriv(v)
        if not c.is_zero():
            bar_coeffs[(i,)] = c
    check = lm.apply(fm) - gm.deriv(x)
    if not check.is_zero():
        raise RationalityAssertionFailed("telescoped component did not vanish")
    bar = DiffForm(ring, wt.fvars, 1, bar_coeffs)
    if not bar.free_of_var(x):
        raise RationalityAssertionFailed("telescoped form still involves the top variable")
    bar_red = hermite_one_form(bar)
    inner = _ct_reduced(bar_red.residual, RatFunc.zero(ring), fvars, param)
    lbar, gbar = inner.operator, inner.certificate.rational
    op = ore_multiply(lbar, lm)
    cert = (
        gbar
        + lbar.apply(bar_red.g)
        + lbar.apply(gm)
        + lbar.apply(lm.apply(gtilde))
    )
    return Telescoped(op, Primitive(cert))


def _top_active(w: DiffForm, fvars) -> int:
    for i in range(len(fvars) - 1, -1, -1):
        if not w.coeff((i,)).is_zero():
            return i
    return -1


def verify_telescoped(w: DiffForm, result: Telescoped) -> bool:
    """apply(L, w) equals d(certificate) componentwise."""
    from .forms import apply_ore

    lw = apply_ore(result.operator, w)
    cert = result.certificate
    for i, v in enumerate(w.fvars):
        if lw.coeff((i,)) != cert.partial(v):
            return False
    return True
