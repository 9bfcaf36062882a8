"""Closed rational p-forms: recursive integration and the derivative verifier.

Each stage integrates the top-variable part coefficientwise, expands the
exterior derivative of the produced logs back to rational functions through
trace sums, and recurses on a closed form in one variable fewer.  Logarithm
coefficients may be algebraic over the lower variables, so differentiating a
log term also produces "residue" contributions d(c)*log(arg); for a closed
input these must cancel.  Cancellation is checked exactly: within one output
component and one stage variable v, all arguments are monic in v of positive
degree with v-free residues, so the residue log sum vanishes identically iff
its v-derivative (a single rational trace identity) vanishes.
"""

from __future__ import annotations

from .errors import RationalityAssertionFailed, ResidualLogarithm
from .forms import DiffForm, _merge_index, decompose_top, require_closed
from .mpoly import MPoly
from .oneform import integrate_closed_1form
from .ratfunc import RatFunc
from .univar import Primitive, ROOTVAR, integrate_univariate
from .algebra import trace_sum


class PrimitiveForm:
    """A (p-1)-form with Primitive coefficients; d of it is the integrated form."""

    __slots__ = ("ring", "fvars", "degree", "coeffs")

    def __init__(self, ring, fvars, degree, coeffs=None):
        self.ring = tuple(ring)
        self.fvars = tuple(fvars)
        self.degree = degree
        self.coeffs = {}
        if coeffs:
            for idx, prim in dict(coeffs).items():
                idx = tuple(idx)
                if not prim.is_zero():
                    self.coeffs[idx] = prim

    def coeff(self, idx) -> Primitive:
        return self.coeffs.get(tuple(idx), Primitive(RatFunc.zero(self.ring)))

    def __eq__(self, other):
        return (
            isinstance(other, PrimitiveForm)
            and self.fvars == other.fvars
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        parts = [f"{idx}: {prim!r}" for idx, prim in sorted(self.coeffs.items())]
        return "PrimitiveForm{" + ", ".join(parts) + "}"

    def merge(self, idx, prim: Primitive):
        idx = tuple(idx)
        cur = self.coeffs.get(idx)
        total = prim if cur is None else cur + prim
        if total.is_zero():
            self.coeffs.pop(idx, None)
        else:
            self.coeffs[idx] = total


def _residue_objects(lt, wrt: str):
    """The d(c)*log(arg) contribution of differentiating lt by wrt, if any.

    Returns None when the residues do not depend on wrt.  Otherwise returns
    (respoly, -dR/dwrt, W) encoding sum over roots of (dc/dwrt)(c) * log(arg(c)).
    """
    r = lt.respoly
    if r.free_of(wrt):
        return None
    return (r, -r.deriv(wrt), lt.argpoly)


def _expand_prefix(coeffs, ring, fvars, upto: int):
    """Exterior derivative restricted to d^1..d^upto of a Primitive-coefficient form.

    Returns (DiffForm of the rational part, residue groups).  Groups map
    (target index tuple, stage var) to lists of (sign, respoly, num_factor, W).
    """
    rational: dict = {}
    groups: dict = {}
    degree = None
    for idx, prim in coeffs.items():
        degree = len(idx)
        for ell in range(upto):
            if ell in idx:
                continue
            v = fvars[ell]
            part = prim.partial(v)
            sign, key = _merge_index(idx, ell)
            if not part.is_zero():
                cc = part if sign == 1 else -part
                prev = rational.get(key)
                s = cc if prev is None else prev + cc
                if s.is_zero():
                    rational.pop(key, None)
                else:
                    rational[key] = s
            for lt in prim.logs:
                obj = _residue_objects(lt, v)
                if obj is not None:
                    groups.setdefault((key, lt.var), []).append((sign, *obj))
    deg = (degree if degree is not None else 0) + 1
    return DiffForm(ring, fvars, deg, rational), groups


def _check_residue_groups(groups, error_cls=RationalityAssertionFailed):
    """Assert that every residue group sums to the zero function."""
    for (key, var), objs in groups.items():
        total = None
        for sign, respoly, numfac, w in objs:
            ring2 = respoly.vars
            dz = respoly.deriv(ROOTVAR)
            num = numfac * w.deriv(var)
            den = dz * w
            val = trace_sum(respoly, (num, den), ROOTVAR)
            base = tuple(v for v in ring2 if v != ROOTVAR)
            val = val.restrict(base)
            if sign < 0:
                val = -val
            total = val if total is None else total + val
        if total is not None and not total.is_zero():
            raise error_cls(
                f"uncancelled logarithmic residue on component {key} (stage {var})"
            )


def integrate_closed_pform(w: DiffForm) -> PrimitiveForm:
    """Write the closed p-form w as d of a (p-1)-form with log-bearing coefficients."""
    require_closed(w)
    p = w.degree
    if p < 1:
        raise ValueError("degree must be at least 1")
    ring, fvars = w.ring, w.fvars
    if p == 1:
        fp = integrate_closed_1form(w)
        return PrimitiveForm(ring, fvars, 0, {(): fp.value})
    result = PrimitiveForm(ring, fvars, p - 1)
    sign = 1 if (p - 1) % 2 == 0 else -1
    cur = w
    while not cur.is_zero():
        i = cur.max_active_index()
        if i < p - 1:
            raise RationalityAssertionFailed("p-form survived in fewer than p variables")
        v = fvars[i]
        rest, mu = decompose_top(cur, i)
        if mu.is_zero():
            raise RationalityAssertionFailed(
                f"closed form involves {v} but has no d{v} component"
            )
        psi: dict = {}
        for idx, a in mu.coeffs.items():
            b = integrate_univariate(a if sign == 1 else -a, v)
            for lt in b.logs:
                for j in range(i, len(fvars)):
                    if not lt.respoly.free_of(fvars[j]):
                        raise RationalityAssertionFailed(
                            "stage residue depends on an uneliminated variable"
                        )
            psi[idx] = b
        delta, groups = _expand_prefix(psi, ring, fvars, i)
        _check_residue_groups(groups)
        cur = rest - delta
        if not (cur.free_of_dvar(v) and cur.free_of_var(v)):
            raise RationalityAssertionFailed(f"stage did not eliminate {v}")
        for idx, prim in psi.items():
            result.merge(idx, prim)
    return result


def expand_primitive_derivative(pf: PrimitiveForm) -> DiffForm:
    """Apply d formally to a PrimitiveForm and return the rational result.

    Raises ResidualLogarithm if the d(c)*log(arg) contributions do not cancel.
    """
    full, groups = _expand_prefix(pf.coeffs, pf.ring, pf.fvars, len(pf.fvars))
    _check_residue_groups(groups, error_cls=ResidualLogarithm)
    if not pf.coeffs:
        return DiffForm(pf.ring, pf.fvars, pf.degree + 1)
    return full
