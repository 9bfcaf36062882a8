"""Closed rational 1-forms: Hermite reduction, full integration, exactness.

The recursion eliminates the highest-index form variable first: write the
dx_m coefficient as d(a_m)/dx_m plus a proper part with squarefree denominator,
expand the gradient of the logarithmic part to rational functions through
trace sums, subtract, and continue on a form free of x_m and dx_m.
"""

from __future__ import annotations

from .errors import RationalityAssertionFailed
from .forms import DiffForm, exterior_derivative, require_closed
from .ratfunc import RatFunc
from .univar import LogTerm, Primitive, hermite_ratfunc, log_part


class OneFormReduction:
    """w = d(g) + residual with squarefree-denominator residual coefficients."""

    __slots__ = ("g", "residual")

    def __init__(self, g: RatFunc, residual: DiffForm):
        self.g = g
        self.residual = residual

    def __repr__(self):
        return f"OneFormReduction(g={self.g!r}, residual={self.residual!r})"


class FormPrimitive1:
    """A Primitive whose exterior derivative is the integrated 1-form."""

    __slots__ = ("value", "ring", "fvars")

    def __init__(self, value: Primitive, ring, fvars):
        self.value = value
        self.ring = tuple(ring)
        self.fvars = tuple(fvars)

    def __repr__(self):
        return f"FormPrimitive1({self.value!r})"

    def derivative_form(self) -> DiffForm:
        coeffs = {(i,): self.value.partial(v) for i, v in enumerate(self.fvars)}
        return DiffForm(self.ring, self.fvars, 1, coeffs)


def _logterm_gradient(lt: LogTerm, ring, fvars, upto: int) -> DiffForm:
    """d of the denoted log over form variables with index <= upto."""
    coeffs = {}
    for i in range(upto + 1):
        v = fvars[i]
        g = lt.partial(v)
        if not g.is_zero():
            coeffs[(i,)] = g
    return DiffForm(ring, fvars, 1, coeffs)


def _reduce_stages(w: DiffForm):
    """Shared recursion; yields per-stage (a_i, logs_i, gradient_i)."""
    require_closed(w)
    if w.degree != 1:
        raise ValueError("expected a 1-form")
    ring, fvars = w.ring, w.fvars
    cur = w
    stages = []
    for i in range(len(fvars) - 1, -1, -1):
        v = fvars[i]
        f = cur.coeff((i,))
        if f.is_zero():
            if not cur.free_of_var(v):
                raise RationalityAssertionFailed(
                    f"closed form with zero d{v} component still involves {v}"
                )
            continue
        a, h = hermite_ratfunc(f, v)
        logs = log_part(h, v) if not h.is_zero() else []
        grad = DiffForm.zero(ring, fvars, 1)
        for lt in logs:
            grad = grad + _logterm_gradient(lt, ring, fvars, i)
        if grad.coeff((i,)) != h:
            raise RationalityAssertionFailed("log gradient does not match the proper part")
        for lt in logs:
            for xv in fvars:
                if not lt.respoly.free_of(xv):
                    raise RationalityAssertionFailed(
                        "residue depends on a form variable in a closed 1-form"
                    )
        cur = cur - DiffForm.d_of_scalar(ring, fvars, a) - grad
        if not (cur.coeff((i,)).is_zero() and cur.free_of_var(v)):
            raise RationalityAssertionFailed(f"reduction did not eliminate {v}")
        stages.append((a, logs, grad))
    if not cur.is_zero():
        raise RationalityAssertionFailed("nonzero remainder after eliminating all variables")
    return stages


def hermite_one_form(w: DiffForm) -> OneFormReduction:
    """w = d(g) + residual, every residual coefficient over a squarefree denominator."""
    stages = _reduce_stages(w)
    g = RatFunc.zero(w.ring)
    residual = DiffForm.zero(w.ring, w.fvars, 1)
    for a, _, grad in stages:
        g = g + a
        residual = residual + grad
    return OneFormReduction(g, residual)


def integrate_closed_1form(w: DiffForm) -> FormPrimitive1:
    """A primitive (rational plus constant-residue logs) with d(primitive) = w."""
    stages = _reduce_stages(w)
    total = Primitive(RatFunc.zero(w.ring))
    for a, logs, _ in stages:
        total = total + Primitive(a, logs)
    return FormPrimitive1(total, w.ring, w.fvars)


def is_exact_rational(w: DiffForm) -> bool:
    """True iff w is the exterior derivative of a rational function."""
    return hermite_one_form(w).residual.is_zero()
