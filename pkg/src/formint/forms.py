"""Exterior algebra over the rational function field.

A DiffForm of degree p stores coefficients on strictly increasing index tuples
into an ordered list of form variables.  The ring may contain extra parameters
(such as t) that are never form variables: the exterior derivative treats them
as constants and no dt component ever appears.
"""

from __future__ import annotations

from .errors import IndexOutOfRange, NotClosed
from .ratfunc import RatFunc


def _merge_index(idx: tuple[int, ...], j: int):
    """Sign and sorted tuple for dx_j ∧ dx_idx, or None if j already occurs.

    dx_j passes the elements of idx smaller than j on its way to sorted position.
    """
    if j in idx:
        return None
    smaller = sum(1 for i in idx if i < j)
    sign = -1 if smaller % 2 == 1 else 1
    return sign, tuple(sorted(idx + (j,)))


def _wedge_tuples(a: tuple[int, ...], b: tuple[int, ...]):
    """Sign and sorted tuple for dx_a ∧ dx_b, or None if an index repeats."""
    if set(a) & set(b):
        return None
    merged = a + b
    perm = sorted(range(len(merged)), key=lambda i: merged[i])
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign, tuple(sorted(merged))


class DiffForm:
    __slots__ = ("ring", "fvars", "degree", "coeffs")

    def __init__(self, ring, fvars, degree, coeffs=None):
        self.ring = tuple(ring)
        self.fvars = tuple(fvars)
        self.degree = degree
        out = {}
        if coeffs:
            for idx, c in dict(coeffs).items():
                idx = tuple(idx)
                if len(idx) != degree or list(idx) != sorted(set(idx)):
                    raise ValueError(f"bad index tuple {idx} for degree {degree}")
                if not c.is_zero():
                    out[idx] = c
        self.coeffs = out

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ring, fvars, degree) -> "DiffForm":
        return cls(ring, fvars, degree)

    @classmethod
    def from_scalar(cls, ring, fvars, f: RatFunc) -> "DiffForm":
        return cls(ring, fvars, 0, {(): f})

    @classmethod
    def one_form(cls, ring, fvars, coeff_list) -> "DiffForm":
        return cls(ring, fvars, 1, {(i,): c for i, c in enumerate(coeff_list)})

    @classmethod
    def d_of_scalar(cls, ring, fvars, f: RatFunc) -> "DiffForm":
        return cls(ring, fvars, 1, {(i,): f.deriv(v) for i, v in enumerate(fvars)})

    # -- basics ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, idx) -> RatFunc:
        return self.coeffs.get(tuple(idx), RatFunc.zero(self.ring))

    def __eq__(self, other):
        return (
            isinstance(other, DiffForm)
            and self.fvars == other.fvars
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        from .printer import form_text

        return f"DiffForm({form_text(self)})"

    def __str__(self):
        from .printer import form_text

        return form_text(self)

    def _like(self, degree, coeffs) -> "DiffForm":
        return DiffForm(self.ring, self.fvars, degree, coeffs)

    def __add__(self, other: "DiffForm") -> "DiffForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            s = out.get(idx)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return self._like(self.degree, out)

    def __neg__(self) -> "DiffForm":
        return self._like(self.degree, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)

    def scalar_mul(self, f: RatFunc) -> "DiffForm":
        if f.is_zero():
            return self._like(self.degree, {})
        return self._like(self.degree, {i: c * f for i, c in self.coeffs.items()})

    def free_of_var(self, v: str) -> bool:
        return all(c.free_of(v) for c in self.coeffs.values())

    def free_of_dvar(self, v: str) -> bool:
        i = self.fvars.index(v)
        return all(i not in idx for idx in self.coeffs)

    def max_active_index(self):
        """Largest form-variable index appearing in a differential or coefficient."""
        best = -1
        for idx, c in self.coeffs.items():
            if idx:
                best = max(best, idx[-1])
            for i, v in enumerate(self.fvars):
                if i > best and not c.free_of(v):
                    best = i
        return best

    def reorder(self, new_fvars) -> "DiffForm":
        """Express the same form over a permuted form-variable list."""
        new_fvars = tuple(new_fvars)
        perm = [new_fvars.index(v) for v in self.fvars]
        out = {}
        for idx, c in self.coeffs.items():
            mapped = [perm[i] for i in idx]
            sign = 1
            arr = list(mapped)
            for i in range(len(arr)):
                for j in range(len(arr) - 1 - i):
                    if arr[j] > arr[j + 1]:
                        arr[j], arr[j + 1] = arr[j + 1], arr[j]
                        sign = -sign
            key = tuple(arr)
            cc = c if sign == 1 else -c
            prev = out.get(key)
            out[key] = cc if prev is None else prev + cc
        return DiffForm(self.ring, new_fvars, self.degree, out)


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    if a.fvars != b.fvars:
        raise ValueError("wedge requires matching form variables")
    degree = a.degree + b.degree
    if degree > len(a.fvars):
        return DiffForm.zero(a.ring, a.fvars, degree)
    out: dict = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            w = _wedge_tuples(ia, ib)
            if w is None:
                continue
            sign, idx = w
            c = ca * cb
            if sign < 0:
                c = -c
            prev = out.get(idx)
            s = c if prev is None else prev + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
    return DiffForm(a.ring, a.fvars, degree, out)


def exterior_derivative(w: DiffForm) -> DiffForm:
    out: dict = {}
    for idx, c in w.coeffs.items():
        for j, v in enumerate(w.fvars):
            if j in idx:
                continue
            dc = c.deriv(v)
            if dc.is_zero():
                continue
            sign, key = _merge_index(idx, j)
            cc = dc if sign == 1 else -dc
            prev = out.get(key)
            s = cc if prev is None else prev + cc
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return DiffForm(w.ring, w.fvars, w.degree + 1, out)


def truncated_derivative(w: DiffForm, s: int, mode: str = "single") -> DiffForm:
    """d^s (mode \"single\") or d_s = d^1 + ... + d^s (mode \"prefix\"); s is 1-based."""
    m = len(w.fvars)
    if not 1 <= s <= m:
        raise IndexOutOfRange(f"s={s} out of range 1..{m}")
    if mode not in ("single", "prefix"):
        raise ValueError("mode must be 'single' or 'prefix'")
    js = [s - 1] if mode == "single" else list(range(s))
    out: dict = {}
    for idx, c in w.coeffs.items():
        for j in js:
            if j in idx:
                continue
            dc = c.deriv(w.fvars[j])
            if dc.is_zero():
                continue
            sign, key = _merge_index(idx, j)
            cc = dc if sign == 1 else -dc
            prev = out.get(key)
            acc = cc if prev is None else prev + cc
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
    return DiffForm(w.ring, w.fvars, w.degree + 1, out)


def is_closed(w: DiffForm):
    """(True, None) or (False, witness) with witness one nonzero coefficient of dw."""
    dw = exterior_derivative(w)
    if dw.is_zero():
        return True, None
    idx = sorted(dw.coeffs)[0]
    return False, (idx, dw.coeffs[idx])


def require_closed(w: DiffForm):
    ok, witness = is_closed(w)
    if not ok:
        raise NotClosed(witness)


def decompose_top(w: DiffForm, top: int | None = None):
    """Split w = rest + mu ∧ dx_top with rest, mu free of dx_top.

    top is a 0-based index into the form variables (default: the last one).
    mu has degree p-1; the normalization is mu ∧ dx_top = (top part of w).
    """
    m = len(w.fvars)
    if top is None:
        top = m - 1
    rest: dict = {}
    mu: dict = {}
    p = w.degree
    for idx, c in w.coeffs.items():
        if top in idx:
            reduced = tuple(i for i in idx if i != top)
            # moving dx_top to the end of dx_reduced costs nothing only when top
            # is the largest index; in general count transpositions
            after = sum(1 for i in idx if i > top)
            cc = c if after % 2 == 0 else -c
            mu[reduced] = cc
        else:
            rest[idx] = c
    return (
        DiffForm(w.ring, w.fvars, p, rest),
        DiffForm(w.ring, w.fvars, p - 1, mu),
    )


def apply_ore(op, w: DiffForm) -> DiffForm:
    """Apply an Ore operator in the parameter coefficientwise."""
    out = {}
    for idx, c in w.coeffs.items():
        v = op.apply(c)
        if not v.is_zero():
            out[idx] = v
    return DiffForm(w.ring, w.fvars, w.degree, out)
