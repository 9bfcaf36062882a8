"""Pole-order reduction for m-forms on projective space in the smooth case.

Everything is homogeneous: an input P*Omega/Q^ell with ell*deg(Q) = deg(P)+m+1
is reduced by dividing P by a Groebner basis of the Jacobian ideal of Q,
peeling one pole order per stage.  The form is rationally integrable iff all
normal-form remainders vanish.  A Buchberger engine with a tracked
transformation matrix recovers the division quotients against the original
Jacobian generators, which the reconstruction (m-1)-forms need.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import DegreeMismatch, NotHomogeneous, NotSmooth, ZeroInput
from .forms import DiffForm, exterior_derivative
from .mpoly import MPoly, _grevlex_key, squarefree_factorization
from .ratfunc import RatFunc


# -- Groebner engine -------------------------------------------------------------


class GBasis:
    """Reduced Groebner basis with a transformation back to the original generators."""

    __slots__ = ("generators", "origin", "transform", "order", "reduced")

    def __init__(self, generators, origin, transform):
        self.generators = generators
        self.origin = origin
        self.transform = transform  # generators[i] == sum_j transform[i][j] * origin[j]
        self.order = "grevlex"
        self.reduced = True

    def __repr__(self):
        return f"GBasis({[str(g) for g in self.generators]})"


def _lt_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce_tracked(p: MPoly, basis, vars):
    """Full normal form of p against basis, tracking quotients per basis element."""
    nb = len(basis)
    quots = [MPoly.zero(vars) for _ in range(nb)]
    rem: dict = {}
    work = dict(p.terms)
    lts = [g.leading() for g in basis]
    while work:
        e = max(work, key=_grevlex_key)
        c = work.pop(e)
        hit = None
        for k, (le, lc) in enumerate(lts):
            if _lt_divides(le, e):
                hit = (k, le, lc)
                break
        if hit is None:
            rem[e] = c
            continue
        k, le, lc = hit
        diff = tuple(x - y for x, y in zip(e, le))
        coef = c / lc
        mono = MPoly(vars, {diff: coef})
        quots[k] = quots[k] + mono
        for e2, c2 in basis[k].terms.items():
            if e2 == le:
                continue
            key = tuple(x + y for x, y in zip(diff, e2))
            s = work.get(key, Fraction(0)) - coef * c2
            if s:
                work[key] = s
            else:
                work.pop(key, None)
    return MPoly(vars, rem), quots


def groebner_basis(gens) -> GBasis:
    """Reduced grevlex Groebner basis via Buchberger with the standard criteria."""
    gens = [g for g in gens]
    if not gens:
        raise ZeroInput("no generators")
    vars = gens[0].vars
    origin = list(gens)
    basis = []
    reps = []  # combination of origin generators per basis element
    for j, g in enumerate(origin):
        if g.is_zero():
            continue
        u = g.content_unit()
        row = [MPoly.zero(vars) for _ in origin]
        row[j] = MPoly.const(vars, 1 / u)
        basis.append(g.primitive())
        reps.append(row)

    pairs = set()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pairs.add((i, j))
    while pairs:
        # normal selection strategy: smallest lcm degree first
        def pair_key(pr):
            i, j = pr
            li, lj = basis[i].leading()[0], basis[j].leading()[0]
            lcm = tuple(max(a, b) for a, b in zip(li, lj))
            return (sum(lcm), lcm)

        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, ci = basis[i].leading()
        lj, cj = basis[j].leading()
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        # criterion 1: coprime leading monomials
        if all(a + b == m for a, b, m in zip(li, lj, lcm)):
            continue
        # criterion 2 (chain): some k with lt(k) | lcm and both pairs handled
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            lk = basis[k].leading()[0]
            if _lt_divides(lk, lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        mi = MPoly(vars, {tuple(a - b for a, b in zip(lcm, li)): 1 / ci})
        mj = MPoly(vars, {tuple(a - b for a, b in zip(lcm, lj)): 1 / cj})
        s = basis[i] * mi - basis[j] * mj
        if s.is_zero():
            continue
        rem, quots = _reduce_tracked(s, basis, vars)
        if rem.is_zero():
            continue
        # rep of rem = mi*rep_i - mj*rep_j - sum quots_k rep_k
        row = [MPoly.zero(vars) for _ in origin]
        for jj in range(len(origin)):
            acc = mi * reps[i][jj] - mj * reps[j][jj]
            for k, q in enumerate(quots):
                if not q.is_zero() and not reps[k][jj].is_zero():
                    acc = acc - q * reps[k][jj]
            row[jj] = acc
        u = rem.content_unit()
        rem = rem.primitive()
        row = [r.scale(1 / u) for r in row]
        basis.append(rem)
        reps.append(row)
        new = len(basis) - 1
        for k in range(new):
            pairs.add((k, new))

    # interreduce to the reduced basis, keeping transforms consistent
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            if basis[i] is None:
                continue
            others = [(k, b) for k, b in enumerate(basis) if b is not None and k != i]
            if any(_lt_divides(b.leading()[0], basis[i].leading()[0]) for _, b in others):
                # leading term reducible: fully reduce; drop if zero
                sub_basis = [b for _, b in others]
                rem, quots = _reduce_tracked(basis[i], sub_basis, vars)
                row = list(reps[i])
                for (k, _), q in zip(others, quots):
                    if q.is_zero():
                        continue
                    for jj in range(len(origin)):
                        if not reps[k][jj].is_zero():
                            row[jj] = row[jj] - q * reps[k][jj]
                if rem.is_zero():
                    basis[i] = None
                    reps[i] = None
                else:
                    u = rem.content_unit()
                    basis[i] = rem.primitive()
                    reps[i] = [r.scale(1 / u) for r in row]
                changed = True
        basis_live = [b for b in basis if b is not None]
        reps_live = [r for r, b in zip(reps, basis) if b is not None]
        basis, reps = basis_live, reps_live
    # tail-reduce each element against the others
    for i in range(len(basis)):
        others = [(k, b) for k, b in enumerate(basis) if k != i]
        sub_basis = [b for _, b in others]
        rem, quots = _reduce_tracked(basis[i], sub_basis, vars)
        row = list(reps[i])
        for (k, _), q in zip(others, quots):
            if q.is_zero():
                continue
            for jj in range(len(origin)):
                if not reps[k][jj].is_zero():
                    row[jj] = row[jj] - q * reps[k][jj]
        u = rem.content_unit()
        basis[i] = rem.primitive()
        reps[i] = [r.scale(1 / u) for r in row]
    order = sorted(range(len(basis)), key=lambda k: _grevlex_key(basis[k].leading()[0]))
    basis = [basis[k] for k in order]
    reps = [reps[k] for k in order]
    return GBasis(basis, origin, reps)


def normal_form(p: MPoly, gb: GBasis):
    """(remainder, quotients) with p = sum quotients[j]*origin[j] + remainder."""
    vars = p.vars
    rem, quots = _reduce_tracked(p, gb.generators, vars)
    out = [MPoly.zero(vars) for _ in gb.origin]
    for k, q in enumerate(quots):
        if q.is_zero():
            continue
        for j in range(len(gb.origin)):
            if not gb.transform[k][j].is_zero():
                out[j] = out[j] + q * gb.transform[k][j]
    return rem, out


# -- smoothness -------------------------------------------------------------------


def jacobian_ideal(q: MPoly) -> list[MPoly]:
    return [q.deriv(v) for v in q.vars]


def is_smooth(q: MPoly) -> bool:
    """True iff the projective hypersurface Q = 0 is smooth.

    Decided by finite-dimensionality of the Jacobian quotient: the reduced
    basis must contain a pure power of every variable (or be the unit ideal).
    """
    if q.is_zero() or q.is_const():
        raise NotHomogeneous("Q must be homogeneous nonconstant")
    if not q.is_homogeneous():
        raise NotHomogeneous("Q must be homogeneous")
    gens = [g for g in jacobian_ideal(q) if not g.is_zero()]
    if not gens:
        return False
    gb = groebner_basis(gens)
    return _finite_dimensional(gb, q.vars)


def _finite_dimensional(gb: GBasis, vars) -> bool:
    lts = [g.leading()[0] for g in gb.generators]
    if any(sum(e) == 0 for e in lts):
        return True  # unit ideal
    for i in range(len(vars)):
        ok = False
        for e in lts:
            if e[i] > 0 and all(x == 0 for k, x in enumerate(e) if k != i):
                ok = True
                break
        if not ok:
            return False
    return True


# -- projective forms ---------------------------------------------------------------


class ProjForm:
    """P*Omega/Q^ell on projective m-space; ell*deg(Q) = deg(P) + m + 1."""

    __slots__ = ("p", "q", "ell", "m")

    def __init__(self, p: MPoly, q: MPoly, ell: int, m: int):
        if not (p.is_homogeneous() and q.is_homogeneous()):
            raise NotHomogeneous("P and Q must be homogeneous")
        if q.is_zero():
            raise ZeroInput("Q must be nonzero")
        if not p.is_zero() and ell * q.total_degree() != p.total_degree() + m + 1:
            raise DegreeMismatch(
                f"ell*deg(Q) = {ell * q.total_degree()} != deg(P)+m+1 = {p.total_degree() + m + 1}"
            )
        self.p = p
        self.q = q
        self.ell = ell
        self.m = m

    def __repr__(self):
        return f"ProjForm(({self.p})*Omega/({self.q})^{self.ell})"


class ObstructionReport:
    """Structured refusal: the regularity assumption does not hold."""

    __slots__ = ("kind", "message", "numerator", "den_factors", "m")

    def __init__(self, kind, message, numerator=None, den_factors=None, m=None):
        self.kind = kind
        self.message = message
        self.numerator = numerator
        self.den_factors = den_factors or []
        self.m = m

    def __repr__(self):
        return f"ObstructionReport({self.kind}: {self.message})"


class GDResult:
    """Pole-reduction outcome: stage forms, remainders, and the exactness verdict."""

    __slots__ = ("phis", "remainders", "exact", "proj", "a_vectors")

    def __init__(self, phis, remainders, exact, proj, a_vectors):
        self.phis = phis
        self.remainders = remainders
        self.exact = exact
        self.proj = proj
        self.a_vectors = a_vectors

    def residue_form(self) -> DiffForm:
        """[w] = sum of r_k * Omega / Q^(ell-k+1) as an honest m-form."""
        w = self.proj
        total = None
        for k, r in enumerate(self.remainders, start=1):
            if r.is_zero():
                continue
            piece = proj_m_form(r, w.q, w.ell - k + 1, w.m)
            total = piece if total is None else total + piece
        if total is None:
            ring = w.q.vars
            return DiffForm(ring, ring, w.m)
        return total


def proj_m_form(p: MPoly, q: MPoly, ell: int, m: int) -> DiffForm:
    """The m-form P*Omega/Q^ell in the homogeneous coordinates."""
    ring = q.vars
    coeff = RatFunc(p, q**ell)
    out = {}
    full = tuple(range(m + 1))
    for i in range(m + 1):
        idx = tuple(j for j in full if j != i)
        sign = Fraction(1) if i % 2 == 0 else Fraction(-1)
        xi = RatFunc.var(ring, ring[i])
        c = coeff * xi.scale(sign)
        if not c.is_zero():
            out[idx] = c
    return DiffForm(ring, ring, m, out)


def _phi_form(a_vec, q: MPoly, ell_cur: int, m: int) -> DiffForm:
    """The (m-1)-form whose d removes one pole order for the given A-vector."""
    ring = q.vars
    scale = Fraction(1, ell_cur - 1)
    denom = RatFunc.from_mpoly(q ** (ell_cur - 1))
    out = {}
    full = tuple(range(m + 1))
    for i, j in combinations(range(m + 1), 2):
        xi = MPoly.var(ring, ring[i])
        xj = MPoly.var(ring, ring[j])
        num = xi * a_vec[j] - xj * a_vec[i]
        if num.is_zero():
            continue
        idx = tuple(k for k in full if k not in (i, j))
        # with this sign, d(phi) = (sum A_i dQ/dxi_i) Omega/Q^l - (sum dA_i/dxi_i) Omega/((l-1) Q^(l-1))
        sign = Fraction(1) if (i + j) % 2 == 0 else Fraction(-1)
        c = RatFunc.from_mpoly(num).scale(scale * sign) / denom
        if not c.is_zero():
            prev = out.get(idx)
            out[idx] = c if prev is None else prev + c
    return DiffForm(ring, ring, m - 1, out)


def gd_reduce(w: ProjForm, early_exit: bool = False, verify: bool = True) -> GDResult:
    """Iterated pole-order reduction; exact iff every remainder vanishes."""
    q = w.q
    gens = jacobian_ideal(q)
    live = [g for g in gens if not g.is_zero()]
    if not live:
        raise NotSmooth("Jacobian ideal is zero")
    gb_live = groebner_basis(live)
    if not _finite_dimensional(gb_live, q.vars):
        raise NotSmooth("the hypersurface Q = 0 is not smooth")
    # re-index the transformation to the full generator list (zeros included)
    live_pos = [i for i, g in enumerate(gens) if not g.is_zero()]
    transform = []
    for row in gb_live.transform:
        full_row = [MPoly.zero(q.vars) for _ in gens]
        for k, pos in enumerate(live_pos):
            full_row[pos] = row[k]
        transform.append(full_row)
    gb = GBasis(gb_live.generators, gens, transform)

    remainders = []
    phis = []
    a_vectors = []
    p_cur = w.p
    ell_cur = w.ell
    exact = True
    while ell_cur > 1:
        rem, quots = normal_form(p_cur, gb)
        remainders.append(rem)
        if not rem.is_zero():
            exact = False
            if early_exit:
                return GDResult(phis, remainders, False, w, a_vectors)
        a_vectors.append(quots)
        phis.append(_phi_form(quots, q, ell_cur, w.m))
        nxt = MPoly.zero(q.vars)
        for i, a in enumerate(quots):
            nxt = nxt + a.deriv(q.vars[i])
        p_cur = nxt.scale(Fraction(1, ell_cur - 1))
        ell_cur -= 1
    rem, _ = normal_form(p_cur, gb)
    remainders.append(rem)
    if not rem.is_zero():
        exact = False
    result = GDResult(phis, remainders, exact, w, a_vectors)
    if verify and not early_exit:
        lhs = proj_m_form(w.p, q, w.ell, w.m)
        for phi in phis:
            lhs = lhs - exterior_derivative(phi)
        lhs = lhs - result.residue_form()
        if not lhs.is_zero():
            raise AssertionError("pole-reduction reconstruction identity failed")
    return result


# -- affine entry points ---------------------------------------------------------------


def homogenize_m_form(f: RatFunc, m: int, proj_prefix: str = "X0"):
    """Lift f dx_1..dx_m to homogeneous coordinates as P*Omega/(den) data.

    Returns a ProjForm when the polar locus is a single smooth hypersurface,
    otherwise an ObstructionReport naming the violation.
    """
    if f.is_zero():
        return ObstructionReport("zero_form", "the zero form has no polar locus", m=m)
    avars = f.vars
    if len(avars) != m:
        raise ValueError(f"need exactly {m} affine variables, got {avars}")
    if proj_prefix in avars:
        raise ValueError("projective variable name collides with an affine one")
    ring = (proj_prefix,) + avars

    def homogenize(p: MPoly) -> MPoly:
        d = p.total_degree()
        out = {}
        for e, c in p.terms.items():
            out[(d - sum(e),) + e] = c
        return MPoly(ring, out)

    num = homogenize(f.num)
    den = homogenize(f.den)
    k = f.den.total_degree() - f.num.total_degree() - (m + 1)
    xi0 = MPoly.var(ring, proj_prefix)
    if k >= 0:
        num = num * xi0**k
    else:
        den = den * xi0 ** (-k)
    factors = _full_squarefree(den)
    num, factors = _cancel_common(num, factors)
    if len(factors) > 1:
        return ObstructionReport(
            "reducible_polar_locus",
            "the polar locus has more than one component; the smooth theory does not apply",
            numerator=num,
            den_factors=factors,
            m=m,
        )
    q, ell = factors[0]
    if not is_smooth(q):
        return ObstructionReport(
            "not_smooth",
            "the polar locus is a singular hypersurface",
            numerator=num,
            den_factors=factors,
            m=m,
        )
    # fold the denominator's scalar unit into P so P*Omega/Q^ell is the input exactly
    rebuilt = q**ell
    e, c = rebuilt.leading()
    unit = den.terms.get(e, Fraction(0)) / c
    if unit == 0 or rebuilt.scale(unit) != den:
        raise AssertionError("denominator factor reconstruction failed")
    return ProjForm(num.scale(1 / unit), q, ell, m)


def _full_squarefree(den: MPoly) -> list[tuple[MPoly, int]]:
    """Pairwise coprime squarefree factors with multiplicities (up to a scalar)."""
    out = [(den.primitive(), 1)]
    for v in den.vars:
        nxt = []
        for fac, mult in out:
            if fac.degree(v) <= 0:
                nxt.append((fac, mult))
                continue
            for sub, submult in squarefree_factorization(fac, v).factors:
                nxt.append((sub.primitive(), mult * submult))
        out = nxt
    factors = [(fac, mult) for fac, mult in out if not fac.is_const()]
    return sorted(factors, key=lambda t: t[0].sort_key())


def _cancel_common(num: MPoly, factors):
    out = []
    for fac, mult in factors:
        while mult > 0 and fac.divides(num):
            num = num.exact_div(fac)
            mult -= 1
        if mult > 0:
            out.append((fac, mult))
    return num, out


def verify_picard_solution(f: RatFunc, u: list[RatFunc]) -> bool:
    """Check sum_i d(u_i)/d(x_i) = f exactly (the divergence identity)."""
    if len(u) != len(f.vars):
        raise ValueError("need one component per variable")
    total = RatFunc.zero(f.vars)
    for ui, v in zip(u, f.vars):
        total = total + ui.deriv(v)
    return total == f
