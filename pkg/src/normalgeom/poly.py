"""Sparse multivariate polynomials over an exact field.

Terms live in a dict mapping exponent tuples to nonzero scalars; the
variable list is ordered and shared by every polynomial in a computation.
Printing follows the expression grammar

    poly   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := integer | var ("^" nat)?

with whitespace insignificant, so parse(print(p)) == p for every canonical
polynomial (over Q the canonical representative is integer, primitive, with
positive leading coefficient in lex order; over F_p it is monic-lex).

Resultants with respect to one variable run through a subresultant PRS over
Q (coefficient growth control) and Sylvester-determinant fraction-free
elimination over F_p; the two paths are cross-checked in the test suite.
Multivariate gcds exist exactly in the shapes the elimination needs:
homogeneous polynomials, one main variable at a time, with content handled
by recursion on fewer variables.
"""

from fractions import Fraction
from math import comb, gcd as igcd, lcm

from . import _fpkernel as kern
from .errors import NormalGeomError, ParseError
from .fields import PRIME, RATIONALS
from .linalg import bareiss_det
from .univariate import BinaryForm, f_gcd, trim as utrim

PRIMAL_VARS = ("x", "y", "z")
DUAL_VARS = ("u0", "u1", "u2")
PARAM_VARS = ("s", "t")


class MultiPoly:
    """Sparse polynomial; immutable by convention (never mutate ``terms``)."""

    __slots__ = ("vars", "terms", "spec")

    def __init__(self, vars, terms, spec):
        self.vars = tuple(vars)
        self.spec = spec
        clean = {}
        for exps, c in terms.items():
            if len(exps) != len(self.vars):
                raise NormalGeomError("exponent vector does not match variables")
            if not spec.is_zero(c):
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars, spec):
        return cls(vars, {}, spec)

    @classmethod
    def const(cls, vars, spec, value):
        v = spec.coerce(value)
        return cls(vars, {tuple([0] * len(vars)): v}, spec)

    @classmethod
    def variable(cls, vars, spec, name):
        idx = list(vars).index(name)
        e = [0] * len(vars)
        e[idx] = 1
        return cls(vars, {tuple(e): spec.one()}, spec)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """-1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if not self.terms:
            return -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def variables_present(self):
        out = []
        for i, v in enumerate(self.vars):
            if any(e[i] for e in self.terms):
                out.append(v)
        return out

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get(tuple([0] * len(self.vars)), self.spec.zero())

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars or self.spec != other.spec:
            raise NormalGeomError("mixed polynomial rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        sp = self.spec
        for e, c in other.terms.items():
            s = sp.add(out.get(e, sp.zero()), c)
            if sp.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.vars, out, sp)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        sp = self.spec
        return MultiPoly(self.vars, {e: sp.neg(c) for e, c in self.terms.items()}, sp)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(self.spec.coerce(other))
        self._check(other)
        sp = self.spec
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = sp.add(out.get(e, sp.zero()), sp.mul(c1, c2))
                if sp.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.vars, out, sp)

    __rmul__ = __mul__

    def scale(self, k):
        sp = self.spec
        if sp.is_zero(k):
            return MultiPoly.zero(self.vars, sp)
        return MultiPoly(self.vars, {e: sp.mul(c, k) for e, c in self.terms.items()}, sp)

    def __pow__(self, n):
        if n < 0:
            raise NormalGeomError("negative polynomial power")
        result = MultiPoly.const(self.vars, self.spec, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, self.spec, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({to_string(self) if self.terms else '0'})"

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self, var):
        if var not in self.vars:
            raise NormalGeomError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        sp = self.spec
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                coeff = sp.mul(c, sp.coerce(e[i]))
                if not sp.is_zero(coeff):
                    out[tuple(ne)] = coeff
        return MultiPoly(self.vars, out, sp)

    def evaluate(self, point):
        if len(point) != len(self.vars):
            raise NormalGeomError("point arity does not match variables")
        sp = self.spec
        pt = [sp.coerce(v) if not sp.is_element(v) else v for v in point]
        out = sp.zero()
        for e, c in self.terms.items():
            term = c
            for v, exp in zip(pt, e):
                if exp:
                    term = sp.mul(term, sp.pow(v, exp))
            out = sp.add(out, term)
        return out

    def substitute(self, mapping):
        """Replace variables by polynomials of a common target ring.

        ``mapping`` sends every variable of ``self`` to a MultiPoly (all in
        one target ring) or to a scalar of the same field.
        """
        targets = [m for m in mapping.values() if isinstance(m, MultiPoly)]
        if targets:
            tvars, tspec = targets[0].vars, targets[0].spec
        else:
            tvars, tspec = self.vars, self.spec
        one = MultiPoly.const(tvars, tspec, 1)
        images = []
        for v in self.vars:
            img = mapping.get(v)
            if img is None:
                img = MultiPoly.variable(tvars, tspec, v)
            elif not isinstance(img, MultiPoly):
                img = MultiPoly.const(tvars, tspec, img)
            images.append(img)
        # power cache per variable
        pows = [[one] for _ in images]
        out = MultiPoly.zero(tvars, tspec)
        for e, c in self.terms.items():
            term = MultiPoly.const(tvars, tspec, c)
            for i, exp in enumerate(e):
                while len(pows[i]) <= exp:
                    pows[i].append(pows[i][-1] * images[i])
                if exp:
                    term = term * pows[i][exp]
            out = out + term
        return out

    def compose_matrix(self, m):
        """Substitute variables by the linear forms given by matrix rows:
        var_i -> sum_j m[i][j] * var_j."""
        sp = self.spec
        mapping = {}
        for i, v in enumerate(self.vars):
            img = MultiPoly.zero(self.vars, sp)
            for j, w in enumerate(self.vars):
                img = img + MultiPoly.variable(self.vars, sp, w).scale(sp.coerce(m[i][j]))
            mapping[v] = img
        return self.substitute(mapping)

    # -- univariate views -----------------------------------------------------

    def as_univariate(self, var):
        """Coefficient list (little-endian) in ``var`` with MultiPoly entries."""
        i = self.vars.index(var)
        d = self.degree_in(var)
        if d < 0:
            return []
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            buckets[k][tuple(ne)] = c
        return [MultiPoly(self.vars, b, self.spec) for b in buckets]

    @classmethod
    def from_univariate(cls, coeffs, var, vars, spec):
        i = list(vars).index(var)
        out = {}
        for k, c in enumerate(coeffs):
            for e, v in c.terms.items():
                ne = list(e)
                ne[i] += k
                out[tuple(ne)] = v
        return cls(vars, out, spec)

    # -- term order utilities -------------------------------------------------

    def lex_leading(self):
        """(exponents, coefficient) maximal in plain lex order."""
        if not self.terms:
            raise NormalGeomError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def deglex_leading(self):
        """(exponents, coefficient) maximal in total degree, then lex."""
        if not self.terms:
            raise NormalGeomError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]


# ---------------------------------------------------------------------------
# exact division, content, gcd, squarefree


def exact_div(f, d):
    """Exact quotient f / d; raises if the division is not exact."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    sp = f.spec
    if d.is_constant():
        return f.scale(sp.inv(d.constant_value()))
    rem_terms = dict(f.terms)
    out = {}
    de, dc = d.lex_leading()
    dterms = sorted(d.terms.items(), reverse=True)
    while rem_terms:
        fe = max(rem_terms)
        fc = rem_terms[fe]
        qe = tuple(a - b for a, b in zip(fe, de))
        if any(v < 0 for v in qe):
            raise NormalGeomError("inexact polynomial division")
        qc = sp.div(fc, dc)
        out[qe] = qc
        for te, tc in dterms:
            e = tuple(a + b for a, b in zip(qe, te))
            s = sp.sub(rem_terms.get(e, sp.zero()), sp.mul(qc, tc))
            if sp.is_zero(s):
                rem_terms.pop(e, None)
            else:
                rem_terms[e] = s
    return MultiPoly(f.vars, out, sp)


def divides(d, f):
    try:
        exact_div(f, d)
        return True
    except NormalGeomError:
        return False


def pth_root(f):
    """p-th root of a polynomial whose exponents are all divisible by p.

    Valid over F_p only; coefficients are fixed by Frobenius.
    """
    p = f.spec.p
    out = {}
    for e, c in f.terms.items():
        if any(v % p for v in e):
            raise NormalGeomError("not a p-th power")
        out[tuple(v // p for v in e)] = c
    return MultiPoly(f.vars, out, f.spec)


def gcd_hom(f, g):
    """Gcd of two (quasi-)homogeneous polynomials, canonically scaled.

    Recursion: pick a main variable, pull binary/unary contents off the
    coefficient ring, run a primitive polynomial remainder sequence there.
    Intended for the shapes the elimination produces: at most three
    variables, everything homogeneous.
    """
    if f.is_zero():
        return canonicalize(g) if not g.is_zero() else g
    if g.is_zero():
        return canonicalize(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.vars, f.spec, 1)
    fv = set(f.variables_present())
    gv = set(g.variables_present())
    both = [v for v in f.vars if v in fv and v in gv]
    if not both:
        return MultiPoly.const(f.vars, f.spec, 1)
    shape_f = [v for v in f.vars if v in fv]
    shape_g = [v for v in f.vars if v in gv]
    if len(shape_f) == 1 and shape_f == shape_g:
        v = shape_f[0]
        a = [c.constant_value() for c in f.as_univariate(v)]
        b = [c.constant_value() for c in g.as_univariate(v)]
        gg = f_gcd(utrim(a), utrim(b), f.spec)
        coeffs = [MultiPoly.const(f.vars, f.spec, c) for c in gg]
        return canonicalize(MultiPoly.from_univariate(coeffs, v, f.vars, f.spec))
    v = both[0]
    fc = f.as_univariate(v)
    gc = g.as_univariate(v)
    cont_f = _content(fc)
    cont_g = _content(gc)
    fp = exact_div(f, cont_f)
    gp = exact_div(g, cont_g)
    prim = _prs_gcd_primitive(fp, gp, v)
    return canonicalize(gcd_hom(cont_f, cont_g) * prim)


def _content(coeff_list):
    cont = None
    for c in coeff_list:
        if c.is_zero():
            continue
        cont = c if cont is None else gcd_hom(cont, c)
        if cont.is_constant():
            break
    return cont if cont is not None else coeff_list[0]


def _prs_gcd_primitive(f, g, v):
    """Primitive PRS gcd of primitive polynomials in the main variable v."""
    if f.degree_in(v) < g.degree_in(v):
        f, g = g, f
    while True:
        if g.is_zero():
            base = f
            break
        if g.degree_in(v) <= 0:
            base = MultiPoly.const(f.vars, f.spec, 1)
            break
        r = _pseudo_rem(f, g, v)
        if r.is_zero():
            base = g
            break
        r = exact_div(r, _content(r.as_univariate(v)))
        f, g = g, r
    cont = _content(base.as_univariate(v)) if not base.is_constant() else None
    if cont is not None and not cont.is_constant():
        base = exact_div(base, cont)
    return base


def _pseudo_rem(f, g, v):
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g, all in var v."""
    fc = f.as_univariate(v)
    gc = g.as_univariate(v)
    df, dg = len(fc) - 1, len(gc) - 1
    lc = gc[-1]
    e = df - dg + 1
    r = list(fc)
    while len(r) - 1 >= dg and any(not c.is_zero() for c in r):
        while r and r[-1].is_zero():
            r.pop()
        if len(r) - 1 < dg or not r:
            break
        top = r[-1]
        shift = len(r) - 1 - dg
        r = [c * lc for c in r]
        for i, c in enumerate(gc):
            r[shift + i] = r[shift + i] - top * c
        r.pop()
        e -= 1
        while r and r[-1].is_zero():
            r.pop()
    result = MultiPoly.from_univariate(r, v, f.vars, f.spec) if r else MultiPoly.zero(f.vars, f.spec)
    for _ in range(max(e, 0)):
        result = result * lc
    return result


def squarefree_part_hom(f):
    """Product of the distinct irreducible factors of a homogeneous poly.

    Char-p-safe: derivative-dead variables are skipped, factors whose
    multiplicity is divisible by the characteristic are recovered from the
    gcd, and fully derivative-dead polynomials descend through a p-th root.
    """
    if f.is_zero():
        raise ZeroDivisionError("squarefree part of zero")
    if f.is_constant():
        return MultiPoly.const(f.vars, f.spec, 1)
    for v in f.variables_present():
        fv = f.derivative(v)
        if fv.is_zero():
            continue
        g = gcd_hom(f, fv)
        if g.is_constant():
            return canonicalize(f)
        w = exact_div(f, g)
        rest = squarefree_part_hom(g)
        merged = w * exact_div(rest, gcd_hom(rest, w))
        return canonicalize(merged)
    return squarefree_part_hom(pth_root(f))


# ---------------------------------------------------------------------------
# resultants


class _PolyRingAdapter:
    def __init__(self, vars, spec):
        self.vars = vars
        self.spec = spec

    def one(self):
        return MultiPoly.const(self.vars, self.spec, 1)

    def zero(self):
        return MultiPoly.zero(self.vars, self.spec)

    def mul(self, a, b):
        return a * b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def pow(self, a, k):
        return a**k

    def exact_div(self, a, b):
        if a.is_zero():
            return a
        return exact_div(a, b)

    def is_zero(self, a):
        return a.is_zero()


def prem_list(A, B, ring):
    """Pseudo-remainder of coefficient lists over any ring whose elements
    support * and -: lc(B)^(dA - dB + 1) * A mod B."""
    dB = len(B) - 1
    lc = B[-1]
    r = list(A)
    e = len(A) - len(B) + 1
    while True:
        while r and r[-1].is_zero():
            r.pop()
        if len(r) - 1 < dB or not r:
            break
        top = r[-1]
        shift = len(r) - 1 - dB
        r = [c * lc for c in r]
        for i, c in enumerate(B):
            r[shift + i] = r[shift + i] - (top * c)
        r.pop()
        e -= 1
    for _ in range(max(e, 0)):
        r = [c * lc for c in r]
    while r and r[-1].is_zero():
        r.pop()
    return r


def prs_resultant_core(A, B, ring):
    """Subresultant-PRS resultant of trimmed nonzero coefficient lists."""
    sign = 1
    if len(A) < len(B):
        A, B = B, A
        if ((len(A) - 1) * (len(B) - 1)) & 1:
            sign = -sign
    if len(A) == 1 and len(B) == 1:
        raise NormalGeomError("resultant of two constants")
    if len(B) == 1:
        res = ring.pow(B[0], len(A) - 1)
        return ring.neg(res) if sign < 0 else res
    g_prev = ring.one()
    h_prev = ring.one()
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if (dA & 1) and (dB & 1):
            sign = -sign
        R = prem_list(A, B, ring)
        A = B
        divisor = ring.mul(g_prev, ring.pow(h_prev, delta))
        if R:
            B = [
                c if c.is_zero() else ring.exact_div(c, divisor) for c in R
            ]
            while B and B[-1].is_zero():
                B.pop()
        else:
            B = []
        g_prev = A[-1]
        if delta == 1:
            h_prev = g_prev
        elif delta > 1:
            h_prev = ring.exact_div(
                ring.pow(g_prev, delta), ring.pow(h_prev, delta - 1)
            )
        if not B:
            return ring.zero()
        if len(B) == 1:
            dA = len(A) - 1
            if dA >= 1:
                res = ring.exact_div(
                    ring.pow(B[0], dA), ring.pow(h_prev, dA - 1)
                )
            else:
                res = B[0]
            return ring.neg(res) if sign < 0 else res


def resultant_lists(A, B, ring):
    """Resultant of two coefficient lists at their formal degrees (zero-poly
    tops allowed): boundary deficits contribute powers of the other leading
    coefficient, then the subresultant PRS finishes the job."""
    m, n = len(A) - 1, len(B) - 1
    A = list(A)
    B = list(B)
    while A and A[-1].is_zero():
        A.pop()
    while B and B[-1].is_zero():
        B.pop()
    if not A or not B:
        return ring.zero()
    kdef = m - (len(A) - 1)
    ldef = n - (len(B) - 1)
    if kdef > 0 and ldef > 0:
        return ring.zero()
    sign = 1
    factor = None
    if kdef > 0:
        factor = ring.pow(B[-1], kdef)
        if (n * kdef) & 1:
            sign = -sign
    elif ldef > 0:
        factor = ring.pow(A[-1], ldef)
    core = prs_resultant_core(A, B, ring)
    out = ring.mul(factor, core) if factor is not None else core
    return ring.neg(out) if sign < 0 else out


def resultant_homz(F, G):
    """Resultant eliminating z of two homogeneous ternary polynomials, as a
    BinaryForm in (x, y); the dense representation keeps the hot counting
    paths off the sparse-dict arithmetic."""
    from .univariate import BinaryFormRing

    spec = F.spec
    ring = BinaryFormRing(spec)
    A = _z_binary_lists(F)
    B = _z_binary_lists(G)
    if not A or not B:
        raise NormalGeomError("resultant of the zero polynomial")
    if len(A) == 1 and len(B) == 1:
        raise NormalGeomError("both inputs are constant in z")
    if len(B) == 1:
        return ring.pow(B[0], len(A) - 1)
    if len(A) == 1:
        return ring.pow(A[0], len(B) - 1)
    return resultant_lists(A, B, ring)


def _z_binary_lists(P):
    from .univariate import BinaryForm

    sp = P.spec
    if P.is_zero():
        return []
    if not P.is_homogeneous():
        raise NormalGeomError("dense elimination needs homogeneous input")
    D = P.total_degree()
    dz = P.degree_in("z")
    buckets = [[sp.zero()] * (D - k + 1) for k in range(dz + 1)]
    for e, c in P.terms.items():
        buckets[e[2]][e[1]] = sp.add(buckets[e[2]][e[1]], c)
    return [BinaryForm(sp, D - k, buckets[k]) for k in range(dz + 1)]


def resultant(f, g, var):
    """Sylvester resultant of f and g with respect to ``var``.

    Subresultant PRS over Q, fraction-free Sylvester determinant over F_p.
    Identically zero exactly when f and g share a factor involving var.
    """
    if f.is_zero() or g.is_zero():
        raise NormalGeomError("resultant of the zero polynomial")
    df, dg = f.degree_in(var), g.degree_in(var)
    if df <= 0 and dg <= 0:
        raise NormalGeomError(f"both inputs have degree 0 in {var}")
    if f.spec.kind == RATIONALS:
        return resultant_prs(f, g, var)
    return resultant_sylvester(f, g, var)


def resultant_sylvester(f, g, var):
    """Resultant as the Bareiss determinant of the Sylvester matrix."""
    fc = f.as_univariate(var)
    gc = g.as_univariate(var)
    return _sylvester_det(fc, gc, f.vars, f.spec)


def _sylvester_det(fc, gc, vars, spec):
    m, n = len(fc) - 1, len(gc) - 1
    zero = MultiPoly.zero(vars, spec)
    if m < 0 or n < 0:
        raise NormalGeomError("resultant of the zero polynomial")
    if m == 0 and n == 0:
        raise NormalGeomError("both inputs are constant in the variable")
    if n == 0:
        return gc[0] ** m
    if m == 0:
        return fc[0] ** n
    frow = list(reversed(fc))
    grow = list(reversed(gc))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + frow + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + grow + [zero] * (size - i - n - 1))
    return bareiss_det(rows, _PolyRingAdapter(vars, spec))


def resultant_prs(f, g, var):
    """Resultant by the subresultant polynomial remainder sequence.

    Classical g/h bookkeeping; every division is exact in the coefficient
    domain.  Sign conventions match the Sylvester determinant (the two are
    cross-checked in the tests)."""
    ring = _PolyRingAdapter(f.vars, f.spec)
    return resultant_lists(f.as_univariate(var), g.as_univariate(var), ring)


def resultant_forms(fc, gc, vars, spec):
    """Resultant of two (s,t)-forms given as coefficient lists of MultiPoly
    entries at their FORMAL degrees (lists may carry zero leading entries).

    The determinant route tolerates vanishing leading coefficients, which
    chart parametrizations produce at degenerate dual points."""
    return _formal_sylvester_det(fc, gc, vars, spec)


def _formal_sylvester_det(fc, gc, vars, spec):
    m, n = len(fc) - 1, len(gc) - 1
    zero = MultiPoly.zero(vars, spec)
    frow = list(reversed(fc))
    grow = list(reversed(gc))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + frow + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + grow + [zero] * (size - i - n - 1))
    return bareiss_det(rows, _PolyRingAdapter(vars, spec))


def subresultant_form(fc, gc, k, vars, spec):
    """k-th principal subresultant of two formal-degree coefficient lists,
    as a polynomial in the coefficient ring."""
    zero = MultiPoly.zero(vars, spec)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n - 2 * k
    if size <= 0:
        raise NormalGeomError("subresultant index too large")
    rows = []
    for i in range(n - k):
        shift = n - k - 1 - i
        row = []
        for col in range(size):
            power = m + n - k - 1 - col
            idx = power - shift
            row.append(fc[idx] if 0 <= idx <= m else zero)
        rows.append(row)
    for j in range(m - k):
        shift = m - k - 1 - j
        row = []
        for col in range(size):
            power = m + n - k - 1 - col
            idx = power - shift
            row.append(gc[idx] if 0 <= idx <= n else zero)
        rows.append(row)
    return bareiss_det(rows, _PolyRingAdapter(vars, spec))


# ---------------------------------------------------------------------------
# restriction to lines


def restrict_line(P, a, b):
    """P(s*a + t*b) as a BinaryForm of degree deg P.

    ``a`` and ``b`` are coordinate triples spanning a projective line; P
    must be homogeneous.  Returns the zero form when the line lies inside
    the zero set of P.
    """
    sp = P.spec
    if not P.is_homogeneous():
        raise NormalGeomError("restriction needs a homogeneous polynomial")
    d = P.total_degree()
    if d < 0:
        return BinaryForm(sp, 0, [sp.zero()])
    a = [sp.coerce(v) if not sp.is_element(v) else v for v in a]
    b = [sp.coerce(v) if not sp.is_element(v) else v for v in b]
    nvars = len(P.vars)
    # pw[i][e] = dense coefficients of (a_i s + b_i t)^e
    pw = [[[sp.one()]] for _ in range(nvars)]

    def powers(i, e):
        lst = pw[i]
        while len(lst) <= e:
            prev = lst[-1]
            nxt = [sp.zero()] * (len(prev) + 1)
            for j, c in enumerate(prev):
                nxt[j] = sp.add(nxt[j], sp.mul(c, a[i]))
                nxt[j + 1] = sp.add(nxt[j + 1], sp.mul(c, b[i]))
            lst.append(nxt)
        return lst[e]

    out = [sp.zero()] * (d + 1)
    for exps, c in P.terms.items():
        acc = [c]
        for i, e in enumerate(exps):
            if e:
                factor = powers(i, e)
                nxt = [sp.zero()] * (len(acc) + e)
                for j, x in enumerate(acc):
                    if not sp.is_zero(x):
                        for k2, y in enumerate(factor):
                            nxt[j + k2] = sp.add(nxt[j + k2], sp.mul(x, y))
                acc = nxt
        for j, x in enumerate(acc):
            out[j] = sp.add(out[j], x)
    return BinaryForm(sp, d, out)


def as_binary_form(P, var_s, var_t):
    """Convert a homogeneous two-variable MultiPoly into a BinaryForm."""
    sp = P.spec
    if P.is_zero():
        return BinaryForm(sp, 0, [sp.zero()])
    if not P.is_homogeneous():
        raise NormalGeomError("not homogeneous")
    d = P.total_degree()
    i_s, i_t = P.vars.index(var_s), P.vars.index(var_t)
    out = [sp.zero()] * (d + 1)
    for e, c in P.terms.items():
        if sum(e) != e[i_s] + e[i_t]:
            raise NormalGeomError("polynomial involves other variables")
        out[e[i_t]] = sp.add(out[e[i_t]], c)
    return BinaryForm(sp, d, out)


def binary_form_to_poly(bf, vars, spec, var_s, var_t):
    i_s, i_t = list(vars).index(var_s), list(vars).index(var_t)
    out = {}
    for k, c in enumerate(bf.c):
        if spec.is_zero(c):
            continue
        e = [0] * len(vars)
        e[i_s] = bf.n - k
        e[i_t] = k
        out[tuple(e)] = c
    return MultiPoly(vars, out, spec)


# ---------------------------------------------------------------------------
# canonical form, printing, parsing


def canonicalize(P):
    """Canonical projective representative, scaled by the printing order:
    leading (deglex) coefficient 1 over F_p; integer, primitive, positive
    leading coefficient over Q."""
    if P.is_zero():
        return P
    sp = P.spec
    if sp.kind == PRIME:
        _, lead = P.deglex_leading()
        return P.scale(sp.inv(lead))
    den = 1
    for c in P.terms.values():
        den = lcm(den, c.denominator)
    num = 0
    for c in P.terms.values():
        num = igcd(num, c.numerator * (den // c.denominator))
    scale = Fraction(den, num)
    _, lead = P.deglex_leading()
    if lead * scale < 0:
        scale = -scale
    return P.scale(scale)


def _term_sort_key(e):
    return (sum(e), e)


def to_string(P):
    """Canonical grammar string (deglex-descending term order)."""
    Pc = canonicalize(P)
    sp = Pc.spec
    if Pc.is_zero():
        return "0"
    parts = []
    for e in sorted(Pc.terms, key=_term_sort_key, reverse=True):
        c = Pc.terms[e]
        if sp.kind == RATIONALS:
            neg = c < 0
            mag = abs(int(c))
        else:
            neg = False
            mag = c
        factors = []
        if mag != 1 or not any(e):
            factors.append(str(mag))
        for v, exp in zip(Pc.vars, e):
            if exp == 1:
                factors.append(v)
            elif exp > 1:
                factors.append(f"{v}^{exp}")
        body = "*".join(factors)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take_int(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected integer", start)
        return int(self.text[start : self.pos])

    def take_name(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected variable name", start)
        return self.text[start : self.pos]


def parse_poly(text, vars, spec):
    """Parse an expression in the package grammar into a MultiPoly."""
    tk = _Tokenizer(text)
    result = MultiPoly.zero(vars, spec)
    sign = 1
    ch = tk.peek()
    if ch in ("+", "-"):
        tk.pos += 1
        sign = -1 if ch == "-" else 1
    while True:
        term = _parse_term(tk, vars, spec)
        result = result + (term if sign > 0 else -term)
        ch = tk.peek()
        if ch is None:
            return result
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            raise ParseError(f"unexpected character {ch!r}", tk.pos)
        tk.pos += 1
        if tk.peek() is None:
            raise ParseError("trailing operator", tk.pos)


def _parse_term(tk, vars, spec):
    out = _parse_factor(tk, vars, spec)
    while tk.peek() == "*":
        tk.pos += 1
        out = out * _parse_factor(tk, vars, spec)
    return out


def _parse_factor(tk, vars, spec):
    ch = tk.peek()
    if ch is None:
        raise ParseError("unexpected end of input", tk.pos)
    if ch.isdigit():
        value = tk.take_int()
        return MultiPoly.const(vars, spec, value)
    if ch.isalpha():
        pos = tk.pos
        name = tk.take_name()
        if name not in vars:
            raise ParseError(f"unknown variable {name!r}", pos)
        exp = 1
        if tk.peek() == "^":
            tk.pos += 1
            exp = tk.take_int()
        return MultiPoly.variable(vars, spec, name) ** exp
    raise ParseError(f"unexpected character {ch!r}", tk.pos)
