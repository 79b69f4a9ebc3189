"""Dense univariate polynomials and binary forms over a FieldSpec.

Coefficient lists are little-endian (index = power) with no trailing zeros;
``[]`` is zero.  Over F_p the work is delegated to the kernel backend; over
Q the same algorithms run on ``Fraction`` values.

A ``BinaryForm`` is a homogeneous polynomial in two variables (s, t) of a
recorded formal degree n, stored as the dense list ``c`` with
``f = sum c[k] * s^(n-k) * t^k``.  Setting s = 1 identifies ``c`` with a
univariate polynomial in t, except that roots at (0:1) show up as a degree
deficit rather than as honest roots; the form-level helpers account for
that point explicitly.
"""

from fractions import Fraction

from . import _fpkernel as kern
from .errors import NormalGeomError
from .fields import PRIME, is_prime, rationals
from .linalg import FieldRing, bareiss_det

_QSPEC = rationals()


def trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


def deg(c):
    """Degree with deg 0 = -1 for the zero polynomial."""
    return len(c) - 1


def f_add(a, b, spec):
    if spec.kind == PRIME:
        return kern.add(a, b, spec.p)
    out = list(a) + [spec.zero()] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return trim(out)


def f_sub(a, b, spec):
    if spec.kind == PRIME:
        return kern.sub(a, b, spec.p)
    out = list(a) + [spec.zero()] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = out[i] - x
    return trim(out)


def f_scale(a, k, spec):
    if spec.is_zero(k):
        return []
    if spec.kind == PRIME:
        return kern.scale(a, k, spec.p)
    return [x * k for x in a]


def f_mul(a, b, spec):
    if spec.kind == PRIME:
        return kern.mul(a, b, spec.p)
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def f_divmod(a, b, spec):
    if spec.kind == PRIME:
        return kern.divmod_poly(a, b, spec.p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b)
    if len(r) < db:
        return [], trim(r)
    inv_lc = 1 / b[-1]
    q = [Fraction(0)] * (len(r) - db + 1)
    for i in range(len(r) - db, -1, -1):
        c = r[i + db - 1]
        if c:
            c = c * inv_lc
            q[i] = c
            for j in range(db - 1):
                r[i + j] -= c * b[j]
            r[i + db - 1] = Fraction(0)
    return trim(q), trim(r)


def f_rem(a, b, spec):
    return f_divmod(a, b, spec)[1]


def f_monic(a, spec):
    if not a:
        return []
    if spec.kind == PRIME:
        return kern.monic(a, spec.p)
    inv = spec.inv(a[-1])
    return [x * inv for x in a]


def f_gcd(a, b, spec):
    if spec.kind == PRIME:
        return kern.gcd(a, b, spec.p)
    while b:
        a, b = b, f_rem(a, b, spec)
    return f_monic(a, spec)


def f_derivative(a, spec):
    if spec.kind == PRIME:
        return kern.derivative(a, spec.p)
    return trim([i * a[i] for i in range(1, len(a))])


def f_eval(a, x, spec):
    if spec.kind == PRIME:
        return kern.evaluate(a, x, spec.p)
    out = spec.zero()
    for c in reversed(a):
        out = out * x + c
    return out


def f_resultant(a, b, spec):
    """Resultant using actual degrees; inputs nonzero, not both constant."""
    if not a or not b:
        return spec.zero()
    if len(a) == 1 and len(b) == 1:
        raise NormalGeomError("resultant of two constants is undefined")
    if spec.kind == PRIME:
        return kern.resultant(a, b, spec.p)
    acc = spec.one()
    while len(b) > 1:
        r = f_rem(a, b, spec)
        if not r:
            return spec.zero()
        da, db, dr = deg(a), deg(b), deg(r)
        if (da & 1) and (db & 1):
            acc = -acc
        acc = acc * b[-1] ** (da - dr)
        a, b = b, r
    return acc * b[0] ** deg(a)


def f_squarefree_part(a, spec):
    """Monic product of distinct irreducible factors."""
    if spec.kind == PRIME:
        return kern.squarefree_part(a, spec.p)
    if not a:
        raise ZeroDivisionError("squarefree part of the zero polynomial")
    if len(a) == 1:
        return [spec.one()]
    g = f_gcd(a, f_derivative(a, spec), spec)
    return f_monic(f_divmod(a, g, spec)[0], spec)


def f_distinct_root_degree(a, spec):
    return deg(f_squarefree_part(a, spec))


# ---------------------------------------------------------------------------
# Binary forms


class BinaryForm:
    """Homogeneous binary form of a recorded formal degree.

    The zero form of degree n is representable (all coefficients zero);
    arithmetic keeps formal degrees consistent.
    """

    __slots__ = ("spec", "n", "c")

    def __init__(self, spec, n, coeffs):
        if len(coeffs) > n + 1:
            raise ValueError("coefficient list longer than formal degree allows")
        c = list(coeffs) + [spec.zero()] * (n + 1 - len(coeffs))
        self.spec = spec
        self.n = n
        self.c = c

    def __repr__(self):
        return f"BinaryForm(deg {self.n}, {self.c})"

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.spec == other.spec
            and self.n == other.n
            and self.c == other.c
        )

    def is_zero(self):
        return all(self.spec.is_zero(x) for x in self.c)

    def affine(self):
        """Dense t-polynomial obtained at s = 1 (trimmed)."""
        return trim(self.c)

    def t_degree(self):
        return deg(self.affine())

    def infinity_multiplicity(self):
        """Multiplicity of the root (0:1), i.e. the power of s dividing the
        form beyond what the affine part shows."""
        if self.is_zero():
            raise ZeroDivisionError("zero form")
        return self.n - self.t_degree()

    def evaluate(self, s, t):
        sp = self.spec
        out = sp.zero()
        for k in range(self.n + 1):
            term = sp.mul(self.c[k], sp.mul(sp.pow(s, self.n - k), sp.pow(t, k)))
            out = sp.add(out, term)
        return out

    def scale(self, k):
        return BinaryForm(self.spec, self.n, [self.spec.mul(x, k) for x in self.c])

    def mul(self, other):
        prod = f_mul(trim(self.c), trim(other.c), self.spec)
        return BinaryForm(self.spec, self.n + other.n, prod)

    # ring operators for same-degree forms (homogeneous eliminations keep
    # matching formal degrees, so mixed-degree addition is a logic error)
    def __add__(self, other):
        if self.n != other.n:
            raise NormalGeomError("adding binary forms of different degrees")
        return BinaryForm(
            self.spec, self.n, f_add(self.c, other.c, self.spec)
        )

    def __sub__(self, other):
        if self.n != other.n:
            raise NormalGeomError("subtracting binary forms of different degrees")
        return BinaryForm(
            self.spec, self.n, f_sub(self.c, other.c, self.spec)
        )

    def __mul__(self, other):
        return self.mul(other)

    def __pow__(self, k):
        out = BinaryForm(self.spec, 0, [self.spec.one()])
        for _ in range(k):
            out = out.mul(self)
        return out

    def deriv_t(self):
        return BinaryForm(
            self.spec,
            self.n - 1,
            [self.spec.mul(self.spec.coerce(k), self.c[k]) for k in range(1, self.n + 1)],
        )

    def deriv_s(self):
        return BinaryForm(
            self.spec,
            self.n - 1,
            [
                self.spec.mul(self.spec.coerce(self.n - k), self.c[k])
                for k in range(self.n)
            ],
        )

    def squarefree_part(self):
        """Product of the distinct projective linear factors, as a form."""
        aff = f_squarefree_part(self.affine(), self.spec)
        extra = 1 if self.infinity_multiplicity() > 0 else 0
        return BinaryForm(self.spec, deg(aff) + extra, aff)

    def distinct_root_count(self):
        """Number of distinct roots in P^1 over the algebraic closure."""
        if self.is_zero():
            raise ZeroDivisionError("zero form has no root count")
        return f_distinct_root_degree(self.affine(), self.spec) + (
            1 if self.infinity_multiplicity() > 0 else 0
        )

    def root_multiplicity_at_zero_t(self):
        """Multiplicity of the root (1:0) (t = 0)."""
        for k, x in enumerate(self.c):
            if not self.spec.is_zero(x):
                return k
        raise ZeroDivisionError("zero form")


def binary_exact_div(a, b):
    """Exact quotient of binary forms; raises if the division is inexact."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if a.is_zero():
        return BinaryForm(a.spec, a.n - b.n, [])
    q, r = f_divmod(a.affine(), b.affine(), a.spec)
    if r:
        raise NormalGeomError("inexact binary-form division")
    return BinaryForm(a.spec, a.n - b.n, q)


class BinaryFormRing:
    """Ring adapter over same-field binary forms, for generic PRS code."""

    def __init__(self, spec):
        self.spec = spec

    def one(self):
        return BinaryForm(self.spec, 0, [self.spec.one()])

    def mul(self, a, b):
        return a.mul(b)

    def sub(self, a, b):
        return a - b

    def exact_div(self, a, b):
        return binary_exact_div(a, b)

    def is_zero(self, a):
        return a.is_zero()

    def pow(self, a, k):
        return a**k

    def neg(self, a):
        z = BinaryForm(self.spec, a.n, [])
        return z - a


def binary_gcd(f, g):
    """Homogeneous gcd of two binary forms (monic-affine normalization)."""
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    spec = f.spec
    beta = min(f.infinity_multiplicity(), g.infinity_multiplicity())
    aff = f_gcd(f.affine(), g.affine(), spec)
    return BinaryForm(spec, deg(aff) + beta, aff)


def binary_resultant(f, g):
    """Resultant of two binary forms taken at their FORMAL degrees.

    Vanishes exactly when the forms share a projective root, including
    roots at (0:1) that the affine view hides.  Computed as the Sylvester
    determinant, by Bareiss.
    """
    spec = f.spec
    m, n = f.n, g.n
    if m == 0 and n == 0:
        raise NormalGeomError("resultant of two degree-0 forms is undefined")
    fc = list(reversed(f.c))  # highest t-power first for row building
    gc = list(reversed(g.c))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([spec.zero()] * i + fc + [spec.zero()] * (size - i - m - 1))
    for i in range(m):
        rows.append([spec.zero()] * i + gc + [spec.zero()] * (size - i - n - 1))
    return bareiss_det(rows, FieldRing(spec))


def subresultant_coefficient(f, g, k):
    """k-th principal subresultant coefficient at formal degrees.

    Rows are t^i * f for i < n-k and t^j * g for j < m-k, written on the
    monomials of degree m+n-k-1 down to k.  k = 0 recovers the resultant.
    If the homogeneous gcd of the forms has degree > k, the determinant
    vanishes (it may also vanish spuriously when leading coefficients
    degenerate, which callers treat as extra candidates to verify).
    """
    spec = f.spec
    m, n = f.n, g.n
    size = m + n - 2 * k
    if size <= 0:
        raise NormalGeomError("subresultant index too large for the degrees")
    rows = []
    for i in range(n - k):
        # coefficients of t^(n-k-1-i) * f on monomial degrees m+n-k-1 .. k
        row = []
        shift = n - k - 1 - i
        for col in range(size):
            power = m + n - k - 1 - col  # t-degree of this column
            idx = power - shift
            row.append(f.c[idx] if 0 <= idx <= m else spec.zero())
        rows.append(row)
    for j in range(m - k):
        row = []
        shift = m - k - 1 - j
        for col in range(size):
            power = m + n - k - 1 - col
            idx = power - shift
            row.append(g.c[idx] if 0 <= idx <= n else spec.zero())
        rows.append(row)
    return bareiss_det(rows, FieldRing(spec))


# ---------------------------------------------------------------------------
# Rational root extraction (exact and complete, no integer factorization)


def _clear_denominators(coeffs):
    """Fraction/int list -> primitive integer list, up to positive scale."""
    from math import gcd as igcd, lcm

    fracs = [Fraction(c) for c in coeffs]
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for v in ints:
        g = igcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _rational_reconstruct(r, modulus, num_bound, den_bound):
    """Find a/b with a = r*b mod modulus, |a| <= num_bound, 0 < b <= den_bound."""
    r0, r1 = modulus, r % modulus
    t0, t1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > den_bound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return Fraction(r1, t1)


def _lift_prime(int_coeffs):
    """A prime q preserving degree and squarefreeness of the integer poly."""
    q = 10007
    tries = 0
    while tries < 2000:
        if is_prime(q) and int_coeffs[-1] % q:
            fq = [c % q for c in int_coeffs]
            fq = kern.trim(fq)
            if deg(fq) == deg(int_coeffs):
                d = kern.derivative(fq, q)
                if d and deg(kern.gcd(fq, d, q)) == 0:
                    return q
        q += 2
        tries += 1
    raise NormalGeomError("no usable lifting prime found")


def rational_roots(coeffs):
    """All rational roots of a univariate polynomial with Q coefficients.

    Exact and complete: roots are located modulo a prime that keeps the
    squarefree part intact, Newton-lifted to a modulus past the coefficient
    bound (numerators divide the constant term, denominators the leading
    one), rationally reconstructed, and verified by exact evaluation.
    """
    ints = _clear_denominators(trim(list(coeffs)))
    if not ints:
        raise ZeroDivisionError("zero polynomial")
    roots = []
    # peel off roots at zero
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        ints = ints[k:]
    if len(ints) == 1:
        return roots
    # squarefree reduction over Q
    sf = f_squarefree_part([Fraction(c) for c in ints], _QSPEC)
    ints = _clear_denominators(sf)
    n = deg(ints)
    if n == 1:
        roots.append(Fraction(-ints[0], ints[1]))
        return sorted(set(roots))
    num_bound = abs(ints[0])
    den_bound = abs(ints[-1])
    q = _lift_prime(ints)
    fq = kern.trim([c % q for c in ints])
    residue_roots = kern.roots(fq, q)
    if not residue_roots:
        return sorted(set(roots))
    target = 2 * num_bound * den_bound + 1
    frac_ints = [Fraction(c) for c in ints]
    dints = [i * ints[i] for i in range(1, len(ints))]
    for r in residue_roots:
        modulus = q
        x = r
        while modulus < target:
            modulus *= modulus
            fx = _eval_int_mod(ints, x, modulus)
            dfx = _eval_int_mod(dints, x, modulus)
            # Newton step needs f'(x) invertible; the simple-root choice of q
            # guarantees it at the base level and lifting preserves it
            try:
                inv = pow(dfx, -1, modulus)
            except ValueError:
                break
            x = (x - fx * inv) % modulus
        cand = _rational_reconstruct(x, modulus, num_bound, den_bound)
        if cand is not None and _eval_exact(frac_ints, cand) == 0:
            roots.append(cand)
    return sorted(set(roots))


def _eval_int_mod(c, x, m):
    out = 0
    for v in reversed(c):
        out = (out * x + v) % m
    return out


def _eval_exact(c, x):
    out = Fraction(0)
    for v in reversed(c):
        out = out * x + v
    return out


def fp_roots(coeffs, p):
    """Roots in F_p of a nonzero dense polynomial, ascending."""
    if p <= 200000:
        return kern.roots(coeffs, p)
    # large p: strip to the product of linear factors, then split it
    xp_minus_x = kern.sub(kern.powmod([0, 1], p, coeffs, p), [0, 1], p)
    lin = kern.gcd(coeffs, xp_minus_x, p)
    return sorted(_split_linear(lin, p, seed=0x5EED))


def _split_linear(f, p, seed):
    """Roots of a product of distinct linear factors (equal-degree split)."""
    import random

    out = []
    stack = [f]
    rng = random.Random(seed)
    while stack:
        g = stack.pop()
        d = deg(g)
        if d <= 0:
            continue
        if d == 1:
            out.append((-g[0] * pow(g[1], -1, p)) % p)
            continue
        while True:
            delta = rng.randrange(p)
            h = kern.powmod([delta, 1], (p - 1) // 2, g, p)
            h = kern.sub(h, [1], p)
            c = kern.gcd(g, h, p)
            if 0 < deg(c) < d:
                stack.append(c)
                stack.append(kern.divmod_poly(g, c, p)[0])
                break
    return out
