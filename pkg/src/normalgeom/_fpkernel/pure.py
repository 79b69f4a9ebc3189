"""Pure-Python twin of the compiled F_p kernel.

Dense univariate polynomials over F_p as little-endian coefficient lists of
ints in [0, p): index = power, no trailing zeros, ``[]`` is the zero
polynomial.  Every function returns freshly allocated, trimmed lists.

The compiled module ``normalgeom._fpkernel.core`` exports the same names
with identical semantics; ``normalgeom._fpkernel`` picks one at import.
"""

BACKEND = "pure"


def trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def poly_from_ints(c, p):
    return trim([x % p for x in c])


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return trim(out)


def sub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return trim(out)


def neg(a, p):
    return [(-x) % p for x in a]


def scale(a, k, p):
    k %= p
    if k == 0:
        return []
    return [x * k % p for x in a]


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def divmod_poly(a, b, p):
    """Quotient and remainder; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, dbm1 = len(b), len(b) - 1
    if len(r) < db:
        return [], trim(r)
    inv_lc = pow(b[-1], -1, p)
    q = [0] * (len(r) - dbm1)
    for i in range(len(r) - db, -1, -1):
        c = r[i + dbm1]
        if c:
            c = c * inv_lc % p
            q[i] = c
            for j in range(dbm1):
                r[i + j] = (r[i + j] - c * b[j]) % p
            r[i + dbm1] = 0
    return trim(q), trim(r)


def rem(a, b, p):
    return divmod_poly(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    inv_lc = pow(a[-1], -1, p)
    return [x * inv_lc % p for x in a]


def gcd(a, b, p):
    """Monic gcd."""
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def resultant(a, b, p):
    """Resultant of a, b using their actual degrees.

    Classic remainder recursion:
    Res(A, B) = (-1)^(deg A * deg B) * lc(B)^(deg A - deg R) * Res(B, R).
    Returns 0 when the polynomials share a root over the closure; both
    inputs must be nonzero with deg A + deg B > 0.
    """
    if not a or not b:
        return 0
    acc = 1
    while len(b) > 1:
        r = rem(a, b, p)
        if not r:
            return 0
        da, db, dr = len(a) - 1, len(b) - 1, len(r) - 1
        if (da & 1) and (db & 1):
            acc = -acc % p
        acc = acc * pow(b[-1], da - dr, p) % p
        a, b = b, r
    # b is a nonzero constant
    return acc * pow(b[0], len(a) - 1, p) % p


def evaluate(a, x, p):
    out = 0
    for c in reversed(a):
        out = (out * x + c) % p
    return out


def roots(a, p):
    """All roots in F_p, found by scanning; a must be nonzero."""
    return [x for x in range(p) if evaluate(a, x, p) == 0]


def derivative(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def pth_root(a, p):
    """For a with only p-divisible exponents, the unique p-th root.

    Frobenius is the identity on F_p, so coefficients are kept as is.
    """
    return [a[i] for i in range(0, len(a), p)]


def squarefree_part(a, p):
    """Monic product of the distinct irreducible factors of a.

    Handles the characteristic-p pitfalls: factors hidden by vanishing
    derivative are recovered by p-th-root descent, and factors whose
    multiplicity is divisible by p are recursively extracted from
    gcd(a, a').
    """
    if not a:
        raise ZeroDivisionError("squarefree part of the zero polynomial")
    if len(a) == 1:
        return [1]
    d = derivative(a, p)
    if not d:
        return squarefree_part(pth_root(a, p), p)
    g = gcd(a, d, p)
    w = divmod_poly(a, g, p)[0]  # factors with multiplicity prime to p, once
    # strip w-factors from g, leaving the part with p-divisible multiplicity
    g1 = g
    while True:
        c = gcd(g1, w, p)
        if len(c) <= 1:
            break
        g1 = divmod_poly(g1, c, p)[0]
    if len(g1) <= 1:
        return monic(w, p)
    return monic(mul(w, squarefree_part(pth_root(g1, p), p), p), p)


def distinct_root_degree(a, p):
    """Number of distinct roots of a over the algebraic closure."""
    return len(squarefree_part(a, p)) - 1


def powmod(a, e, m, p):
    """a^e mod m; m must have degree >= 1."""
    result = [1]
    a = rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, a, p), m, p)
        a = rem(mul(a, a, p), m, p)
        e >>= 1
    return result


def resultant_gcd_mismatches(p, max_deg):
    """Exhaustively check Res(f,g) = 0 <=> deg gcd(f,g) > 0 over F_p.

    Enumerates every pair of monic polynomials of degree 1..max_deg (both
    sides of the equivalence are invariant under scaling, so monic pairs
    are exhaustive for the property).  Returns (pairs_checked, mismatches).
    """
    polys = []
    for deg in range(1, max_deg + 1):
        for code in range(p**deg):
            c = []
            v = code
            for _ in range(deg):
                c.append(v % p)
                v //= p
            c.append(1)
            polys.append(c)
    pairs = 0
    bad = 0
    for f in polys:
        for g in polys:
            pairs += 1
            res_zero = resultant(f, g, p) == 0
            gcd_pos = len(gcd(f, g, p)) > 1
            if res_zero != gcd_pos:
                bad += 1
    return pairs, bad
