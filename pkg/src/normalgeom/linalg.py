"""Small exact linear algebra: fraction-free determinants and field kernels.

``bareiss_det`` works over any integral domain presented as a ring adapter
(an object with mul/sub/exact_div/is_zero/one); it is the correctness anchor
for every Sylvester-style determinant in the package.
"""


class FieldRing:
    """Ring adapter over a FieldSpec (exact division is plain division)."""

    def __init__(self, spec):
        self.spec = spec

    def one(self):
        return self.spec.one()

    def mul(self, a, b):
        return self.spec.mul(a, b)

    def sub(self, a, b):
        return self.spec.sub(a, b)

    def exact_div(self, a, b):
        return self.spec.div(a, b)

    def is_zero(self, a):
        return self.spec.is_zero(a)


def bareiss_det(matrix, ring):
    """Determinant by Bareiss fraction-free elimination with row pivoting.

    ``matrix`` is a list of rows of ring elements; it is consumed.
    """
    n = len(matrix)
    if n == 0:
        return ring.one()
    m = [list(row) for row in matrix]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        pivot_row = None
        for i in range(k, n):
            if not ring.is_zero(m[i][k]):
                pivot_row = i
                break
        if pivot_row is None:
            return ring.sub(m[0][0], m[0][0])  # zero of the ring
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(
                    ring.mul(pk, m[i][j]), ring.mul(m[i][k], m[k][j])
                )
                m[i][j] = ring.exact_div(num, prev)
            m[i][k] = ring.sub(m[i][k], m[i][k])
        prev = pk
    det = m[n - 1][n - 1]
    if sign < 0:
        det = ring.sub(ring.sub(det, det), det)
    return det


def kernel_vector(rows, spec):
    """Kernel of a matrix over a field.

    Returns (dimension, basis_vector or None): the basis vector is given
    only when the kernel is one-dimensional.  ``rows`` is a list of rows,
    each of width equal to the number of unknowns.
    """
    if not rows:
        return None
    width = len(rows[0])
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pr = None
        for i in range(r, len(m)):
            if not spec.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = spec.inv(m[r][c])
        m[r] = [spec.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not spec.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [spec.sub(x, spec.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(width) if c not in pivots]
    dim = len(free)
    if dim != 1:
        return dim, None
    fc = free[0]
    vec = [spec.zero()] * width
    vec[fc] = spec.one()
    for row_i, pc in enumerate(pivots):
        vec[pc] = spec.neg(m[row_i][fc])
    return dim, vec


def mat_vec(m, v, spec):
    return [
        _dot(row, v, spec)
        for row in m
    ]


def _dot(a, b, spec):
    acc = spec.zero()
    for x, y in zip(a, b):
        acc = spec.add(acc, spec.mul(x, y))
    return acc


def mat_mul(a, b, spec):
    cols = list(zip(*b))
    return [[_dot(row, col, spec) for col in cols] for row in a]


def det3(m, spec):
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    t1 = spec.mul(a, spec.sub(spec.mul(e, i), spec.mul(f, h)))
    t2 = spec.mul(b, spec.sub(spec.mul(d, i), spec.mul(f, g)))
    t3 = spec.mul(c, spec.sub(spec.mul(d, h), spec.mul(e, g)))
    return spec.add(spec.sub(t1, t2), t3)


def adjugate3(m, spec):
    """Adjugate of a 3x3 matrix: inverse up to the determinant factor."""
    def cof(r1, r2, c1, c2):
        return spec.sub(
            spec.mul(m[r1][c1], m[r2][c2]), spec.mul(m[r1][c2], m[r2][c1])
        )

    return [
        [cof(1, 2, 1, 2), spec.neg(cof(0, 2, 1, 2)), cof(0, 1, 1, 2)],
        [spec.neg(cof(1, 2, 0, 2)), cof(0, 2, 0, 2), spec.neg(cof(0, 1, 0, 2))],
        [cof(1, 2, 0, 1), spec.neg(cof(0, 2, 0, 1)), cof(0, 1, 0, 1)],
    ]
