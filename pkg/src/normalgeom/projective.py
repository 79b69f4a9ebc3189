"""Projective points and lines in the plane and its dual, plus the metric
structure (line at infinity and a quadratic form on it) that defines
orthogonality of directions.

Coordinates are stored unreduced; equality is equality up to scale, tested
through vanishing 2x2 minors, so no gcd work happens on the hot paths.
"""

from .errors import FieldError, GeometryError, NormalGeomError
from .linalg import adjugate3, det3, mat_vec
from .poly import MultiPoly, PRIMAL_VARS, parse_poly, restrict_line

PRIMAL = "primal"
DUAL = "dual"


def _coerce_triple(spec, coords):
    out = [spec.coerce(c) if not spec.is_element(c) else c for c in coords]
    if len(out) != 3:
        raise GeometryError("projective coordinates need exactly 3 entries")
    return tuple(out)


def proportional(a, b, spec):
    """True when two coordinate triples agree up to a nonzero scale."""
    for i in range(3):
        for j in range(i + 1, 3):
            m = spec.sub(spec.mul(a[i], b[j]), spec.mul(a[j], b[i]))
            if not spec.is_zero(m):
                return False
    return True


def cross(a, b, spec):
    return (
        spec.sub(spec.mul(a[1], b[2]), spec.mul(a[2], b[1])),
        spec.sub(spec.mul(a[2], b[0]), spec.mul(a[0], b[2])),
        spec.sub(spec.mul(a[0], b[1]), spec.mul(a[1], b[0])),
    )


def dot(a, b, spec):
    out = spec.zero()
    for x, y in zip(a, b):
        out = spec.add(out, spec.mul(x, y))
    return out


class _ProjTriple:
    __slots__ = ("coords", "space", "spec")

    def __init__(self, spec, coords, space=PRIMAL):
        coords = _coerce_triple(spec, coords)
        if all(spec.is_zero(c) for c in coords):
            raise GeometryError("projective coordinates must not all vanish")
        if space not in (PRIMAL, DUAL):
            raise GeometryError(f"unknown space tag {space!r}")
        self.coords = coords
        self.space = space
        self.spec = spec

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.space == other.space
            and self.spec == other.spec
            and proportional(self.coords, other.coords, self.spec)
        )

    def __hash__(self):
        return hash((type(self).__name__, self.space, self.normalized()))

    def normalized(self):
        """Canonical representative: first nonzero coordinate scaled to 1."""
        sp = self.spec
        for c in self.coords:
            if not sp.is_zero(c):
                inv = sp.inv(c)
                return tuple(sp.mul(inv, x) for x in self.coords)
        raise GeometryError("zero coordinates")

    def format(self):
        sp = self.spec
        return "(" + ":".join(sp.format_scalar(c) for c in self.coords) + ")"


class ProjectivePoint(_ProjTriple):
    def __repr__(self):
        return f"Point{self.format()}{'' if self.space == PRIMAL else '*'}"


class ProjectiveLine(_ProjTriple):
    def __repr__(self):
        return f"Line{self.format()}{'' if self.space == PRIMAL else '*'}"


def join(p, q):
    """Line through two distinct points (cross product of coordinates)."""
    if p.space != q.space or p.spec != q.spec:
        raise GeometryError("join needs two points of the same space")
    if proportional(p.coords, q.coords, p.spec):
        raise GeometryError("join of coincident points")
    return ProjectiveLine(p.spec, cross(p.coords, q.coords, p.spec), p.space)


def meet(l, m):
    """Intersection point of two distinct lines (same cross-product formula,
    with the space tags swapped relative to join)."""
    if l.space != m.space or l.spec != m.spec:
        raise GeometryError("meet needs two lines of the same space")
    if proportional(l.coords, m.coords, l.spec):
        raise GeometryError("meet of coincident lines")
    return ProjectivePoint(l.spec, cross(l.coords, m.coords, l.spec), l.space)


def incident(p, l):
    return p.spec.is_zero(dot(p.coords, l.coords, p.spec))


def line_basis(l):
    """Two independent points spanning a line, chosen deterministically."""
    sp = l.spec
    basis = []
    for k in range(3):
        e = [sp.zero()] * 3
        e[k] = sp.one()
        v = cross(l.coords, e, sp)
        if all(sp.is_zero(c) for c in v):
            continue
        cand = ProjectivePoint(sp, v, l.space)
        if not basis:
            basis.append(cand)
        elif not proportional(basis[0].coords, cand.coords, sp):
            basis.append(cand)
            return basis[0], basis[1]
    raise GeometryError("could not span the line")  # unreachable for valid lines


class MetricStructure:
    """Line at infinity plus a quadratic form whose restriction to it is
    nondegenerate.  ``q_poly`` is a ternary quadratic; only its restriction
    to ``h_inf`` enters any computation."""

    def __init__(self, spec, h_inf, q_poly):
        if spec.char == 2:
            raise FieldError("characteristic 2 is not supported")
        self.spec = spec
        if isinstance(h_inf, ProjectiveLine):
            self.h_inf = h_inf
        else:
            self.h_inf = ProjectiveLine(spec, h_inf)
        if not isinstance(q_poly, MultiPoly):
            raise NormalGeomError("q_poly must be a MultiPoly")
        if q_poly.total_degree() != 2 or not q_poly.is_homogeneous():
            raise NormalGeomError("metric form must be a ternary quadratic")
        self.q_poly = q_poly
        self.q = _sym_matrix(q_poly)
        self.basis = line_basis(self.h_inf)
        g = self._gram()
        det = spec.sub(
            spec.mul(g[0][0], g[1][1]), spec.mul(g[0][1], g[1][0])
        )
        if spec.is_zero(det):
            raise GeometryError(
                "quadratic form degenerates on the chosen line at infinity"
            )

    def _gram(self):
        b1, b2 = self.basis
        return [
            [self.bilinear(b1.coords, b1.coords), self.bilinear(b1.coords, b2.coords)],
            [self.bilinear(b2.coords, b1.coords), self.bilinear(b2.coords, b2.coords)],
        ]

    def bilinear(self, a, b):
        """Polarization B(a, b) = a^T Q b of the quadratic form."""
        sp = self.spec
        qb = mat_vec(self.q, list(b), sp)
        return dot(a, qb, sp)

    def perp(self, a):
        """The unique point of h_inf orthogonal to a point of h_inf."""
        if isinstance(a, ProjectivePoint):
            if not incident(a, self.h_inf):
                raise GeometryError("perp needs a point on the line at infinity")
            a = a.coords
        v = self.perp_coords(a)
        return ProjectivePoint(self.spec, v)

    def perp_coords(self, a):
        sp = self.spec
        b1, b2 = self.basis
        c1 = self.bilinear(a, b2.coords)
        c2 = self.bilinear(a, b1.coords)
        return tuple(
            sp.sub(sp.mul(c1, x), sp.mul(c2, y))
            for x, y in zip(b1.coords, b2.coords)
        )

    def perp_matrix(self):
        """Matrix of the linear extension of perp to the whole plane."""
        sp = self.spec
        cols = []
        for k in range(3):
            e = [sp.zero()] * 3
            e[k] = sp.one()
            cols.append(self.perp_coords(e))
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def restriction_form(self, P):
        """BinaryForm of a homogeneous polynomial restricted to h_inf."""
        b1, b2 = self.basis
        return restrict_line(P, b1.coords, b2.coords)

    def to_json(self):
        sp = self.spec
        return {
            "h_inf": [sp.format_scalar(c) for c in self.h_inf.coords],
            "q": [[sp.format_scalar(c) for c in row] for row in self.q],
        }


def _sym_matrix(q_poly):
    sp = q_poly.spec
    vars = q_poly.vars
    n = len(vars)
    half = sp.inv(sp.coerce(2))
    m = [[sp.zero()] * n for _ in range(n)]
    for e, c in q_poly.terms.items():
        idx = [i for i, v in enumerate(e) for _ in range(v)]
        i, j = idx[0], idx[1]
        if i == j:
            m[i][j] = sp.add(m[i][j], c)
        else:
            m[i][j] = sp.add(m[i][j], sp.mul(c, half))
            m[j][i] = sp.add(m[j][i], sp.mul(c, half))
    return m


def euclidean_metric(spec):
    """h_inf = {z = 0} with the form x^2 + y^2: the classical setup."""
    q = parse_poly("x^2 + y^2", PRIMAL_VARS, spec)
    return MetricStructure(spec, [0, 0, 1], q)


def metric_from_text(spec, line_text, q_text):
    l_poly = parse_poly(line_text, PRIMAL_VARS, spec)
    if l_poly.total_degree() != 1 or not l_poly.is_homogeneous():
        raise NormalGeomError("metric line must be a linear form in x, y, z")
    coeffs = [spec.zero()] * 3
    for e, c in l_poly.terms.items():
        coeffs[list(e).index(1)] = c
    q = parse_poly(q_text, PRIMAL_VARS, spec)
    return MetricStructure(spec, coeffs, q)


def random_euclidean_isometry(spec, rng):
    """A random invertible map fixing {z = 0} and scaling x^2 + y^2.

    Rotation/reflection block plus translation and dilation; used by the
    equivariance property checks of the Euclidean default metric.
    """
    while True:
        a = spec.sample_uniform(rng, 5)
        b = spec.sample_uniform(rng, 5)
        if not spec.is_zero(spec.add(spec.mul(a, a), spec.mul(b, b))):
            break
    c = spec.sample_uniform(rng, 5)
    d = spec.sample_uniform(rng, 5)
    e = spec.sample_nonzero(rng, 5)
    nb = spec.neg(b)
    if rng.randrange(2):
        m = [[a, nb, c], [b, a, d], [spec.zero(), spec.zero(), e]]
    else:
        m = [[a, b, c], [b, spec.neg(a), d], [spec.zero(), spec.zero(), e]]
    return m


def apply_matrix_point(m, p):
    return ProjectivePoint(p.spec, mat_vec(m, list(p.coords), p.spec), p.space)


def apply_matrix_line(m, l):
    """Image of a line under the point map with matrix m: coefficients
    transform by the adjugate transpose (inverse up to scale)."""
    sp = l.spec
    adj = adjugate3(m, sp)
    adj_t = [[adj[j][i] for j in range(3)] for i in range(3)]
    return ProjectiveLine(sp, mat_vec(adj_t, list(l.coords), sp), l.space)


def random_invertible_matrix(spec, rng, bound=5):
    while True:
        m = [[spec.sample_uniform(rng, bound) for _ in range(3)] for _ in range(3)]
        if not spec.is_zero(det3(m, spec)):
            return m
