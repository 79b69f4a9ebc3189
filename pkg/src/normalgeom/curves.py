"""Plane projective curves and their pointwise normal-line geometry.

A curve is a squarefree homogeneous ternary form of degree >= 2 with
eagerly cached partials.  Pointwise operations (tangent, normal point and
line, contact order, multiplicity) are exact; sampling of regular points
over F_p scans seeded random lines and factors the restrictions.
"""

from math import gcd as igcd

from .errors import CurveError, GeometryError, SamplingError
from .fields import PRIME, prime_field
from .linalg import kernel_vector
from .poly import (
    MultiPoly,
    PRIMAL_VARS,
    canonicalize,
    gcd_hom,
    parse_poly,
    restrict_line,
    to_string,
)
from .projective import (
    ProjectiveLine,
    ProjectivePoint,
    cross,
    dot,
    incident,
    join,
    line_basis,
    meet,
    proportional,
)
from .univariate import fp_roots


class PlaneCurve:
    """Squarefree homogeneous plane curve of degree >= 2.

    ``metric`` is optional and only used for an extra degeneracy check at
    construction: the line at infinity must not be a component, or the
    normal construction is undefined along it.  Immutable after init.
    """

    def __init__(self, f, metric=None):
        if not isinstance(f, MultiPoly):
            raise CurveError("curve needs a MultiPoly")
        if f.is_zero() or not f.is_homogeneous():
            raise CurveError("curve polynomial must be homogeneous and nonzero")
        d = f.total_degree()
        if d < 2:
            raise CurveError(f"curve degree must be >= 2, got {d}")
        if tuple(f.vars) != PRIMAL_VARS:
            raise CurveError("curves live in variables x, y, z")
        self.f = f
        self.spec = f.spec
        self.degree = d
        self.fx = f.derivative("x")
        self.fy = f.derivative("y")
        self.fz = f.derivative("z")
        self._check_squarefree()
        # theorem hypotheses are recorded, never enforced: the strange
        # examples only exist outside them
        self.char_ok = self.spec.char == 0 or self.spec.char > d
        if metric is not None:
            if self.restrict(*_line_pair(metric.h_inf)).is_zero():
                raise CurveError("line at infinity is a component of the curve")

    def _check_squarefree(self):
        partials = [p for p in (self.fx, self.fy, self.fz) if not p.is_zero()]
        if not partials:
            raise CurveError("curve polynomial is a p-th power (not squarefree)")
        g = self.f
        for p in partials:
            g = gcd_hom(g, p)
            if g.is_constant():
                return
        raise CurveError(
            f"curve polynomial has a repeated factor: {to_string(g)}"
        )

    def __repr__(self):
        return f"PlaneCurve({to_string(self.f)} over {self.spec})"

    def __eq__(self, other):
        return (
            isinstance(other, PlaneCurve)
            and self.spec == other.spec
            and canonicalize(self.f) == canonicalize(other.f)
        )

    # -- pointwise geometry -------------------------------------------------

    def contains(self, p):
        return self.spec.is_zero(self.f.evaluate(p.coords))

    def gradient_at(self, p):
        return tuple(g.evaluate(p.coords) for g in (self.fx, self.fy, self.fz))

    def is_regular_point(self, p):
        if not self.contains(p):
            return False
        sp = self.spec
        return not all(sp.is_zero(c) for c in self.gradient_at(p))

    def tangent_line(self, p):
        """Line with coefficients grad F at p; requires p regular on X."""
        if not self.contains(p):
            raise GeometryError(f"{p!r} is not on the curve")
        grad = self.gradient_at(p)
        sp = self.spec
        if all(sp.is_zero(c) for c in grad):
            raise GeometryError(f"{p!r} is a singular point")
        return ProjectiveLine(sp, grad)

    def normal_point(self, p, metric):
        """perp of the tangent direction at infinity: (T_p meet h_inf)^perp."""
        t = self.tangent_line(p)
        if proportional(t.coords, metric.h_inf.coords, self.spec):
            raise GeometryError("tangent equals the line at infinity")
        return metric.perp(meet(t, metric.h_inf))

    def normal_line(self, p, metric):
        n = self.normal_point(p, metric)
        if proportional(p.coords, n.coords, self.spec):
            raise GeometryError("point coincides with its normal direction")
        return join(p, n)

    def restrict(self, a, b):
        """Restriction of the defining polynomial to the line through a, b."""
        return restrict_line(self.f, a, b)

    def contact_order(self, p):
        """Intersection multiplicity of the curve with its tangent at p."""
        t = self.tangent_line(p)
        b1, b2 = line_basis(t)
        q = b1 if not proportional(b1.coords, p.coords, self.spec) else b2
        bf = self.restrict(p.coords, q.coords)
        if bf.is_zero():
            raise GeometryError("tangent line lies inside the curve")
        return bf.root_multiplicity_at_zero_t()

    def multiplicity_at(self, q):
        """Multiplicity of the curve at a point; 0 off the curve, 1 at
        regular points."""
        sp = self.spec
        coords = q.coords
        if not self.contains(q):
            return 0
        k = next(i for i, c in enumerate(coords) if not sp.is_zero(c))
        cols = [None, None, None]
        cols[2] = list(coords)
        e1 = [sp.zero()] * 3
        e1[(k + 1) % 3] = sp.one()
        e2 = [sp.zero()] * 3
        e2[(k + 2) % 3] = sp.one()
        cols[0], cols[1] = e1, e2
        m = [[cols[j][i] for j in range(3)] for i in range(3)]
        g = self.f.compose_matrix(m)
        return min(e[0] + e[1] for e in g.terms)

    def strange_point(self):
        """The point lying on every tangent line, if any.

        Solved as exact linear algebra: o . grad F = 0 as a polynomial
        identity is a linear condition on o per monomial (the degree drop
        deg(o . grad F) = d - 1 < d forces identical vanishing).
        """
        monos = set()
        for g in (self.fx, self.fy, self.fz):
            monos.update(g.terms)
        sp = self.spec
        rows = []
        for e in sorted(monos):
            rows.append(
                [
                    self.fx.terms.get(e, sp.zero()),
                    self.fy.terms.get(e, sp.zero()),
                    self.fz.terms.get(e, sp.zero()),
                ]
            )
        dim, vec = kernel_vector(rows, sp)
        if dim == 0:
            return None
        if dim > 1:
            raise CurveError("degenerate curve: tangent space of strange points")
        return ProjectivePoint(sp, vec)

    # -- global regularity --------------------------------------------------

    def is_smooth(self):
        """True iff the partials have no common projective zero.

        A linear dependency among the partials (in particular a vanishing
        partial, or any strange curve) forces a common zero, since the two
        remaining curves of positive degree always meet in P^2.  Otherwise
        the candidate common zeros are boxed by iterated resultants after a
        seeded change of coordinates: an empty candidate set certifies
        smoothness exactly; a confirmed rational candidate certifies a
        singularity; stubborn unconfirmed candidates surviving three
        rotations are reported as singular.
        """
        import random

        if self.strange_point() is not None:
            return False
        rng = random.Random(20240501)
        for attempt in range(3):
            verdict = self._smooth_attempt(rng, rotate=attempt > 0)
            if verdict is not None:
                return verdict
        return False

    def _smooth_attempt(self, rng, rotate):
        from .poly import as_binary_form, resultant
        from .projective import random_invertible_matrix
        from .univariate import binary_gcd

        sp = self.spec
        if rotate:
            m = random_invertible_matrix(sp, rng)
            g = self.f.compose_matrix(m)
        else:
            g = self.f
        parts = [g.derivative(v) for v in ("x", "y", "z")]
        if any(p.is_zero() for p in parts):
            return None  # rotation collapsed a partial; try another frame
        if all(sp.is_zero(p.evaluate([0, 0, 1])) for p in parts):
            return False
        forms = []
        for a, b in ((0, 1), (0, 2), (1, 2)):
            fa, fb = parts[a], parts[b]
            if fa.degree_in("z") <= 0 and fb.degree_in("z") <= 0:
                return None
            r = resultant(fa, fb, "z")
            if r.is_zero():
                return False  # shared factor through z: certainly singular
            forms.append(as_binary_form(r, "x", "y"))
        g01 = binary_gcd(binary_gcd(forms[0], forms[1]), forms[2])
        if g01.n == 0:
            return True  # no candidate projection at all: certified smooth
        if self._confirm_singular_direction(parts, g01):
            return False
        return None

    def _confirm_singular_direction(self, parts, direction_form):
        """Check rational candidate directions for an actual common zero."""
        from .fields import RATIONALS
        from .univariate import f_gcd, fp_roots, rational_roots, trim

        sp = self.spec
        dirs = []
        aff = direction_form.affine()
        if len(aff) > 1:
            if sp.kind == RATIONALS:
                dirs = [(sp.one(), r) for r in rational_roots(aff)]
            else:
                dirs = [(sp.one(), sp.coerce(r)) for r in fp_roots(aff, sp.p)]
        if direction_form.infinity_multiplicity() > 0:
            dirs.append((sp.zero(), sp.one()))
        for a, b in dirs:
            slices = []
            for part in parts:
                sl = trim(
                    [
                        c.evaluate([a, b, sp.zero()])
                        for c in part.as_univariate("z")
                    ]
                )
                slices.append(sl)
            if any(len(s) == 0 for s in slices):
                slices = [s for s in slices if s]
            if not slices:
                return True
            gg = slices[0]
            for s in slices[1:]:
                gg = f_gcd(gg, s, sp)
            if len(gg) > 1:
                return True
        return False

    # -- sampling -------------------------------------------------------------

    def rational_points(self, limit=None):
        """All F_p-rational points (p small); scans the projective plane."""
        sp = self.spec
        if sp.kind != PRIME:
            raise SamplingError("exhaustive point scan needs a prime field")
        p = sp.p
        pts = []
        for rep in _projective_reps(p):
            if sp.is_zero(self.f.evaluate(rep)):
                pts.append(ProjectivePoint(sp, rep))
                if limit and len(pts) >= limit:
                    return pts
        return pts

    def sample_regular_points(self, count, rng, distinct_from=()):
        """Up to ``count`` distinct regular F_p points, deterministic in the
        seed; scans random lines and factors the restrictions."""
        sp = self.spec
        if sp.kind != PRIME:
            raise SamplingError("regular-point sampling runs over F_p")
        if sp.p > 10**6:
            raise SamplingError("prime too large for point sampling")
        if count <= 0:
            return []
        found = []
        seen = {pt.normalized() for pt in distinct_from}
        budget = 60 + 40 * count
        for _ in range(budget):
            if len(found) >= count:
                break
            line = [sp.sample_uniform(rng) for _ in range(3)]
            if all(sp.is_zero(c) for c in line):
                continue
            try:
                pl = ProjectiveLine(sp, line)
                b1, b2 = line_basis(pl)
            except GeometryError:
                continue
            bf = self.restrict(b1.coords, b2.coords)
            if bf.is_zero():
                continue
            params = [(1, r) for r in fp_roots(bf.affine(), sp.p)]
            if bf.infinity_multiplicity() > 0:
                params.append((0, 1))
            for s, t in params:
                coords = tuple(
                    sp.add(sp.mul(sp.coerce(s), a), sp.mul(sp.coerce(t), b))
                    for a, b in zip(b1.coords, b2.coords)
                )
                if all(sp.is_zero(c) for c in coords):
                    continue
                pt = ProjectivePoint(sp, coords)
                key = pt.normalized()
                if key in seen:
                    continue
                if self.is_regular_point(pt):
                    seen.add(key)
                    found.append(pt)
                    if len(found) >= count:
                        break
        return found


def _line_pair(line):
    b1, b2 = line_basis(line)
    return b1.coords, b2.coords


def _projective_reps(p):
    """Canonical representatives of all points of P^2(F_p)."""
    for y in range(p):
        for z in range(p):
            yield (1, y, z)
    for z in range(p):
        yield (0, 1, z)
    yield (0, 0, 1)


def curve_from_text(text, spec, metric=None):
    return PlaneCurve(parse_poly(text, PRIMAL_VARS, spec), metric=metric)


def strange_family(p, e, t):
    """The strange curves x^t y^(pe) + z^(pe+t) over F_p.

    Requires p > 2 and e, t prime to p; degree is pe + t, the strange point
    is (0:1:0) and the singular locus contains (1:0:0)."""
    if p <= 2:
        raise CurveError("family needs an odd prime characteristic")
    if e < 1 or t < 1:
        raise CurveError("family parameters must be positive")
    if igcd(p, e) != 1 or igcd(p, t) != 1:
        raise CurveError("family parameters must be prime to the characteristic")
    spec = prime_field(p)
    f = parse_poly(f"x^{t}*y^{p * e} + z^{p * e + t}", PRIMAL_VARS, spec)
    return PlaneCurve(f)


def generic_regular_points(curve, metric, count, rng, singular_points=()):
    """Regular points passing the documented genericity predicates:
    off h_inf, tangent distinct from h_inf, normal point distinct from the
    point, and the normal line avoiding the given singular points.

    The singular-avoidance predicate is soft: on strange curves every
    normal line passes through the dual of the strange point, so points
    failing only that predicate are used when nothing stricter exists.
    Rejections are deterministic given the seed; raises SamplingError when
    the budget runs out before any usable point is found.
    """
    sp = curve.spec
    out = []
    soft = []
    rejected = []
    for _ in range(30):
        if len(out) >= count:
            break
        batch = curve.sample_regular_points(
            count * 3, rng, distinct_from=out + soft + rejected
        )
        if not batch:
            break
        for pt in batch:
            ok = not incident(pt, metric.h_inf)
            n = None
            if ok:
                try:
                    t = curve.tangent_line(pt)
                    if proportional(t.coords, metric.h_inf.coords, sp):
                        ok = False
                    else:
                        n = curve.normal_line(pt, metric)
                except GeometryError:
                    ok = False
            if not ok:
                rejected.append(pt)
                continue
            if any(
                sp.is_zero(dot(n.coords, s.coords, sp)) for s in singular_points
            ):
                soft.append(pt)
                continue
            out.append(pt)
            if len(out) >= count:
                break
    if len(out) < count:
        out = out + soft[: count - len(out)]
    if not out:
        raise SamplingError("no generic regular points found")
    return out
