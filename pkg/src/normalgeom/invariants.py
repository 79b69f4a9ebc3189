"""Global invariants of the normal-line geometry: polar counts, classes,
implicit equations of dual and normal curves, fiber degrees, bottlenecks,
and equality of curves of normal lines.

Every elimination reduces to resultants of binary forms through the linear
incidence condition of a dual-space chart; extraneous factors (chart
coordinates, duals of degenerate feet) are stripped under a sample-vanishing
guard and logged.  Counts are stabilized over several random frames and
samples; disagreement raises rather than guessing.
"""

import random
from dataclasses import dataclass, field

from .curves import PlaneCurve, generic_regular_points
from .errors import (
    EliminationError,
    GeometryError,
    NormalGeomError,
    SamplingError,
    UnstableError,
)
from .fields import PRIME, RATIONALS, is_prime, prime_field
from .linalg import det3
from .poly import (
    DUAL_VARS,
    _PolyRingAdapter,
    resultant_homz,
    resultant_lists,
    MultiPoly,
    PRIMAL_VARS,
    as_binary_form,
    canonicalize,
    divides,
    exact_div,
    gcd_hom,
    parse_poly,
    resultant,
    resultant_forms,
    restrict_line,
    squarefree_part_hom,
    subresultant_form,
    to_string,
)
from .projective import (
    MetricStructure,
    ProjectiveLine,
    ProjectivePoint,
    cross,
    dot,
    incident,
    line_basis,
    proportional,
    random_invertible_matrix,
)
from .univariate import BinaryForm, binary_gcd, fp_roots, rational_roots

_ELIM_VARS = ("s", "t") + DUAL_VARS


# ---------------------------------------------------------------------------
# report types


@dataclass
class DualCurveResult:
    poly: MultiPoly
    degree: int
    stripped_factors: list = field(default_factory=list)
    validation: dict = field(default_factory=dict)

    def line_coords(self):
        """Coordinate triple of the dual point when the result is a line."""
        if self.degree != 1:
            raise NormalGeomError("result is not a line")
        sp = self.poly.spec
        coords = [sp.zero()] * 3
        for e, c in self.poly.terms.items():
            coords[list(e).index(1)] = c
        return tuple(coords)


@dataclass
class FiberReport:
    line: ProjectiveLine
    total_closure_points: int
    regular_points: int
    genuine_points: int
    samples_used: int = 1
    stable: bool = True


@dataclass
class BottleneckReport:
    kind: str
    finite: bool
    lines: list = field(default_factory=list)
    count_closure: object = None
    witness_pairs: list = field(default_factory=list)
    annotations: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# polynomial builders


def normal_direction_polys(curve, metric):
    """The polynomial map p -> n(p): perp of the tangent direction.

    Componentwise perp_matrix . cross(grad F, h_inf); degree d - 1.  At
    singular points and at points of tangency with h_inf the map vanishes,
    which downstream eliminations treat as degenerate feet."""
    sp = curve.spec
    h = metric.h_inf.coords
    grads = (curve.fx, curve.fy, curve.fz)
    w = [
        grads[1].scale(h[2]) - grads[2].scale(h[1]),
        grads[2].scale(h[0]) - grads[0].scale(h[2]),
        grads[0].scale(h[1]) - grads[1].scale(h[0]),
    ]
    pm = metric.perp_matrix()
    out = []
    for i in range(3):
        acc = MultiPoly.zero(curve.f.vars, sp)
        for j in range(3):
            acc = acc + w[j].scale(pm[i][j])
        out.append(acc)
    return out


def polar_curve(curve, o):
    """o . grad F: cuts out the points whose tangent passes through o."""
    coords = o.coords if isinstance(o, ProjectivePoint) else o
    return (
        curve.fx.scale(coords[0])
        + curve.fy.scale(coords[1])
        + curve.fz.scale(coords[2])
    )


def normal_polar(curve, o, metric):
    """det[o; p; n(p)]: vanishes on X exactly at the feet of normals
    through o (plus the degenerate loci where n(p) is undefined)."""
    sp = curve.spec
    coords = o.coords if isinstance(o, ProjectivePoint) else o
    n = normal_direction_polys(curve, metric)
    xs = [MultiPoly.variable(curve.f.vars, sp, v) for v in PRIMAL_VARS]
    m01 = xs[1] * n[2] - xs[2] * n[1]
    m02 = xs[0] * n[2] - xs[2] * n[0]
    m12 = xs[0] * n[1] - xs[1] * n[0]
    return m01.scale(coords[0]) - m02.scale(coords[1]) + m12.scale(coords[2])


def dual_line_poly(point, vars=DUAL_VARS):
    """The linear form u . q cutting out the dual line of a point."""
    sp = point.spec
    out = MultiPoly.zero(vars, sp)
    for i, c in enumerate(point.coords):
        out = out + MultiPoly.variable(vars, sp, vars[i]).scale(c)
    return out


def line_of_linear_poly(P):
    """ProjectiveLine (primal coords) from a linear form in the dual vars."""
    sp = P.spec
    coords = [sp.zero()] * 3
    for e, c in P.terms.items():
        coords[list(e).index(1)] = c
    return ProjectiveLine(sp, coords)


# ---------------------------------------------------------------------------
# singular points


def singular_points_rational(curve):
    """All field-rational singular points of the curve (on-curve common
    zeros of the partials).  Exhaustive scan for tiny prime fields,
    elimination plus rational root extraction otherwise."""
    sp = curve.spec
    if sp.kind == PRIME and sp.p <= 97:
        pts = []
        for pt in curve.rational_points():
            if not curve.is_regular_point(pt):
                pts.append(pt)
        return pts
    return _singular_points_elimination(curve)


def _singular_points_elimination(curve):
    sp = curve.spec
    rng = random.Random(71)
    for attempt in range(4):
        if attempt == 0:
            m = None
            g = curve.f
        else:
            m = random_invertible_matrix(sp, rng)
            g = curve.f.compose_matrix(m)
        parts = [g.derivative(v) for v in PRIMAL_VARS]
        live = [p for p in parts if not p.is_zero()]
        if not live:
            return []
        forms = []
        degenerate = False
        pairs = [(a, b) for i, a in enumerate(live) for b in live[i + 1 :]]
        if not pairs:
            pairs = [(live[0], g)]
        for fa, fb in pairs:
            if fa.degree_in("z") <= 0 and fb.degree_in("z") <= 0:
                degenerate = True
                break
            r = resultant(fa, fb, "z")
            if r.is_zero():
                degenerate = True
                break
            forms.append(as_binary_form(r, "x", "y"))
        if degenerate:
            continue
        gform = forms[0]
        for f2 in forms[1:]:
            gform = binary_gcd(gform, f2)
        candidates = []
        dirs = []
        aff = gform.affine()
        if len(aff) > 1:
            if sp.kind == RATIONALS:
                dirs = [(sp.one(), r) for r in rational_roots(aff)]
            else:
                dirs = [(sp.one(), sp.coerce(r)) for r in fp_roots(aff, sp.p)]
        if gform.n > 0 and gform.infinity_multiplicity() > 0:
            dirs.append((sp.zero(), sp.one()))
        for a, b in dirs:
            zs = _common_z_roots(live + [g], a, b, sp)
            for w in zs:
                candidates.append((a, b, w))
        e3 = (sp.zero(), sp.zero(), sp.one())
        if all(sp.is_zero(p.evaluate(e3)) for p in live + [g]):
            candidates.append(e3)
        pts = []
        for c in candidates:
            back = _apply_cols(m, c, sp) if m is not None else c
            pt = ProjectivePoint(sp, back)
            if curve.contains(pt) and not curve.is_regular_point(pt):
                if all(pt != q for q in pts):
                    pts.append(pt)
        return pts
    raise EliminationError("singular-point elimination stayed degenerate")


def _common_z_roots(polys, a, b, sp):
    from .univariate import f_gcd, trim

    slices = []
    for p in polys:
        sl = trim([c.evaluate([a, b, sp.zero()]) for c in p.as_univariate("z")])
        if sl:
            slices.append(sl)
    if not slices:
        return []
    g = slices[0]
    for s in slices[1:]:
        g = f_gcd(g, s, sp)
    if len(g) <= 1:
        return []
    if sp.kind == RATIONALS:
        return rational_roots(g)
    return [sp.coerce(r) for r in fp_roots(g, sp.p)]


def _apply_cols(m, v, sp):
    """Map chart coordinates back through the column action of m."""
    return tuple(
        sp.add(
            sp.add(sp.mul(m[i][0], v[0]), sp.mul(m[i][1], v[1])),
            sp.mul(m[i][2], v[2]),
        )
        for i in range(3)
    )


# ---------------------------------------------------------------------------
# stabilized projection counting


def _stable_value(sampler, rng, min_agree=3, max_samples=9, label="count"):
    """Stabilize a randomized point count.

    Every sampling frame can only merge distinct projections (undercount),
    never invent points, so the counted value is the maximum over frames;
    it is accepted once it has been attained ``min_agree`` times or every
    frame agrees.  Frames over tiny fields collide often, hence the
    generous retry budget."""
    values = []
    for i in range(max_samples):
        v = sampler(rng)
        if v is None:
            continue
        values.append(v)
        best = max(values)
        if len(values) >= min_agree and values.count(best) >= min_agree:
            return best, len(set(values)) == 1
    if not values:
        raise UnstableError(f"no usable samples for {label}", values)
    best = max(values)
    if values.count(best) >= 2:
        return best, False
    raise UnstableError(f"{label} did not stabilize", values)


def _sample_budget(spec):
    """Tiny prime fields have very few generic frames and points, so the
    count stabilizer gets a bigger retry budget there."""
    if spec.kind == PRIME and spec.p < 30:
        return 40
    return 9


def _projection_count(curve, second, bad_polys, rng):
    """Distinct closure points of {F = 0, second = 0} with bad-locus points
    removed, counted through a random frame.  Returns None on a degenerate
    frame (caller resamples)."""
    sp = curve.spec
    m = random_invertible_matrix(sp, rng)
    fa = curve.f.compose_matrix(m)
    ga = second.compose_matrix(m)
    if fa.degree_in("z") <= 0 or ga.degree_in("z") < 0:
        return None
    if ga.degree_in("z") <= 0 and ga.is_constant():
        return None
    try:
        rb = resultant_homz(fa, ga)
    except NormalGeomError:
        return None
    if rb.is_zero():
        return None
    rb = rb.squarefree_part()
    total = rb.distinct_root_count() if rb.n > 0 else 0
    bad_forms = []
    for b in bad_polys:
        ba = b.compose_matrix(m)
        if ba.is_zero():
            continue
        if fa.degree_in("z") <= 0 and ba.degree_in("z") <= 0:
            return None
        try:
            rbad = resultant_homz(fa, ba)
        except NormalGeomError:
            return None
        if rbad.is_zero():
            return None
        bad_forms.append(rbad)
    if bad_forms:
        gbad = bad_forms[0]
        for f2 in bad_forms[1:]:
            gbad = binary_gcd(gbad, f2)
        if gbad.n > 0:
            overlap = binary_gcd(rb, gbad.squarefree_part())
            if overlap.n > 0:
                total -= overlap.distinct_root_count()
    e3 = [sp.zero(), sp.zero(), sp.one()]
    if sp.is_zero(fa.evaluate(e3)) and sp.is_zero(ga.evaluate(e3)):
        if not all(sp.is_zero(b.compose_matrix(m).evaluate(e3)) for b in bad_polys):
            total += 1
    return total


def curve_class(curve, rng=None):
    """Class: tangents through a general point, counted at regular points.

    Strange curves short-circuit to deg X^dual = 1 (the polar construction
    degenerates); the caller sees the annotation through ``curve_class_info``.
    """
    value, _, _ = curve_class_info(curve, rng)
    return value


def curve_class_info(curve, rng=None):
    rng = rng or random.Random(11)
    sp = curve.spec
    if curve.strange_point() is not None:
        return 1, True, "strange curve: class taken as deg of the dual line"
    bad = [] if curve.is_smooth() else [curve.fx, curve.fy, curve.fz]
    bad = [b for b in bad if not b.is_zero()]

    def sampler(r):
        o = tuple(sp.sample_uniform(r) for _ in range(3))
        if all(sp.is_zero(c) for c in o):
            return None
        if sp.is_zero(curve.f.evaluate(o)):
            return None
        pol = polar_curve(curve, o)
        if pol.is_zero():
            return None
        return _projection_count(curve, pol, bad, r)

    value, stable = _stable_value(
        sampler, rng, max_samples=_sample_budget(sp), label="curve class"
    )
    return value, stable, None


def normal_class_count(curve, metric, rng=None):
    value, _, _ = normal_class_info(curve, metric, rng)
    return value


def normal_class_info(curve, metric, rng=None):
    """Count of regular points whose normal line passes through a general
    point; equals d + class for reflexive curves."""
    rng = rng or random.Random(13)
    sp = curve.spec
    n = normal_direction_polys(curve, metric)
    xs = [MultiPoly.variable(curve.f.vars, sp, v) for v in PRIMAL_VARS]
    degeneracy = [
        xs[1] * n[2] - xs[2] * n[1],
        xs[2] * n[0] - xs[0] * n[2],
        xs[0] * n[1] - xs[1] * n[0],
    ]
    bad = [b for b in degeneracy if not b.is_zero()]
    annotation = None
    if not bad:
        raise EliminationError(
            "normal direction is proportional to the point everywhere"
        )
    if not curve.char_ok:
        annotation = "theorem hypotheses fail (char <= degree): reported as measured"

    def sampler(r):
        o = tuple(sp.sample_uniform(r) for _ in range(3))
        if all(sp.is_zero(c) for c in o):
            return None
        if sp.is_zero(curve.f.evaluate(o)):
            return None
        if sp.is_zero(dot(o, metric.h_inf.coords, sp)):
            return None
        npol = normal_polar(curve, o, metric)
        if npol.is_zero():
            return None
        return _projection_count(curve, npol, bad, r)

    value, stable = _stable_value(
        sampler, rng, max_samples=_sample_budget(sp), label="normal class"
    )
    return value, stable, annotation


# ---------------------------------------------------------------------------
# fibers of the normal and tangent maps


def eta_fiber_count(curve, line, metric):
    """Closure feet of a candidate normal line, split by regularity.

    total: distinct q in L with F(q) = 0 and u_L . n(q) = 0 (with the
    convention that an identically vanishing normality restriction leaves
    all of L meet X); regular: those supported at regular points; genuine:
    regular feet at which L really is the normal line (off h_inf, tangent
    not h_inf)."""
    sp = curve.spec
    if proportional(line.coords, metric.h_inf.coords, sp):
        raise GeometryError("fiber over the line at infinity is undefined")
    b1, b2 = line_basis(line)
    f_l = restrict_line(curve.f, b1.coords, b2.coords)
    if f_l.is_zero():
        raise GeometryError("line is a component of the curve")
    n = normal_direction_polys(curve, metric)
    gpoly = MultiPoly.zero(curve.f.vars, sp)
    for c, comp in zip(line.coords, n):
        gpoly = gpoly + comp.scale(c)
    g_l = restrict_line(gpoly, b1.coords, b2.coords) if not gpoly.is_zero() else None
    if g_l is None or g_l.is_zero():
        feet = f_l
    else:
        feet = binary_gcd(f_l, g_l)
    feet_sf = feet.squarefree_part()
    total = feet_sf.distinct_root_count() if feet_sf.n > 0 else 0
    if total == 0:
        return FiberReport(line, 0, 0, 0)
    sing = _restricted_gcd(
        [p for p in (curve.fx, curve.fy, curve.fz)], b1, b2, sp
    )
    n_sing = _overlap_count(feet_sf, sing)
    regular = total - n_sing
    # genuine feet: also exclude feet on h_inf and feet tangent to h_inf
    hpoly = dual_line_poly(
        ProjectivePoint(sp, metric.h_inf.coords), vars=PRIMAL_VARS
    )
    h_l = restrict_line(hpoly, b1.coords, b2.coords)
    crosses = _tangent_at_infinity_polys(curve, metric)
    cross_l = _restricted_gcd(crosses, b1, b2, sp)
    bad2 = _union_overlap(feet_sf, [sing, h_l, cross_l])
    genuine = total - bad2
    return FiberReport(line, total, regular, genuine)


def _restricted_gcd(polys, b1, b2, sp):
    """gcd of the restrictions of the given polys to the line (b1, b2);
    identically-zero restrictions impose no constraint unless all vanish."""
    forms = []
    all_zero = True
    for p in polys:
        if p.is_zero():
            continue
        r = restrict_line(p, b1.coords, b2.coords)
        if r.is_zero():
            continue
        all_zero = False
        forms.append(r)
    if all_zero:
        return None  # no constraint: every point qualifies
    g = forms[0]
    for f2 in forms[1:]:
        g = binary_gcd(g, f2)
    return g


def _overlap_count(feet_sf, form):
    if form is None:
        return feet_sf.distinct_root_count() if feet_sf.n > 0 else 0
    if form.n == 0:
        return 0
    ov = binary_gcd(feet_sf, form.squarefree_part())
    return ov.distinct_root_count() if ov.n > 0 else 0


def _union_overlap(feet_sf, forms):
    """Distinct feet lying on the union of the loci cut by ``forms``."""
    raw = []
    for f2 in forms:
        if f2 is None:
            return feet_sf.distinct_root_count() if feet_sf.n > 0 else 0
        if f2.n == 0 or f2.is_zero():
            continue
        ov = binary_gcd(feet_sf, f2.squarefree_part())
        if ov.n > 0:
            raw.append(ov)
    if not raw:
        return 0
    union = raw[0]
    for f2 in raw[1:]:
        union = _binary_lcm_sf(union, f2)
    return union.distinct_root_count()


def _binary_lcm_sf(a, b):
    """Squarefree union of two squarefree binary forms: a*b / gcd."""
    prod = a.mul(b)
    g = binary_gcd(a, b)
    if g.n == 0:
        return prod
    from .univariate import f_divmod

    q, r = f_divmod(prod.affine(), g.affine(), a.spec)
    extra = prod.infinity_multiplicity() - g.infinity_multiplicity()
    if r:
        raise NormalGeomError("inexact squarefree union")
    return BinaryForm(a.spec, len(q) - 1 + extra, q)


def _tangent_at_infinity_polys(curve, metric):
    """Components of cross(grad F, h): vanish where the tangent is h_inf
    (and at singular points)."""
    h = metric.h_inf.coords
    g = (curve.fx, curve.fy, curve.fz)
    return [
        g[1].scale(h[2]) - g[2].scale(h[1]),
        g[2].scale(h[0]) - g[0].scale(h[2]),
        g[0].scale(h[1]) - g[1].scale(h[0]),
    ]


def tangent_fiber_count(curve, line):
    """Distinct regular closure points at which the given line is tangent:
    roots of multiplicity >= 2 of the restriction, split off the singular
    ones."""
    sp = curve.spec
    b1, b2 = line_basis(line)
    f_l = restrict_line(curve.f, b1.coords, b2.coords)
    if f_l.is_zero():
        raise GeometryError("line is a component of the curve")
    ds = f_l.deriv_s()
    dt = f_l.deriv_t()
    forms = [f_l]
    if not ds.is_zero():
        forms.append(ds)
    if not dt.is_zero():
        forms.append(dt)
    if len(forms) == 1:
        mult_part = f_l  # both derivatives vanish: every root is multiple
    else:
        mult_part = forms[0]
        for f2 in forms[1:]:
            mult_part = binary_gcd(mult_part, f2)
    if mult_part.n == 0:
        return 0
    mult_sf = mult_part.squarefree_part()
    sing = _restricted_gcd([curve.fx, curve.fy, curve.fz], b1, b2, sp)
    return mult_sf.distinct_root_count() - _overlap_count(mult_sf, sing)


def sample_normal_lines(curve, metric, count, rng, singular_points=None):
    """Distinct normal lines at sampled generic regular points (F_p)."""
    if singular_points is None:
        singular_points = singular_points_rational(curve)
    lines = []
    seen = set()
    try:
        pts = generic_regular_points(
            curve, metric, count * 3, rng, singular_points=singular_points
        )
    except SamplingError:
        pts = generic_regular_points(
            curve, metric, 1, rng, singular_points=singular_points
        )
    for pt in pts:
        ln = curve.normal_line(pt, metric)
        key = ln.normalized()
        if key not in seen:
            seen.add(key)
            lines.append((pt, ln))
            if len(lines) >= count:
                break
    if not lines:
        raise SamplingError("no normal lines could be sampled")
    return lines


def separable_degree(curve, metric, rng=None, klass=None, normal_curve_degree=None):
    """Separable degree of the normal map as the stabilized minimum of
    general-fiber cardinalities, plus the full-degree ratio when the
    ingredients are known.

    Over Q the fibers are counted after reduction modulo several primes
    above the degree; all primes must agree."""
    rng = rng or random.Random(17)
    sp = curve.spec
    if sp.kind == PRIME:
        fiber_e, samples, stable = _fiber_min_direct(curve, metric, rng)
    else:
        fiber_e, samples, stable = _fiber_min_reduced(curve, metric, rng)
    ratio = None
    if klass is not None and normal_curve_degree:
        num = curve.degree + klass
        from fractions import Fraction

        ratio = Fraction(num, normal_curve_degree)
    return {
        "fiber_e": fiber_e,
        "ratio_deg": ratio,
        "samples_used": samples,
        "stable": stable,
    }


def _fiber_min_direct(curve, metric, rng, want=7):
    sings = singular_points_rational(curve)
    lines = sample_normal_lines(curve, metric, want, rng, singular_points=sings)
    counts = []
    for _, ln in lines:
        rep = eta_fiber_count(curve, ln, metric)
        counts.append(rep.genuine_points)
    return min(counts), len(counts), len(set(counts)) == 1


def _fiber_min_reduced(curve, metric, rng, primes_needed=3):
    values = []
    used = []
    tried = 0
    while len(used) < primes_needed and tried < 60:
        tried += 1
        p = _random_theorem_prime(curve.degree, rng)
        if p in used:
            continue
        reduced = reduce_mod_prime(curve, metric, p)
        if reduced is None:
            continue
        cp, mp = reduced
        try:
            v, _, _ = _fiber_min_direct(cp, mp, random.Random(rng.randrange(1 << 30)))
        except (SamplingError, GeometryError, NormalGeomError):
            continue
        values.append(v)
        used.append(p)
    if len(used) < primes_needed:
        raise SamplingError("not enough usable reduction primes for fiber sampling")
    if len(set(values)) != 1:
        raise UnstableError("fiber counts disagree across reduction primes", values)
    return values[0], len(used), True


def _random_theorem_prime(d, rng):
    while True:
        p = rng.randrange(max(d + 1, 5), 10**4)
        if p > d and is_prime(p) and p % 2 == 1:
            return p


def reduce_mod_prime(curve, metric, p):
    """Reduction of a Q-curve (and metric, when given) mod p, or None when
    the reduction degenerates."""
    try:
        spec_p = prime_field(p)
    except NormalGeomError:
        return None
    try:
        fp = _reduce_poly(curve.f, spec_p)
        if fp.is_zero() or fp.total_degree() != curve.degree:
            return None
        if metric is None:
            from .projective import euclidean_metric

            mp = euclidean_metric(spec_p)
            cp = PlaneCurve(fp)
            return cp, mp
        qp = _reduce_poly(metric.q_poly, spec_p)
        hp = [_reduce_scalar(c, spec_p) for c in metric.h_inf.coords]
        if all(spec_p.is_zero(c) for c in hp):
            return None
        mp = MetricStructure(spec_p, hp, qp)
        cp = PlaneCurve(fp, metric=mp)
        return cp, mp
    except NormalGeomError:
        return None


def _reduce_scalar(c, spec_p):
    from fractions import Fraction

    f = Fraction(c)
    if f.denominator % spec_p.p == 0:
        raise NormalGeomError("denominator not invertible mod p")
    return spec_p.coerce(f)


def _reduce_poly(P, spec_p):
    terms = {}
    for e, c in P.terms.items():
        terms[e] = _reduce_scalar(c, spec_p)
    return MultiPoly(P.vars, terms, spec_p)


# ---------------------------------------------------------------------------
# implicitization of dual and normal curves


def _chart_points(k, spec):
    """Two points spanning the line with dual coordinates u, valid on the
    chart u_k != 0, with polynomial coordinates."""
    W = _ELIM_VARS
    u = [MultiPoly.variable(W, spec, v) for v in DUAL_VARS]
    zero = MultiPoly.zero(W, spec)
    if k == 2:
        p1 = [u[2], zero, -u[0]]
        p2 = [zero, u[2], -u[1]]
    elif k == 1:
        p1 = [u[1], -u[0], zero]
        p2 = [zero, -u[2], u[1]]
    else:
        p1 = [-u[1], u[0], zero]
        p2 = [-u[2], zero, u[0]]
    return p1, p2


def _subst_to_chart(P, k, spec):
    """Substitute (x, y, z) -> s*P1(u) + t*P2(u) for chart k."""
    W = _ELIM_VARS
    s = MultiPoly.variable(W, spec, "s")
    t = MultiPoly.variable(W, spec, "t")
    p1, p2 = _chart_points(k, spec)
    mapping = {
        v: s * p1[i] + t * p2[i] for i, v in enumerate(PRIMAL_VARS)
    }
    return P.substitute(mapping)


def _st_list(P5, st_degree, spec):
    """Split a chart-substituted polynomial into (s,t)-coefficients, each a
    polynomial in the dual variables; index = t-power, formal degree fixed."""
    buckets = [dict() for _ in range(st_degree + 1)]
    for e, c in P5.terms.items():
        es, et = e[0], e[1]
        if es + et != st_degree:
            raise EliminationError("chart substitution lost homogeneity")
        ue = e[2:]
        buckets[et][ue] = c
    return [MultiPoly(DUAL_VARS, b, spec) for b in buckets]


def _chart_lists(curve, metric, mode, k):
    """(f_list, g_list) of a chart: restrictions of the curve and of the
    incidence condition (normality or tangency) to the parametrized line."""
    spec = curve.spec
    f5 = _subst_to_chart(curve.f, k, spec)
    f_list = _st_list(f5, curve.degree, spec)
    W = _ELIM_VARS
    u = [MultiPoly.variable(W, spec, v) for v in DUAL_VARS]
    if mode == "normal":
        n = normal_direction_polys(curve, metric)
        acc = MultiPoly.zero(W, spec)
        for i in range(3):
            if not n[i].is_zero():
                acc = acc + u[i] * _subst_to_chart(n[i], k, spec)
        g5 = acc
    else:
        grads = {"x": curve.fx, "y": curve.fy, "z": curve.fz}
        gx = _subst_to_chart(grads["x"], k, spec) if not grads["x"].is_zero() else MultiPoly.zero(W, spec)
        gy = _subst_to_chart(grads["y"], k, spec) if not grads["y"].is_zero() else MultiPoly.zero(W, spec)
        gz = _subst_to_chart(grads["z"], k, spec) if not grads["z"].is_zero() else MultiPoly.zero(W, spec)
        if k == 0:
            g5 = u[1] * gz - u[2] * gy
        elif k == 1:
            g5 = u[2] * gx - u[0] * gz
        else:
            g5 = u[0] * gy - u[1] * gx
    if g5.is_zero():
        return f_list, None
    g_list = _st_list(g5, curve.degree - 1, spec)
    return f_list, g_list


class _LineSampleSet:
    """Sampled member lines of the locus being implicitized, organized by
    coefficient field (the curve's own field, or reductions mod primes for
    curves over Q).  ``vanishes`` is the stripping guard."""

    def __init__(self, groups):
        self.groups = groups  # list of (spec_p or None, [coord triples])

    def count(self):
        return sum(len(lines) for _, lines in self.groups)

    def vanishes(self, P):
        for spec_p, lines in self.groups:
            if spec_p is None:
                Q = P
            else:
                try:
                    Q = _reduce_poly(canonicalize(P), spec_p)
                except NormalGeomError:
                    continue
                if Q.is_zero():
                    continue
            sp = Q.spec
            for coords in lines:
                if not sp.is_zero(Q.evaluate(coords)):
                    return False
        return True


def _collect_line_samples(curve, metric, mode, rng, want=20):
    """Sample lines of the target locus: normal or tangent lines at generic
    regular points; over Q they are gathered from reductions mod primes."""
    sp = curve.spec
    if sp.kind == PRIME:
        lines = _sample_locus_lines(curve, metric, mode, rng, want)
        if not lines:
            raise SamplingError("no sample lines available for validation")
        return _LineSampleSet([(None, lines)])
    groups = []
    tried = 0
    while len(groups) < 3 and tried < 40:
        tried += 1
        p = _random_theorem_prime(curve.degree, rng)
        reduced = reduce_mod_prime(curve, metric, p)
        if reduced is None:
            continue
        cp, mp = reduced
        try:
            lines = _sample_locus_lines(
                cp, mp, mode, random.Random(rng.randrange(1 << 30)), max(7, want // 3)
            )
        except (SamplingError, NormalGeomError):
            continue
        if lines:
            groups.append((cp.spec, lines))
    if not groups:
        raise SamplingError("no reduction primes yielded validation samples")
    return _LineSampleSet(groups)


def _sample_locus_lines(curve, metric, mode, rng, want):
    if metric is None:
        from .projective import euclidean_metric

        metric = euclidean_metric(curve.spec)
    sings = singular_points_rational(curve)
    try:
        pts = generic_regular_points(
            curve, metric, want * 2, rng, singular_points=sings
        )
    except SamplingError:
        try:
            pts = generic_regular_points(
                curve, metric, 1, rng, singular_points=sings
            )
        except SamplingError:
            return []
    lines = []
    seen = set()
    for pt in pts:
        if mode == "normal":
            ln = curve.normal_line(pt, metric)
        else:
            ln = curve.tangent_line(pt)
        key = ln.normalized()
        if key not in seen:
            seen.add(key)
            lines.append(key)
            if len(lines) >= want:
                break
    return lines


def _strip_u_powers(P, spec):
    """Remove full powers of the dual coordinates, logging them."""
    stripped = []
    for k, name in enumerate(DUAL_VARS):
        uvar = MultiPoly.variable(DUAL_VARS, spec, name)
        count = 0
        while not P.is_constant() and divides(uvar, P):
            P = exact_div(P, uvar)
            count += 1
        if count:
            stripped.append((uvar, count))
    return P, stripped


def _implicitize(curve, metric, mode, rng, expected_degree=None, samples=None):
    """Shared dual-curve / normal-curve elimination pipeline.

    Chart resultants at formal degrees, squarefree reduction, cross-chart
    gcd, coordinate-line rescue, guarded structural stripping, and
    validation against sampled member lines (and the expected degree when
    one is known).  Raises EliminationError with diagnostics on failure.
    """
    spec = curve.spec
    if samples is None:
        samples = _collect_line_samples(curve, metric, mode, rng)
    chart_polys = []
    used_charts = []
    stripped_log = []
    for k in (2, 1, 0):
        if len(chart_polys) >= 2:
            break
        f_list, g_list = _chart_lists(curve, metric, mode, k)
        if g_list is None:
            continue
        D = resultant_lists(f_list, g_list, _PolyRingAdapter(DUAL_VARS, spec))
        if D.is_zero() or D.is_constant():
            continue
        chart_polys.append(squarefree_part_hom(D))
        used_charts.append(k)
    if not chart_polys:
        raise EliminationError(
            "all elimination charts degenerated",
            {"mode": mode, "curve": to_string(curve.f)},
        )
    cand = chart_polys[0]
    for other in chart_polys[1:]:
        g = gcd_hom(cand, other)
        if not g.is_constant():
            cand = g
    # coordinate-line rescue: a component {u_k = 0} with k among the used
    # charts can be invisible to that chart's resultant
    for k in used_charts:
        uvar = MultiPoly.variable(DUAL_VARS, spec, DUAL_VARS[k])
        if not divides(uvar, cand) and samples.vanishes(uvar):
            cand = cand * uvar
    cand = canonicalize(cand)
    if not samples.vanishes(cand):
        raise EliminationError(
            "candidate does not vanish on sampled member lines",
            {"mode": mode, "candidate": to_string(cand)},
        )
    cand, stripped2 = _guarded_strip(curve, metric, mode, cand, samples, rng)
    stripped_log.extend(stripped2)
    degree = cand.total_degree()
    validation = {
        "samples": samples.count(),
        "sample_vanishing": True,
        "degree": degree,
    }
    if expected_degree is not None:
        validation["degree_expected"] = expected_degree
        if degree != expected_degree:
            raise EliminationError(
                f"implicitization degree {degree} != expected {expected_degree}",
                {
                    "mode": mode,
                    "candidate": to_string(cand),
                    "stripped": [(to_string(f), m) for f, m in stripped_log],
                },
            )
    return DualCurveResult(cand, degree, stripped_log, validation)


def _guarded_strip(curve, metric, mode, cand, samples, rng):
    """Strip structural junk factors while the remainder keeps vanishing on
    all sampled member lines; every removal is logged."""
    spec = curve.spec
    stripped = []
    strippers = []
    for k, name in enumerate(DUAL_VARS):
        strippers.append(MultiPoly.variable(DUAL_VARS, spec, name))
    for q in singular_points_rational(curve):
        strippers.append(dual_line_poly(q))
    queue = list(strippers)
    lazy_done = False
    while True:
        progress = False
        for s in queue:
            while True:
                g = gcd_hom(cand, s)
                if g.is_constant():
                    break
                trial = exact_div(cand, g)
                if trial.is_constant() or not samples.vanishes(trial):
                    break
                cand = canonicalize(trial)
                stripped.append((canonicalize(g), 1))
                progress = True
        if progress:
            continue
        if lazy_done:
            break
        lazy_done = True
        extra = _degeneracy_strippers(curve, metric, mode, cand, spec)
        if not extra:
            break
        queue = extra
    return cand, stripped


def _degeneracy_strippers(curve, metric, mode, cand, spec):
    """Eliminant of the lines through degenerate feet (where the normal or
    tangent construction breaks down), split into tractable pieces."""
    if mode == "normal":
        n = normal_direction_polys(curve, metric)
        xs = [MultiPoly.variable(curve.f.vars, spec, v) for v in PRIMAL_VARS]
        polys = [
            xs[1] * n[2] - xs[2] * n[1],
            xs[2] * n[0] - xs[0] * n[2],
            xs[0] * n[1] - xs[1] * n[0],
        ]
    else:
        polys = [curve.fx, curve.fy, curve.fz]
    polys = [q for q in polys if not q.is_zero()]
    if not polys:
        return []
    k = 2
    f5 = _subst_to_chart(curve.f, k, spec)
    f_list = _st_list(f5, curve.degree, spec)
    forms = []
    for q in polys[:2]:
        q5 = _subst_to_chart(q, k, spec)
        q_list = _st_list(q5, q.total_degree(), spec)
        R = resultant_lists(f_list, q_list, _PolyRingAdapter(DUAL_VARS, spec))
        if R.is_zero():
            continue
        R, _ = _strip_u_powers(R, spec)
        if R.is_constant():
            continue
        forms.append(squarefree_part_hom(R))
    if not forms:
        return []
    tj = forms[0]
    for f2 in forms[1:]:
        g = gcd_hom(tj, f2)
        tj = g if not g.is_constant() else tj
    out = [tj]
    # peel coordinate factors so the guard can strip partial products
    for name in DUAL_VARS:
        uvar = MultiPoly.variable(DUAL_VARS, spec, name)
        peeled = tj
        changed = False
        while divides(uvar, peeled) and not peeled.is_constant():
            peeled = exact_div(peeled, uvar)
            changed = True
        if changed and not peeled.is_constant():
            out.append(canonicalize(peeled))
    return out


def dual_curve(curve, rng=None):
    """Implicit equation of the dual curve (closure of the tangent lines).

    Strange curves collapse to the dual line of the strange point and are
    returned directly with an annotation; otherwise the result is validated
    against sampled tangent lines and the class."""
    rng = rng or random.Random(19)
    o = curve.strange_point()
    if o is not None:
        poly = canonicalize(dual_line_poly(o))
        return DualCurveResult(
            poly, 1, [], {"strange": True, "strange_point": o.normalized()}
        )
    klass, _, _ = curve_class_info(curve, random.Random(rng.randrange(1 << 30)))
    samples = _collect_line_samples(curve, None, "dual", rng)
    return _implicitize(
        curve, None, "dual", rng, expected_degree=klass, samples=samples
    )


def normal_curve(curve, metric, rng=None, expected_degree=None):
    """Implicit equation of the curve of normal lines.

    The expected degree defaults to normal class / separable fiber degree,
    both measured independently; a mismatch is an error, never a silent
    adjustment."""
    rng = rng or random.Random(23)
    if expected_degree is None:
        ncount, _, _ = normal_class_info(
            curve, metric, random.Random(rng.randrange(1 << 30))
        )
        fib = separable_degree(curve, metric, random.Random(rng.randrange(1 << 30)))
        fe = fib["fiber_e"]
        if fe <= 0 or ncount % fe:
            raise EliminationError(
                "normal class is not divisible by the fiber degree",
                {"normal_class": ncount, "fiber_e": fe},
            )
        expected_degree = ncount // fe
    result = _implicitize(curve, metric, "normal", rng, expected_degree)
    o = curve.strange_point()
    if o is not None and incident(o, metric.h_inf):
        qval = metric.q_poly.evaluate(o.coords)
        if not curve.spec.is_zero(qval):
            expected_line = canonicalize(dual_line_poly(metric.perp(o)))
            result.validation["strange_line_check"] = (
                canonicalize(result.poly) == expected_line
            )
    return result


# ---------------------------------------------------------------------------
# equality of curves of normal lines


def normal_curves_equal(X, Y, metric, rng=None, implicit_bound=3):
    """Decide X-perp == Y-perp, with evidence.

    Exact comparison of canonical implicit equations whenever both are
    computable (always over F_p; degree <= implicit_bound over Q), plus a
    mutual-sampling check: sampled normal lines of each curve must have a
    nonempty genuine fiber on the other; a failed line is the witness.
    Returns (equal, evidence dict).
    """
    rng = rng or random.Random(29)
    if X.spec != Y.spec:
        raise NormalGeomError("curves live over different fields")
    sp = X.spec
    evidence = {"witness_line": None, "method": []}
    implicit_equal = None
    if sp.kind == PRIME or max(X.degree, Y.degree) <= implicit_bound:
        try:
            px = normal_curve(X, metric, random.Random(rng.randrange(1 << 30)))
            py = normal_curve(Y, metric, random.Random(rng.randrange(1 << 30)))
            implicit_equal = canonicalize(px.poly) == canonicalize(py.poly)
            evidence["method"].append("implicit")
            evidence["X_perp"] = to_string(px.poly)
            evidence["Y_perp"] = to_string(py.poly)
        except (EliminationError, SamplingError, UnstableError):
            implicit_equal = None
    sample_equal, witness = _mutual_sampling(X, Y, metric, rng)
    evidence["method"].append("mutual-sampling")
    evidence["witness_line"] = witness
    if implicit_equal is None:
        return sample_equal, evidence
    if sample_equal != implicit_equal and witness is not None:
        # sampling found a line the implicit comparison contradicts: the
        # exact comparison wins, sampling evidence is kept for diagnosis
        evidence["disagreement"] = True
    return implicit_equal, evidence


def _mutual_sampling(X, Y, metric, rng, per_side=20):
    if X.spec.kind == PRIME:
        return _mutual_sampling_fp(X, Y, metric, rng, per_side)
    tried = 0
    checked = 0
    while checked < 2 and tried < 40:
        tried += 1
        p = _random_theorem_prime(max(X.degree, Y.degree), rng)
        rx = reduce_mod_prime(X, metric, p)
        ry = reduce_mod_prime(Y, metric, p)
        if rx is None or ry is None:
            continue
        xp, mp = rx
        yp, _ = ry
        eq, witness = _mutual_sampling_fp(
            xp, yp, mp, random.Random(rng.randrange(1 << 30)), per_side
        )
        if not eq:
            return False, {"prime": p, "line": witness}
        checked += 1
    return True, None


def _mutual_sampling_fp(X, Y, metric, rng, per_side):
    for a, b in ((X, Y), (Y, X)):
        try:
            lines = sample_normal_lines(a, metric, per_side, rng)
        except SamplingError:
            continue
        for _, ln in lines:
            try:
                rep = eta_fiber_count(b, ln, metric)
                hit = rep.genuine_points > 0
            except GeometryError:
                hit = False
            if not hit:
                return False, ln.normalized()
    return True, None


# ---------------------------------------------------------------------------
# bottlenecks


def bottlenecks(X, Y=None, metric=None, rng=None):
    """Bottleneck lines of one curve, or between two curves.

    Single curve: B(X) is infinite exactly when the general normal line is
    normal at >= 2 points (separable fiber degree >= 2); when finite, the
    candidate lines are the rational solutions of {X_perp = 0, S_1 = 0}
    (first principal subresultant of the chart restriction pair), each
    verified exactly to carry >= 2 distinct regular genuine feet.

    Pair: B(X, Y) is infinite exactly when X_perp and Y_perp share a
    component; when finite, candidates are rational points of
    {X_perp = 0, Y_perp = 0} verified to have a genuine foot on each curve.
    """
    rng = rng or random.Random(31)
    if metric is None:
        raise NormalGeomError("bottlenecks need a metric")
    if Y is None:
        return _bottlenecks_single(X, metric, rng)
    return _bottlenecks_pair(X, Y, metric, rng)


def _bottlenecks_single(X, metric, rng):
    sp = X.spec
    annotations = {}
    if sp.kind == RATIONALS and X.degree > 3:
        return BottleneckReport(
            "single-curve",
            None,
            annotations={
                "skipped": "bottleneck certification over Q is limited to degree <= 3"
            },
        )
    fib = separable_degree(X, metric, random.Random(rng.randrange(1 << 30)))
    fiber_e = fib["fiber_e"]
    nc = normal_curve(X, metric, random.Random(rng.randrange(1 << 30)))
    P = nc.poly
    annotations["normal_curve"] = to_string(P)
    annotations["fiber_e"] = fiber_e
    s1_confirmed = _s1_vanishes_on(X, metric, P)
    annotations["subresultant_confirms_infinite"] = s1_confirmed
    if fiber_e >= 2:
        report = BottleneckReport(
            "single-curve", False, annotations=annotations
        )
        if P.total_degree() == 1:
            report.lines = [line_of_linear_poly(P)]
        if sp.kind == PRIME and sp.p <= 199:
            report.witness_pairs = _witness_pairs_fp(X, X, metric)
        return report
    candidates = _bottleneck_candidates_single(X, metric, P)
    lines = []
    pairs_cert = True
    for cand in candidates:
        ln = ProjectiveLine(sp, cand)
        if proportional(ln.coords, metric.h_inf.coords, sp):
            continue
        try:
            rep = eta_fiber_count(X, ln, metric)
        except GeometryError:
            continue
        if rep.genuine_points >= 2:
            if all(ln != l2 for l2 in lines):
                lines.append(ln)
    lines.sort(key=lambda l: tuple(str(c) for c in l.normalized()))
    witness = _witness_pairs_fp(X, X, metric) if sp.kind == PRIME and sp.p <= 199 else []
    count = len(lines) if pairs_cert and sp.kind == PRIME and sp.p <= 97 else None
    return BottleneckReport(
        "single-curve",
        True,
        lines=lines,
        count_closure=count,
        witness_pairs=witness,
        annotations=annotations,
    )


def _s1_vanishes_on(X, metric, P):
    """Whether the first principal subresultant of the chart pair vanishes
    identically on {P = 0} (the iterated-resultant confirmation of an
    infinite bottleneck locus); chart coordinate factors make this test
    conservative, so it is reported as confirmation only."""
    spec = X.spec
    verdicts = []
    for k in (2, 1, 0):
        f_list, g_list = _chart_lists(X, metric, "normal", k)
        if g_list is None:
            continue
        try:
            s1 = subresultant_form(f_list, g_list, 1, DUAL_VARS, spec)
        except NormalGeomError:
            continue
        if s1.is_zero():
            verdicts.append(True)
            continue
        verdicts.append(divides(P, s1))
        if len(verdicts) >= 2:
            break
    return bool(verdicts) and all(verdicts)


def _bottleneck_candidates_single(X, metric, P):
    """Candidate bottleneck lines: common zeros of P and a chart S_1."""
    spec = X.spec
    if spec.kind == PRIME and spec.p <= 97:
        return _scan_candidates_fp(spec, [P])
    cands = []
    for k in (2, 1, 0):
        f_list, g_list = _chart_lists(X, metric, "normal", k)
        if g_list is None:
            continue
        try:
            s1 = subresultant_form(f_list, g_list, 1, DUAL_VARS, spec)
        except NormalGeomError:
            continue
        if s1.is_zero():
            continue
        cands.extend(_rational_common_points(P, s1, spec))
    cands.extend(_coordinate_point_candidates(P, spec))
    return _dedupe_triples(cands, spec)


def _bottlenecks_pair(X, Y, metric, rng):
    sp = X.spec
    annotations = {}
    px = normal_curve(X, metric, random.Random(rng.randrange(1 << 30))).poly
    py = normal_curve(Y, metric, random.Random(rng.randrange(1 << 30))).poly
    annotations["X_perp"] = to_string(px)
    annotations["Y_perp"] = to_string(py)
    common = gcd_hom(px, py)
    if not common.is_constant():
        annotations["common_component"] = to_string(common)
        report = BottleneckReport("pair", False, annotations=annotations)
        if common.total_degree() == 1:
            report.lines = [line_of_linear_poly(common)]
        if sp.kind == PRIME and sp.p <= 199:
            report.witness_pairs = _witness_pairs_fp(X, Y, metric)
        return report
    if sp.kind == PRIME and sp.p <= 97:
        candidates = _scan_candidates_fp(sp, [px, py])
    else:
        candidates = _dedupe_triples(
            _rational_common_points(px, py, sp)
            + _coordinate_point_candidates(px, sp),
            sp,
        )
    lines = []
    for cand in candidates:
        ln = ProjectiveLine(sp, cand)
        if proportional(ln.coords, metric.h_inf.coords, sp):
            continue
        try:
            fx = eta_fiber_count(X, ln, metric).genuine_points
            fy = eta_fiber_count(Y, ln, metric).genuine_points
        except GeometryError:
            continue
        if fx >= 1 and fy >= 1:
            if all(ln != l2 for l2 in lines):
                lines.append(ln)
    lines.sort(key=lambda l: tuple(str(c) for c in l.normalized()))
    witness = _witness_pairs_fp(X, Y, metric) if sp.kind == PRIME and sp.p <= 199 else []
    return BottleneckReport(
        "pair",
        True,
        lines=lines,
        count_closure=None,
        witness_pairs=witness,
        annotations=annotations,
    )


def _scan_candidates_fp(spec, polys):
    """All dual points annihilating every given polynomial (tiny fields)."""
    from .curves import _projective_reps

    out = []
    for rep in _projective_reps(spec.p):
        coords = tuple(spec.coerce(c) for c in rep)
        if all(spec.is_zero(P.evaluate(coords)) for P in polys):
            out.append(coords)
    return out


def _coordinate_point_candidates(P, spec):
    out = []
    for k in range(3):
        coords = tuple(
            spec.one() if i == k else spec.zero() for i in range(3)
        )
        if spec.is_zero(P.evaluate(coords)):
            out.append(coords)
    return out


def _dedupe_triples(triples, spec):
    out = []
    for c in triples:
        pt = ProjectivePoint(spec, c)
        if all(ProjectivePoint(spec, o) != pt for o in out):
            out.append(tuple(pt.coords))
    return out


def _rational_common_points(P, S, spec):
    """Field-rational common zeros of two homogeneous dual-space polys, by
    resultant elimination over every variable choice plus slice gcds."""
    from .univariate import f_gcd, trim

    found = []
    for v in DUAL_VARS:
        if P.degree_in(v) <= 0 or S.degree_in(v) <= 0:
            continue
        try:
            R = resultant(P, S, v)
        except NormalGeomError:
            continue
        if R.is_zero():
            continue
        others = [w for w in DUAL_VARS if w != v]
        try:
            Rb = as_binary_form(R, others[0], others[1])
        except NormalGeomError:
            continue
        dirs = []
        aff = Rb.affine()
        if len(aff) > 1:
            if spec.kind == RATIONALS:
                dirs = [(spec.one(), r) for r in rational_roots(aff)]
            else:
                dirs = [(spec.one(), spec.coerce(r)) for r in fp_roots(aff, spec.p)]
        if Rb.n > 0 and not Rb.is_zero() and Rb.infinity_multiplicity() > 0:
            dirs.append((spec.zero(), spec.one()))
        iv = DUAL_VARS.index(v)
        io1, io2 = DUAL_VARS.index(others[0]), DUAL_VARS.index(others[1])
        for a, b in dirs:
            base = [spec.zero()] * 3
            base[io1], base[io2] = a, b
            slices = []
            for Q in (P, S):
                sl = trim(
                    [
                        c.evaluate(base)
                        for c in Q.as_univariate(v)
                    ]
                )
                slices.append(sl)
            if not slices[0] and not slices[1]:
                continue
            if not slices[0] or not slices[1]:
                g = slices[0] or slices[1]
            else:
                g = f_gcd(slices[0], slices[1], spec)
            if len(g) <= 1:
                # no common affine value; the direction point itself may work
                coords = list(base)
                if all(
                    spec.is_zero(Q.evaluate(coords)) for Q in (P, S)
                ):
                    found.append(tuple(coords))
                continue
            roots = (
                rational_roots(g)
                if spec.kind == RATIONALS
                else [spec.coerce(r) for r in fp_roots(g, spec.p)]
            )
            for w in roots:
                coords = list(base)
                coords[iv] = spec.coerce(w) if not spec.is_element(w) else w
                found.append(tuple(coords))
            coords = list(base)  # w = 0 root shows up via the gcd too
    return found


def _witness_pairs_fp(X, Y, metric):
    """Rational foot pairs over F_p grouped by shared normal line."""
    sp = X.spec
    by_line = {}
    for curve, tag in ((X, "X"), (Y, "Y")) if X is not Y else ((X, "X"),):
        for pt in curve.rational_points():
            if not curve.is_regular_point(pt):
                continue
            try:
                ln = curve.normal_line(pt, metric)
            except GeometryError:
                continue
            key = ln.normalized()
            by_line.setdefault(key, {"X": [], "Y": []})
            by_line[key][tag].append(pt.normalized())
    pairs = []
    for key, feet in sorted(by_line.items(), key=lambda kv: str(kv[0])):
        if X is Y:
            xs = feet["X"]
            for i in range(len(xs)):
                for j in range(i + 1, len(xs)):
                    pairs.append({"line": key, "feet": [xs[i], xs[j]]})
        else:
            for a in feet["X"]:
                for b in feet["Y"]:
                    pairs.append({"line": key, "feet": [a, b]})
    return pairs
