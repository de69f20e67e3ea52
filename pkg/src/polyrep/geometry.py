"""Exact rational polygons, illumination sets and product representations.

All arithmetic is done with :class:`fractions.Fraction`; nothing in this
module ever touches a float.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]

BOUNDED = "bounded"
CANONICAL_UNBOUNDED = "canonical_unbounded"
OPEN = "open"
CLOSED = "closed"

EPS_FACTOR = Fraction(1, 1024)


class PolygonError(ValueError):
    """Raised when a list of edge forms does not describe a valid polygon."""


class EmptyInterior(PolygonError):
    pass


class RedundantHalfplane(PolygonError):
    def __init__(self, index: int):
        super().__init__(f"halfplane {index} is redundant")
        self.index = index


class NotConsecutiveOrder(PolygonError):
    pass


class ParallelUnboundedEdges(PolygonError):
    pass


class UnboundedButMarkedBounded(PolygonError):
    pass


class BoundedButMarkedUnbounded(PolygonError):
    pass


class Infeasible(PolygonError):
    """A requested sign pattern has no witness point."""


class BadIndex(ValueError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def as_point(x) -> Point:
    return (as_fraction(x[0]), as_fraction(x[1]))


@dataclass(frozen=True)
class AffineForm:
    """The affine function ``a1*x1 + a2*x2 + b``."""

    a1: Fraction
    a2: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a1", as_fraction(self.a1))
        object.__setattr__(self, "a2", as_fraction(self.a2))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.a1 == 0 and self.a2 == 0:
            raise ValueError("affine form has zero gradient")

    def __call__(self, x: Sequence) -> Fraction:
        return self.a1 * x[0] + self.a2 * x[1] + self.b

    def __neg__(self) -> AffineForm:
        return AffineForm(-self.a1, -self.a2, -self.b)

    @property
    def normal(self) -> tuple[Fraction, Fraction]:
        return (self.a1, self.a2)

    def __str__(self) -> str:
        terms = []
        for coef, name in ((self.a1, "x1"), (self.a2, "x2")):
            if coef:
                terms.append(f"{coef}*{name}" if coef != 1 else name)
        if self.b or not terms:
            terms.append(str(self.b))
        return " + ".join(terms).replace("+ -", "- ")


def _cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _half(v) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_key(v):
    """Sort key ordering nonzero vectors by polar angle, exactly."""
    return functools.cmp_to_key(_angle_cmp)(v)


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = _cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def line_intersection(f: AffineForm, g: AffineForm) -> Point | None:
    det = f.a1 * g.a2 - f.a2 * g.a1
    if det == 0:
        return None
    x1 = (f.a2 * g.b - g.a2 * f.b) / det
    x2 = (g.a1 * f.b - f.a1 * g.b) / det
    return (x1, x2)


# -- strict linear feasibility (two-variable Fourier-Motzkin) ---------------


def _pick_in_interval(lo: Fraction | None, hi: Fraction | None) -> Fraction | None:
    if lo is not None and hi is not None:
        if lo >= hi:
            return None
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1
    if hi is not None:
        return hi - 1
    return Fraction(0)


def _solve_1d(constraints: Iterable[tuple[Fraction, Fraction]]) -> Fraction | None:
    """Find t with ``alpha*t + beta > 0`` for all (alpha, beta), or None."""
    lo = hi = None
    for alpha, beta in constraints:
        if alpha == 0:
            if beta <= 0:
                return None
            continue
        bound = -beta / alpha
        if alpha > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    return _pick_in_interval(lo, hi)


def _solve_2d(forms: Sequence[AffineForm]) -> Point | None:
    # x2 is eliminated first; bounds on x2 are (slope, offset) in x1
    lower, upper, direct = [], [], []
    for f in forms:
        if f.a2 == 0:
            direct.append((f.a1, f.b))
        elif f.a2 > 0:
            lower.append((-f.a1 / f.a2, -f.b / f.a2))
        else:
            upper.append((-f.a1 / f.a2, -f.b / f.a2))
    projected = list(direct)
    for (ls, lo), (us, uo) in itertools.product(lower, upper):
        projected.append((us - ls, uo - lo))
    x1 = _solve_1d(projected)
    if x1 is None:
        return None
    lo = max((s * x1 + o for s, o in lower), default=None)
    hi = min((s * x1 + o for s, o in upper), default=None)
    x2 = _pick_in_interval(lo, hi)
    if x2 is None:
        return None
    return (x1, x2)


def find_point(positive: Sequence[AffineForm], zero: Sequence[AffineForm] = ()) -> Point | None:
    """Return a rational point where every ``positive`` form is > 0 and every
    ``zero`` form vanishes, or None if there is none."""
    if not zero:
        return _solve_2d(positive)
    z = zero[0]
    # parametrize the line z = 0 as base + t*direction
    if z.a2 != 0:
        base = (Fraction(0), -z.b / z.a2)
    else:
        base = (-z.b / z.a1, Fraction(0))
    direction = (-z.a2, z.a1)

    def restrict(f):
        return (f.a1 * direction[0] + f.a2 * direction[1], f(base))

    t_fixed = None
    for g in zero[1:]:
        alpha, beta = restrict(g)
        if alpha == 0:
            if beta != 0:
                return None
            continue
        t = -beta / alpha
        if t_fixed is not None and t != t_fixed:
            return None
        t_fixed = t
    if t_fixed is None:
        t = _solve_1d(restrict(f) for f in positive)
        if t is None:
            return None
        return _add(base, direction, t)
    point = _add(base, direction, t_fixed)
    if any(f(point) <= 0 for f in positive):
        return None
    return point


# -- polygons ---------------------------------------------------------------


@dataclass(frozen=True)
class Polygon:
    """A validated convex polygon ``{x : p(x) >= 0 for every edge form p}``.

    Edges are stored in consecutive boundary order.  Bounded polygons label
    their edges ``0..m`` (edge 0 is the one dropped by the bounded-to-
    unbounded reduction); canonical unbounded polygons label them ``1..m``
    with edges 1 and m the two non-parallel unbounded edges.
    """

    edges: tuple[AffineForm, ...]
    kind: str
    vertices: tuple[Point, ...]
    interior_point: Point

    @property
    def base(self) -> int:
        return 0 if self.kind == BOUNDED else 1

    @property
    def labels(self) -> range:
        return range(self.base, self.base + len(self.edges))

    @property
    def m(self) -> int:
        """Size of the ground set used by the combinatorial reduction."""
        return len(self.edges) - 1 if self.kind == BOUNDED else len(self.edges)

    def form(self, label: int) -> AffineForm:
        i = label - self.base
        if not 0 <= i < len(self.edges):
            raise BadIndex(f"edge label {label} out of range {self.labels.start}..{self.labels.stop - 1}")
        return self.edges[i]

    def values(self, x) -> tuple[Fraction, ...]:
        return tuple(f(x) for f in self.edges)

    def contains(self, x) -> bool:
        return all(v >= 0 for v in self.values(x))

    def status(self, x) -> str:
        vals = self.values(x)
        if any(v < 0 for v in vals):
            return "exterior"
        if any(v == 0 for v in vals):
            return "boundary"
        return "interior"


def make_polygon(forms: Sequence[AffineForm], kind: str) -> Polygon:
    """Validate ``forms`` (each describing the halfplane ``form >= 0``) as a
    polygon of the given kind and return it with vertices computed.

    Errors carry 1-based positions in ``forms``.
    """
    if kind not in (BOUNDED, CANONICAL_UNBOUNDED):
        raise ValueError(f"unknown polygon kind {kind!r}")
    forms = tuple(forms)
    if not forms:
        raise ValueError("a polygon needs at least one edge")
    interior = find_point(forms)
    if interior is None:
        raise EmptyInterior("the halfplanes have no common interior point")
    for i, f in enumerate(forms):
        others = [g for j, g in enumerate(forms) if j != i]
        if find_point(others + [-f]) is None:
            raise RedundantHalfplane(i + 1)

    # irredundant forms have pairwise distinct inward normal directions
    normals = [f.normal for f in forms]
    order = sorted(range(len(forms)), key=lambda i: _angle_key(normals[i]))
    count = len(order)
    gaps = []  # (position in sorted order, whether the angular gap to the next normal is >= pi)
    for pos in range(count):
        u, v = normals[order[pos]], normals[order[(pos + 1) % count]]
        c = _cross(u, v)
        wide = count == 1 or c < 0 or (c == 0 and u[0] * v[0] + u[1] * v[1] < 0)
        gaps.append(wide)
    bounded = not any(gaps)

    if kind == BOUNDED:
        if not bounded:
            raise UnboundedButMarkedBounded("the halfplanes describe an unbounded polygon")
        if not _is_cyclic_rotation(order, list(range(count))):
            raise NotConsecutiveOrder("edges are not listed in consecutive boundary order")
        pairs = [(i, (i + 1) % count) for i in range(count)]
    else:
        if bounded:
            raise BoundedButMarkedUnbounded("the halfplanes describe a bounded polygon")
        for pos in range(count):
            if count > 1 and gaps[pos]:
                u, v = normals[order[pos]], normals[order[(pos + 1) % count]]
                if _cross(u, v) == 0:
                    raise ParallelUnboundedEdges("the two unbounded edges are parallel")
        start = (gaps.index(True) + 1) % count
        chain = [order[(start + j) % count] for j in range(count)]
        if chain != list(range(count)) and chain[::-1] != list(range(count)):
            raise NotConsecutiveOrder("edges are not listed in consecutive boundary order")
        pairs = [(i, i + 1) for i in range(count - 1)]

    vertices = tuple(line_intersection(forms[i], forms[j]) for i, j in pairs)
    return Polygon(edges=forms, kind=kind, vertices=vertices, interior_point=interior)


def _is_cyclic_rotation(seq: list[int], target: list[int]) -> bool:
    n = len(seq)
    k = seq.index(target[0])
    fwd = [seq[(k + j) % n] for j in range(n)]
    bwd = [seq[(k - j) % n] for j in range(n)]
    return fwd == target or bwd == target


# -- illumination -----------------------------------------------------------


@dataclass(frozen=True)
class IlluminationSets:
    lt: frozenset[int]
    eq: frozenset[int]

    @property
    def leq(self) -> frozenset[int]:
        return self.lt | self.eq


def illuminated(P: Polygon, x) -> IlluminationSets:
    """Edges whose form is negative at ``x`` and edges whose line contains ``x``."""
    lt, eq = set(), set()
    for label, v in zip(P.labels, P.values(x)):
        if v < 0:
            lt.add(label)
        elif v == 0:
            eq.add(label)
    return IlluminationSets(frozenset(lt), frozenset(eq))


def eval_product(P: Polygon, F: Iterable[int], x) -> Fraction:
    """Exact value of the product of edge forms listed in ``F`` (repeats allowed)."""
    result = Fraction(1)
    for label in F:
        result *= P.form(label)(x)
    return result


def class_witness(P: Polygon, lt: Iterable[int], eq: Iterable[int] = ()) -> Point:
    """Point whose forms are negative on ``lt``, zero on ``eq`` and positive
    elsewhere.  Raises :class:`Infeasible` if no such point exists."""
    lt, eq = set(lt), set(eq)
    for label in lt | eq:
        P.form(label)
    positive = [-f if lab in lt else f for lab, f in zip(P.labels, P.edges) if lab not in eq]
    x = find_point(positive, [P.form(lab) for lab in sorted(eq)])
    if x is None:
        raise Infeasible(f"no point with negative edges {sorted(lt)} and zero edges {sorted(eq)}")
    return x


def interval_witness(P: Polygon, a: int, b: int) -> Point:
    """A point illuminating exactly the edges ``a..b`` of a canonical polygon."""
    if P.kind != CANONICAL_UNBOUNDED:
        raise ValueError("interval witnesses are defined for canonical unbounded polygons")
    if not 1 <= a <= b <= P.m:
        raise BadIndex(f"need 1 <= a <= b <= {P.m}, got ({a}, {b})")
    return class_witness(P, range(a, b + 1))


def realized_classes(P: Polygon) -> list[tuple[frozenset, frozenset]]:
    """Every (lt, eq) sign class realized by points of a canonical polygon.

    Exterior classes are ``lt = {a..b}`` with ``eq`` any subset of the two
    neighbours; boundary classes are edge relative interiors and vertices.
    """
    if P.kind != CANONICAL_UNBOUNDED:
        raise ValueError("sign classes are enumerated for canonical unbounded polygons only")
    m = P.m
    classes = [(frozenset(), frozenset())]
    for i in range(1, m + 1):
        classes.append((frozenset(), frozenset([i])))
    for i in range(1, m):
        classes.append((frozenset(), frozenset([i, i + 1])))
    for a in range(1, m + 1):
        for b in range(a, m + 1):
            nbrs = [j for j in (a - 1, b + 1) if 1 <= j <= m]
            for r in range(len(nbrs) + 1):
                for eq in itertools.combinations(nbrs, r):
                    classes.append((frozenset(range(a, b + 1)), frozenset(eq)))
    return classes


# -- product representations ------------------------------------------------


@dataclass(frozen=True)
class ProductRep:
    """Products of edge forms, each member a tuple of edge labels.

    ``mode`` is ``"open"`` (all products > 0 describes the interior) or
    ``"closed"`` (all products >= 0 describes the polygon).
    """

    family: tuple[tuple[int, ...], ...]
    mode: str

    def __post_init__(self):
        if self.mode not in (OPEN, CLOSED):
            raise ValueError(f"mode must be 'open' or 'closed', got {self.mode!r}")
        object.__setattr__(self, "family", tuple(tuple(s) for s in self.family))

    @property
    def n(self) -> int:
        return len(self.family)

    def check_indices(self, P: Polygon) -> None:
        for member in self.family:
            for label in member:
                P.form(label)

    def covers_all(self, P: Polygon) -> bool:
        return set(itertools.chain.from_iterable(self.family)) >= set(P.labels)

    def factors(self, P: Polygon) -> list[list[AffineForm]]:
        return [[P.form(label) for label in member] for member in self.family]


def _product_sign(member: Sequence[int], sign: dict[int, int]) -> int:
    s = 1
    for label in member:
        s *= sign[label]
    return s


def _accepts(status: str, signs: list[int], mode: str) -> bool:
    """Whether the representation's verdict at a point matches its true status."""
    if mode == OPEN:
        return all(s > 0 for s in signs) == (status == "interior")
    return all(s >= 0 for s in signs) == (status != "exterior")


# -- structured sample points -----------------------------------------------


@dataclass(frozen=True)
class Witness:
    point: Point
    status: str
    signs: tuple[int, ...] = field(repr=False)


def _unit_like(v) -> tuple[Fraction, Fraction]:
    s = max(abs(v[0]), abs(v[1]))
    return (v[0] / s, v[1] / s)


def _add(p, v, t=1) -> Point:
    return (p[0] + t * v[0], p[1] + t * v[1])


def _edge_direction(f: AffineForm) -> tuple[Fraction, Fraction]:
    return _unit_like((-f.a2, f.a1))


def _circle_directions(count: int) -> list[tuple[Fraction, Fraction]]:
    """Rational points on the unit circle, roughly evenly spread."""
    dirs = []
    quarter = max(1, count // 4)
    for i in range(quarter):
        t = Fraction(i, quarter)
        # (1-t^2, 2t)/(1+t^2) sweeps the first quadrant as t goes 0..1..inf
        dirs.append(((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    full = []
    for d in dirs:
        full.extend([d, (-d[1], d[0]), (-d[0], -d[1]), (d[1], -d[0])])
    return full


def coordinate_scale(P: Polygon) -> Fraction:
    pts = list(P.vertices) + [P.interior_point]
    return max([Fraction(1)] + [abs(c) for p in pts for c in p])


def bounding_box(P: Polygon, pad: Fraction = Fraction(1, 4)) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    pts = list(P.vertices) + [P.interior_point]
    if len(pts) < 3:
        scale = coordinate_scale(P)
        pts += [_add(P.interior_point, (scale, scale)), _add(P.interior_point, (-scale, -scale))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, Fraction(1, 1 << 20))
    px, py = max(x1 - x0, span / 4) * pad, max(y1 - y0, span / 4) * pad
    return (x0 - px, y0 - py, x1 + px, y1 + py)


def _edge_points(P: Polygon, idx: int, scale: Fraction) -> tuple[Point, list[Point]]:
    """A relative-interior point of edge ``idx`` and points on its line outside the edge."""
    f = P.edges[idx]
    d = _edge_direction(f)
    count = len(P.edges)
    if P.kind == BOUNDED:
        v_prev, v_next = P.vertices[idx - 1], P.vertices[idx]
        mid = ((v_prev[0] + v_next[0]) / 2, (v_prev[1] + v_next[1]) / 2)
        ends = [v_prev, v_next]
    else:
        ends = []
        if idx > 0:
            ends.append(P.vertices[idx - 1])
        if idx < count - 1:
            ends.append(P.vertices[idx])
        if len(ends) == 2:
            mid = ((ends[0][0] + ends[1][0]) / 2, (ends[0][1] + ends[1][1]) / 2)
        elif len(ends) == 1:
            v = ends[0]
            nbr = P.edges[idx + 1] if idx == 0 else P.edges[idx - 1]
            step = d if nbr(_add(v, d)) > 0 else (-d[0], -d[1])
            mid = _add(v, step, scale)
        else:
            mid = find_point([], [f])
    outside = []
    for v in ends:
        # step away from the midpoint along the line
        away = (v[0] - mid[0], v[1] - mid[1])
        away = _unit_like(away)
        for t in (scale * EPS_FACTOR, scale):
            outside.append(_add(v, away, t))
    return mid, outside


@functools.lru_cache(maxsize=256)
def sample_witnesses(P: Polygon, grid: int = 32, directions: int = 64) -> tuple[Witness, ...]:
    """Deterministic structured test points, each tagged with its exact status.

    Includes an interior point, points on and just off every edge, points on
    edge lines beyond the edges, perturbed vertices and line intersections,
    far points in many directions, a rational grid over the padded bounding
    box, and for canonical polygons one witness for every realized sign class.
    """
    scale = coordinate_scale(P)
    eps = scale * EPS_FACTOR
    pts: list[Point] = [P.interior_point]
    if P.kind == CANONICAL_UNBOUNDED:
        # class witnesses first: they are the simplest points of their class
        pts.extend(class_witness(P, lt, eq) for lt, eq in realized_classes(P))
    for idx, f in enumerate(P.edges):
        mid, outside = _edge_points(P, idx, scale)
        nrm = _unit_like(f.normal)
        pts.append(mid)
        pts.append(_add(mid, nrm, eps))
        pts.append(_add(mid, nrm, -eps))
        pts.append(_add(mid, nrm, -scale))
        pts.extend(outside)
    count = len(P.edges)
    if P.kind == BOUNDED:
        corner_pairs = [(i, (i + 1) % count) for i in range(count)]
    else:
        corner_pairs = [(i, i + 1) for i in range(count - 1)]
    for v, (i, j) in zip(P.vertices, corner_pairs):
        ni, nj = _unit_like(P.edges[i].normal), _unit_like(P.edges[j].normal)
        pts.append(v)
        pts.append(_add(v, (ni[0] + nj[0], ni[1] + nj[1]), -eps))
        pts.append(_add(v, ni, -eps))
        pts.append(_add(v, nj, -eps))
    axes = [(eps, 0), (-eps, 0), (0, eps), (0, -eps)]
    for f, g in itertools.combinations(P.edges, 2):
        x = line_intersection(f, g)
        if x is None:
            continue
        pts.append(x)
        pts.extend(_add(x, a) for a in axes)
    radius = 4 * scale
    center = P.interior_point
    for d in _circle_directions(directions):
        pts.append(_add(center, d, radius))
        pts.append(_add(center, d, 64 * radius))
    x0, y0, x1, y1 = bounding_box(P)
    for i in range(grid):
        for j in range(grid):
            pts.append((x0 + (x1 - x0) * Fraction(2 * i + 1, 2 * grid),
                        y0 + (y1 - y0) * Fraction(2 * j + 1, 2 * grid)))
    seen = set()
    out = []
    for p in pts:
        if p in seen:
            continue
        seen.add(p)
        vals = P.values(p)
        signs = tuple((v > 0) - (v < 0) for v in vals)
        if -1 in signs:
            status = "exterior"
        elif 0 in signs:
            status = "boundary"
        else:
            status = "interior"
        out.append(Witness(p, status, signs))
    return tuple(out)


@dataclass
class VerifyReport:
    ok: bool
    checked: int
    counterexample: Point | None = None
    status: str | None = None
    values: list[Fraction] | None = None

    def __str__(self) -> str:
        if self.ok:
            return f"Pass ({self.checked} sample points)"
        x = ", ".join(str(c) for c in self.counterexample)
        vals = ", ".join(str(v) for v in self.values)
        return f"Fail at ({x}) [{self.status}]: products = [{vals}]"


def verify_sampled(P: Polygon, rep: ProductRep, extra_points: Iterable = ()) -> VerifyReport:
    """Check the representation at every structured sample point.

    Sound for rejection only: a Pass means no sampled point disagrees.
    """
    rep.check_indices(P)
    witnesses = list(sample_witnesses(P))
    for x in extra_points:
        x = as_point(x)
        vals = P.values(x)
        signs = tuple((v > 0) - (v < 0) for v in vals)
        witnesses.append(Witness(x, P.status(x), signs))
    for w in witnesses:
        sign = dict(zip(P.labels, w.signs))
        signs = [_product_sign(member, sign) for member in rep.family]
        if not _accepts(w.status, signs, rep.mode):
            values = [eval_product(P, member, w.point) for member in rep.family]
            return VerifyReport(False, len(witnesses), w.point, w.status, values)
    return VerifyReport(True, len(witnesses))


def verify_classes(P: Polygon, rep: ProductRep) -> tuple[frozenset, frozenset] | None:
    """Exact verification for canonical polygons by sign-class enumeration.

    The sign of every product depends only on which edge forms are negative
    and which vanish, so checking one class at a time is complete.  Returns
    the first failing (lt, eq) class or None.
    """
    rep.check_indices(P)
    for lt, eq in realized_classes(P):
        if lt:
            status = "exterior"
        elif eq:
            status = "boundary"
        else:
            status = "interior"
        sign = {lab: (-1 if lab in lt else 0 if lab in eq else 1) for lab in P.labels}
        signs = [_product_sign(member, sign) for member in rep.family]
        if not _accepts(status, signs, rep.mode):
            return (lt, eq)
    return None


# -- polynomial expansion ---------------------------------------------------


def expand_product(factors: Sequence[AffineForm]) -> list[list[Fraction]]:
    """Dense coefficients of the product: ``table[i][j]`` multiplies x1**i * x2**j."""
    d = len(factors)
    table = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    table[0][0] = Fraction(1)
    deg = 0
    for f in factors:
        new = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
        for i in range(deg + 1):
            for j in range(deg + 1 - i):
                c = table[i][j]
                if not c:
                    continue
                new[i][j] += c * f.b
                new[i + 1][j] += c * f.a1
                new[i][j + 1] += c * f.a2
        table = new
        deg += 1
    return table


def eval_table(table: Sequence[Sequence[Fraction]], x) -> Fraction:
    total = Fraction(0)
    for i, row in enumerate(table):
        for j, c in enumerate(row):
            if c:
                total += c * x[0] ** i * x[1] ** j
    return total
