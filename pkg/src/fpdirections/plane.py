"""Points, directions, and point sets in the affine plane AG(2,p).

Directions are the p+1 points of the projective line: the slope classes
0..p-1 (class of the vector (1, m)) plus the vertical class (0, 1). A cell
index x*p + y identifies the point (x, y); the same indexing is used by the
fast enumeration kernels and by canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GuardError
from .fp import FieldElement, PrimeModulus
from .poly import Polynomial

CANONICAL_FORM_MAX_P = 13


@dataclass(frozen=True, slots=True)
class Direction:
    """A slope class Slope(m) or the vertical class; slope is None if vertical."""

    slope: FieldElement | None

    @classmethod
    def vertical(cls) -> Direction:
        return cls(None)

    @classmethod
    def of_slope(cls, m: FieldElement) -> Direction:
        return cls(m)

    @property
    def is_vertical(self) -> bool:
        return self.slope is None

    def index(self, p: int) -> int:
        """Serial index used by kernels and reports: slopes 0..p-1, vertical p."""
        return p if self.slope is None else self.slope.value

    def __str__(self):
        return "inf" if self.slope is None else str(self.slope.value)


def direction_from_index(modulus: PrimeModulus, index: int) -> Direction:
    if index == modulus.p:
        return Direction.vertical()
    return Direction(modulus.element(index))


def all_directions(modulus: PrimeModulus) -> list[Direction]:
    """The p+1 directions, slopes first in canonical order, vertical last."""
    out = [Direction(FieldElement(m, modulus)) for m in range(modulus.p)]
    out.append(Direction.vertical())
    return out


@dataclass(frozen=True, slots=True)
class Point:
    x: FieldElement
    y: FieldElement

    def __post_init__(self):
        if self.x.modulus != self.y.modulus:
            raise ValueError(
                f"modulus mismatch: {self.x.modulus.p} vs {self.y.modulus.p}"
            )

    @property
    def modulus(self) -> PrimeModulus:
        return self.x.modulus

    def cell(self) -> int:
        return self.x.value * self.modulus.p + self.y.value

    def __str__(self):
        return f"{self.x.value},{self.y.value}"


@dataclass(frozen=True, slots=True)
class PointSet:
    """An immutable subset of AG(2,p); a set, never a multiset."""

    modulus: PrimeModulus
    points: frozenset[Point]

    def __post_init__(self):
        for pt in self.points:
            if pt.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {pt.modulus.p} vs {self.modulus.p}")

    @classmethod
    def from_pairs(
        cls, modulus: PrimeModulus, pairs: Iterable[tuple[int, int]]
    ) -> PointSet:
        pts = frozenset(
            Point(modulus.element(x), modulus.element(y)) for x, y in pairs
        )
        return cls(modulus, pts)

    @classmethod
    def from_cells(cls, modulus: PrimeModulus, cells: Iterable[int]) -> PointSet:
        p = modulus.p
        return cls.from_pairs(modulus, ((c // p, c % p) for c in cells))

    def __len__(self):
        return len(self.points)

    def __contains__(self, pt: Point) -> bool:
        return pt in self.points

    def __iter__(self):
        return iter(self.points)

    def sorted_points(self) -> list[Point]:
        return sorted(self.points, key=lambda q: (q.x.value, q.y.value))

    def cells(self) -> tuple[int, ...]:
        """Ascending cell indices x*p + y; the kernel-facing representation."""
        return tuple(sorted(pt.cell() for pt in self.points))

    def text_form(self) -> str:
        """Sorted whitespace-separated "x,y" pairs, the CLI exchange format."""
        return " ".join(str(pt) for pt in self.sorted_points())

    def __str__(self):
        return self.text_form()


def function_graph(g: Polynomial) -> PointSet:
    """The p-point graph {(x, g(x))}."""
    m = g.modulus
    return PointSet(
        m, frozenset(Point(m.element(x), g.evaluate(x)) for x in range(m.p))
    )


def full_line(modulus: PrimeModulus, direction: Direction, t: int) -> PointSet:
    """The p points of the line with the given direction and index t.

    Slope(m) lines are y = m*x + t indexed by intercept; vertical lines are
    x = t.
    """
    p = modulus.p
    if direction.is_vertical:
        return PointSet.from_pairs(modulus, ((t, y) for y in range(p)))
    m = direction.slope.value
    return PointSet.from_pairs(modulus, ((x, (m * x + t) % p) for x in range(p)))


def cartesian_product(
    modulus: PrimeModulus,
    xs: Iterable[int | FieldElement],
    ys: Iterable[int | FieldElement],
) -> PointSet:
    """The grid A x B = {(a, b) : a in A, b in B}."""

    def canon(vals):
        out = set()
        for v in vals:
            if isinstance(v, FieldElement):
                if v.modulus != modulus:
                    raise ValueError(f"modulus mismatch: {v.modulus.p} vs {modulus.p}")
                out.add(v.value)
            else:
                out.add(v % modulus.p)
        return out

    a, b = canon(xs), canon(ys)
    return PointSet.from_pairs(modulus, ((x, y) for x in a for y in b))


def direction_of(p_from: Point, p_to: Point) -> Direction:
    """The direction class of the difference of two distinct points."""
    if p_from == p_to:
        raise ValueError("direction of a zero difference is undefined")
    if p_from.x == p_to.x:
        return Direction.vertical()
    return Direction((p_to.y - p_from.y) / (p_to.x - p_from.x))


def direction_set(h: PointSet) -> frozenset[Direction]:
    """All directions determined by pairs of distinct points of H.

    Pair enumeration with early exit once all p+1 directions are present.
    """
    if len(h) < 2:
        raise ValueError("a direction set needs at least two points")
    limit = h.modulus.p + 1
    pts = h.sorted_points()
    seen: set[Direction] = set()
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            seen.add(direction_of(a, b))
        if len(seen) == limit:
            break
    return frozenset(seen)


def projection_values(h: PointSet, direction: Direction) -> tuple[int, ...]:
    """Integer point counts on the p lines with the given direction.

    Entry t counts the points of H on line t (vertical: x = t; Slope(m):
    y = m*x + t). The counts always sum to |H|.
    """
    p = h.modulus.p
    counts = [0] * p
    if direction.is_vertical:
        for pt in h.points:
            counts[pt.x.value] += 1
    else:
        m = direction.slope.value
        for pt in h.points:
            counts[(pt.y.value - m * pt.x.value) % p] += 1
    return tuple(counts)


def projection_polynomial(h: PointSet, direction: Direction) -> Polynomial:
    """The counts of projection_values reduced mod p and interpolated.

    A count of p reduces to 0; a set containing a full line of the
    projection family therefore yields the zero polynomial, which callers
    must treat as a flagged degenerate case (its degree is None).
    """
    return Polynomial.interpolate(h.modulus, projection_values(h, direction))


def direction_set_by_projections(h: PointSet) -> frozenset[Direction]:
    """Independent recomputation of the direction set via projection counts.

    A direction is determined iff some line with that direction holds two or
    more points of H. Used as a cross-check against pair enumeration.
    """
    if len(h) < 2:
        raise ValueError("a direction set needs at least two points")
    return frozenset(
        c for c in all_directions(h.modulus) if max(projection_values(h, c)) >= 2
    )


def is_line(h: PointSet) -> bool:
    """True iff all points are collinear; sets of at most two points count."""
    pts = h.sorted_points()
    if len(pts) <= 2:
        return True
    base = direction_of(pts[0], pts[1])
    return all(direction_of(pts[0], q) == base for q in pts[2:])


@dataclass(frozen=True, slots=True)
class AffineTransform:
    """(x, y) -> (a*x + b*y + u, c*x + d*y + v) with invertible linear part."""

    modulus: PrimeModulus
    a: int
    b: int
    c: int
    d: int
    u: int
    v: int

    def __post_init__(self):
        p = self.modulus.p
        for name in ("a", "b", "c", "d", "u", "v"):
            val = getattr(self, name)
            if not 0 <= val < p:
                raise ValueError(f"entry {name}={val} is not canonical mod {p}")
        if (self.a * self.d - self.b * self.c) % p == 0:
            raise ValueError("linear part is singular")

    @classmethod
    def of(cls, modulus, a, b, c, d, u=0, v=0) -> AffineTransform:
        p = modulus.p
        return cls(modulus, a % p, b % p, c % p, d % p, u % p, v % p)

    @classmethod
    def identity(cls, modulus: PrimeModulus) -> AffineTransform:
        return cls(modulus, 1, 0, 0, 1, 0, 0)

    @classmethod
    def translation(cls, modulus: PrimeModulus, u: int, v: int) -> AffineTransform:
        return cls.of(modulus, 1, 0, 0, 1, u, v)

    def apply(self, pt: Point) -> Point:
        if pt.modulus != self.modulus:
            raise ValueError(f"modulus mismatch: {pt.modulus.p} vs {self.modulus.p}")
        p = self.modulus.p
        x, y = pt.x.value, pt.y.value
        return Point(
            self.modulus.element(self.a * x + self.b * y + self.u),
            self.modulus.element(self.c * x + self.d * y + self.v),
        )

    def compose(self, inner: AffineTransform) -> AffineTransform:
        """The transform applying inner first, then self."""
        if inner.modulus != self.modulus:
            raise ValueError("modulus mismatch")
        return AffineTransform.of(
            self.modulus,
            self.a * inner.a + self.b * inner.c,
            self.a * inner.b + self.b * inner.d,
            self.c * inner.a + self.d * inner.c,
            self.c * inner.b + self.d * inner.d,
            self.a * inner.u + self.b * inner.v + self.u,
            self.c * inner.u + self.d * inner.v + self.v,
        )

    def inverse(self) -> AffineTransform:
        p = self.modulus.p
        det_inv = pow((self.a * self.d - self.b * self.c) % p, -1, p)
        ia, ib = self.d * det_inv, -self.b * det_inv
        ic, id_ = -self.c * det_inv, self.a * det_inv
        return AffineTransform.of(
            self.modulus, ia, ib, ic, id_,
            -(ia * self.u + ib * self.v), -(ic * self.u + id_ * self.v),
        )


def apply_affine(h: PointSet, t: AffineTransform) -> PointSet:
    """The image point set; same cardinality since T is a bijection."""
    if h.modulus != t.modulus:
        raise ValueError(f"modulus mismatch: {h.modulus.p} vs {t.modulus.p}")
    return PointSet(h.modulus, frozenset(t.apply(pt) for pt in h.points))


def induced_direction_map(t: AffineTransform, c: Direction) -> Direction:
    """The projective action of T's linear part on a direction class."""
    m = t.modulus
    if c.is_vertical:
        dx, dy = t.b, t.d
    else:
        s = c.slope.value
        dx, dy = (t.a + t.b * s) % m.p, (t.c + t.d * s) % m.p
    if dx == 0:
        return Direction.vertical()
    return Direction(m.element(dy) / m.element(dx))


def canonical_cells(h: PointSet) -> tuple[int, ...]:
    """The lexicographically least sorted cell tuple over the affine orbit.

    Brute-force minimization over all p**2 (p**2 - 1)(p**2 - p) affine
    transforms; equal results characterize affine equivalence exactly.
    Guarded to p <= 13, beyond which the group is out of desk scale.
    """
    p = h.modulus.p
    if p > CANONICAL_FORM_MAX_P:
        raise GuardError(f"canonical forms are only enabled for p <= {CANONICAL_FORM_MAX_P}, got {p}")
    if not h.points:
        return ()
    from . import kernels

    return kernels.canonical_cells(h.cells(), p)


def cells_to_grid_hex(cells: Iterable[int], p: int) -> str:
    """Fixed-width hex of the p*p bit grid (bit i set iff cell i occupied)."""
    mask = 0
    for c in cells:
        mask |= 1 << c
    width = (p * p + 3) // 4
    return format(mask, f"0{width}x")


def canonical_form(h: PointSet) -> str:
    """Hex bit-grid serialization of the canonical orbit representative.

    Equal canonical forms hold iff the two sets are affinely equivalent.
    """
    return cells_to_grid_hex(canonical_cells(h), h.modulus.p)
