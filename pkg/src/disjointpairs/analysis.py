"""Counting profiles of disjoint pairs and the extreme values they chase.

For a disjoint pair (A, B) with counting functions A(x), B(x), two scale
invariants are tracked:

  * product ratio   A(x) * B(x) / x, whose limsup ("sp") is at most 2;
  * balance ratio   min(A(x), B(x)) / sqrt(x), whose liminf ("in") is at
    most 1.

The base-k pair realizes sp = 2(k+1)/(k+2) and in = 1/sqrt(k) in closed
form, which places its points on the frontier curve
quotient = in / sqrt(2 - sp) = sqrt((k+2)/(2k)); the base-2 pair sits at
quotient exactly 1.  The two values also constrain each other globally:

    in^6 / (in^2 + 8) <= 64 * (2 - sp)

and, weaker but radical-free, in^6 <= 576 * (2 - sp).  Both are checked in
exact rational arithmetic via in^2.

Balance ratios are evaluated in decimal arithmetic at 28 significant digits
(well past a 64-bit mantissa) so that profile files are reproducible to the
byte across platforms.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .mixedradix import EVEN, GROWTH, MixedRadixSpec, _extend_places, side_max_below
from .sets import UncertifiedRegionError

DECIMAL_PRECISION = 28
DISPLAY_DIGITS = 12


def dec_sqrt(value: Fraction) -> Decimal:
    """Square root of an exact rational, at working precision."""
    with localcontext() as ctx:
        ctx.prec = DECIMAL_PRECISION
        return (Decimal(value.numerator) / Decimal(value.denominator)).sqrt()


def dec_str(d: Decimal, sig: int = DISPLAY_DIGITS) -> str:
    """Deterministic rendering at ``sig`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = sig
        return str(+d)


@dataclass(frozen=True)
class ProfileRow:
    x: int
    count_a: int
    count_b: int
    product_ratio: Fraction
    in_ratio: Decimal


@dataclass(frozen=True)
class PairProfile:
    rows: tuple[ProfileRow, ...]

    def __len__(self) -> int:
        return len(self.rows)


def _profile_rows(a, b, points) -> list[ProfileRow]:
    rows = []
    with localcontext() as ctx:
        ctx.prec = DECIMAL_PRECISION
        for x in points:
            ca = a.count(x)
            cb = b.count(x)
            rows.append(ProfileRow(
                x=x, count_a=ca, count_b=cb,
                product_ratio=Fraction(ca * cb, x),
                in_ratio=Decimal(min(ca, cb)) / Decimal(x).sqrt(),
            ))
    return rows


def profile(counters, grid, workers: int = 1) -> PairProfile:
    """Evaluate both counters on a grid of scales.

    ``counters`` is any (a, b) exposing ``count(x)`` and ``limit``: a pair
    of materialized sets, or digit-walk views for scales too large to
    enumerate.  Rows are independent, so they may be computed by a worker
    pool; the result is ordered by x either way.
    """
    a, b = counters
    points = sorted({int(x) for x in grid})
    if not points:
        return PairProfile(())
    if points[0] < 1:
        raise ValueError("grid points must be >= 1")
    top = min(a.limit, b.limit)
    if points[-1] > top:
        raise UncertifiedRegionError(
            f"grid reaches {points[-1]} past certified limit {top}")
    if workers <= 1 or len(points) < 2 * workers:
        rows = _profile_rows(a, b, points)
    else:
        step = (len(points) + workers - 1) // workers
        chunks = [points[i:i + step] for i in range(0, len(points), step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _profile_rows(a, b, c), chunks))
        rows = [r for part in parts for r in part]
    return PairProfile(tuple(rows))


def sp_estimate(prof: PairProfile) -> Fraction:
    """Largest product ratio seen on the grid (finite-scale stand-in for sp)."""
    if not prof.rows:
        raise ValueError("profile has no rows")
    return max(r.product_ratio for r in prof.rows)


def in_estimate(prof: PairProfile, tail_start: int = 0) -> Decimal:
    """Smallest balance ratio over rows with x >= tail_start.

    The head of a profile reflects startup artifacts, not the liminf, so
    callers name the tail they trust.
    """
    tail = [r.in_ratio for r in prof.rows if r.x >= tail_start]
    if not tail:
        raise ValueError(f"no profile rows at or past {tail_start}")
    return min(tail)


# ---------------------------------------------------------------------------
# grids

def geometric_grid(lo: int, hi: int, ratio=Fraction(21, 20)) -> list[int]:
    """Integer grid from lo to hi with roughly constant ratio between points.

    The ratio is taken as an exact fraction (floats go through their decimal
    string) so the grid is identical on every platform.
    """
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    if not isinstance(ratio, Fraction):
        ratio = Fraction(str(ratio)) if isinstance(ratio, float) else Fraction(ratio)
    if ratio <= 1:
        raise ValueError("ratio must exceed 1")
    out = []
    x = lo
    while x < hi:
        out.append(x)
        x = max(x + 1, (x * ratio.numerator) // ratio.denominator)
    out.append(hi)
    return out


def power_grid(base: int, lo: int, hi: int) -> list[int]:
    """Anchors {base^m - 1, base^m} clipped to [lo, hi].

    Pure powers sit just after a counting jump and their predecessors sit at
    the end of a counting plateau, which is exactly where the product ratio
    peaks and the balance ratio dips for digit-system pairs.
    """
    if base < 2:
        raise ValueError("base must be >= 2")
    out = set()
    p = base
    while p <= hi:
        for v in (p - 1, p):
            if lo <= v <= hi:
                out.add(v)
        p *= base
    return sorted(out)


def probe_grid(spec: MixedRadixSpec, lo: int, hi: int, rule=GROWTH) -> list[int]:
    """Probe anchors {y_k, 2 y_k} of a digit-system pair, clipped to [lo, hi].

    The spec is extended by ``rule`` (a copy; pass the base itself for a
    uniform family) as far as the window requires.
    """
    out = set()
    k = 1
    while True:
        spec = _extend_places(spec, 2 * k + 1, rule)
        y = side_max_below(spec, EVEN, 2 * k) + spec.places[2 * k]
        if y > hi:
            break
        for v in (y, 2 * y):
            if lo <= v <= hi:
                out.add(v)
        k += 1
    return sorted(out)


def merge_grids(*grids) -> list[int]:
    out = set()
    for g in grids:
        out.update(int(x) for x in g)
    return sorted(out)


# ---------------------------------------------------------------------------
# scans around a near-peak anchor

@dataclass(frozen=True)
class ScanRow:
    c: Fraction
    point: int
    count_a: int
    count_b: int
    norm: Fraction


@dataclass(frozen=True)
class ScanResult:
    anchor: int
    rows: tuple[ScanRow, ...]
    half_a: Fraction
    half_b: Fraction


def scaled_ratio_scan(counters, anchor: int, c_grid) -> ScanResult:
    """Counts at scaled points floor(c * anchor) around a near-peak anchor.

    The anchor is a caller-certified point where the product ratio is close
    to 2.  Rows normalize by the scaled point itself for c < 1 and by the
    anchor for c >= 1: when the ratio at the anchor is near 2, the former
    stays near 1 below the anchor and the latter tracks how much of the
    anchor's product survives above it.  The half-point count ratios
    A(anchor/2)/A(anchor) and B(anchor/2)/B(anchor) come along because one
    of the two sides must thin out below any near-peak anchor.
    """
    a, b = counters
    if anchor < 2:
        raise ValueError("anchor must be >= 2")
    rows = []
    for c in c_grid:
        c = Fraction(c)
        y = (c.numerator * anchor) // c.denominator
        if y < 1:
            raise ValueError(f"scaled point for c={c} falls below 1")
        ca = a.count(y)
        cb = b.count(y)
        denom = y if c < 1 else anchor
        rows.append(ScanRow(c=c, point=y, count_a=ca, count_b=cb,
                            norm=Fraction(ca * cb, denom)))
    ca_anchor = a.count(anchor)
    cb_anchor = b.count(anchor)
    if ca_anchor == 0 or cb_anchor == 0:
        raise ValueError("anchor has an empty side; not a near-peak point")
    return ScanResult(
        anchor=anchor, rows=tuple(rows),
        half_a=Fraction(a.count(anchor // 2), ca_anchor),
        half_b=Fraction(b.count(anchor // 2), cb_anchor),
    )


def slow_growth_flags(prof: PairProfile, near=Fraction(19, 10),
                      min_growth=Fraction(2)) -> list[str]:
    """Flag near-2 product ratios at consecutive slowly-spaced scales.

    Ratios can hug 2 only along sparse, fast-growing scales; if two grid
    points within a factor of ``min_growth`` both show a ratio >= ``near``,
    that pattern is worth a human look.  Observational only: the flags are
    reported, never asserted, since a dense grid near one genuine peak can
    trip this too.
    """
    near = Fraction(near)
    min_growth = Fraction(min_growth)
    hot = [r.x for r in prof.rows if r.product_ratio >= near]
    notes = []
    for x1, x2 in zip(hot, hot[1:]):
        if Fraction(x2, x1) < min_growth:
            notes.append(
                f"product ratio >= {near} at both {x1} and {x2} "
                f"(growth {x2}/{x1} < {min_growth})")
    return notes


# ---------------------------------------------------------------------------
# interval decomposition

@dataclass(frozen=True)
class IntervalMatrix:
    """Counts of both sides on an equal partition of (0, span * x].

    ``a_counts[i]`` is the number of A-elements in (boundaries[i],
    boundaries[i+1]]; zero itself is reported separately.  The pairwise
    products say which interval combinations can contribute sums near a
    given scale; at probe points the top intervals of one side empty out,
    which is what caps the ratio at 2x by 3/2.
    """

    x: int
    span: Fraction
    parts: int
    boundaries: tuple[int, ...]
    zero_a: int
    zero_b: int
    a_counts: tuple[int, ...]
    b_counts: tuple[int, ...]

    def product(self, i: int, j: int) -> int:
        return self.a_counts[i] * self.b_counts[j]


def interval_matrix(counters, x: int, parts: int = 4, span=Fraction(2)) -> IntervalMatrix:
    """Split (0, span * x] into equal intervals and count both sides."""
    a, b = counters
    if x < 1 or parts < 1:
        raise ValueError("need x >= 1 and parts >= 1")
    span = Fraction(span)
    bounds = tuple((span.numerator * x * i) // (span.denominator * parts)
                   for i in range(parts + 1))
    ca = [a.count(t) for t in bounds]
    cb = [b.count(t) for t in bounds]
    return IntervalMatrix(
        x=x, span=span, parts=parts, boundaries=bounds,
        zero_a=a.count(0), zero_b=b.count(0),
        a_counts=tuple(ca[i + 1] - ca[i] for i in range(parts)),
        b_counts=tuple(cb[i + 1] - cb[i] for i in range(parts)),
    )


# ---------------------------------------------------------------------------
# (sp, in) points, gap bounds, frontier

CLOSED_FORM = "closed-form"
ESTIMATED = "estimated"


@dataclass(frozen=True)
class SpInPoint:
    """A pair family's (sp, in) location, carried as exact rationals.

    ``in_sq`` holds in^2 so closed forms like 1/k stay exact; ``source``
    says whether the numbers are closed forms or finite-scale estimates.
    """

    family: str
    sp: Fraction
    in_sq: Fraction
    source: str = CLOSED_FORM


def base_k_point(k: int) -> SpInPoint:
    """Closed-form point of the base-k pair: sp = 2(k+1)/(k+2), in^2 = 1/k."""
    if k < 2:
        raise ValueError("base must be >= 2")
    return SpInPoint(family=f"base-{k}", sp=Fraction(2 * (k + 1), k + 2),
                     in_sq=Fraction(1, k), source=CLOSED_FORM)


def pow2_point() -> SpInPoint:
    """The base-2 pair under its usual name."""
    p = base_k_point(2)
    return SpInPoint(family="pow2", sp=p.sp, in_sq=p.in_sq, source=CLOSED_FORM)


def point_from_profile(family: str, prof: PairProfile,
                       tail_start: int = 0) -> SpInPoint:
    """Finite-scale (sp, in) estimates from a profile, kept exact.

    in^2 is minimized as the exact rational min(A, B)^2 / x, so the gap
    bounds can still be checked without rounding; the point is tagged as
    estimated and downstream checks stay advisory.
    """
    if not prof.rows:
        raise ValueError("profile has no rows")
    tail = [r for r in prof.rows if r.x >= tail_start]
    if not tail:
        raise ValueError(f"no profile rows at or past {tail_start}")
    return SpInPoint(
        family=family,
        sp=max(r.product_ratio for r in prof.rows),
        in_sq=min(Fraction(min(r.count_a, r.count_b) ** 2, r.x) for r in tail),
        source=ESTIMATED,
    )


@dataclass(frozen=True)
class GapReport:
    """One inequality between in and the gap 2 - sp, checked exactly."""

    point: SpInPoint
    lhs: Fraction
    rhs: Fraction
    holds: bool
    advisory: bool

    def describe(self) -> str:
        tag = "advisory " if self.advisory else ""
        verdict = "holds" if self.holds else "VIOLATED"
        return (f"{self.point.family}: {tag}{verdict} "
                f"({self.lhs} <= {self.rhs})")


def gap_bound_check(point: SpInPoint) -> GapReport:
    """Check in^6 / (in^2 + 8) <= 64 * (2 - sp), exactly via in^2.

    For estimated points the verdict is advisory: finite-scale numbers can
    sit on either side of an asymptotic inequality.
    """
    lhs = point.in_sq ** 3 / (point.in_sq + 8)
    rhs = 64 * (2 - point.sp)
    return GapReport(point=point, lhs=lhs, rhs=rhs, holds=lhs <= rhs,
                     advisory=point.source == ESTIMATED)


def root_bound_check(point: SpInPoint) -> GapReport:
    """Check in <= 2 * 3^(1/3) * (2 - sp)^(1/6), via in^6 <= 576 * (2 - sp).

    Radical-free consequence of the gap bound (the sixth power of
    2 * 3^(1/3) is 576), so it can be verified in integers.
    """
    lhs = point.in_sq ** 3
    rhs = 576 * (2 - point.sp)
    return GapReport(point=point, lhs=lhs, rhs=rhs, holds=lhs <= rhs,
                     advisory=point.source == ESTIMATED)


@dataclass(frozen=True)
class FrontierRow:
    family: str
    gap: Fraction
    in_value: Decimal
    quotient: Decimal
    source: str


def frontier(points) -> tuple[FrontierRow, ...]:
    """Tabulate (2 - sp, in, in / sqrt(2 - sp)) for each point.

    The quotient measures how close a family comes to the best possible
    trade between a large in and a small gap; base-k gives
    sqrt((k+2)/(2k)), exactly 1 at k = 2.  A point with in = 0 gets
    quotient 0 by convention.  Gap 0 with in > 0 is impossible in the
    limit, so it raises for closed-form points; finite-scale estimates hit
    it all the time (an optimal pair on [0, n] has product exactly 2n) and
    get an infinite quotient instead.
    """
    rows = []
    for p in points:
        gap = 2 - p.sp
        if p.in_sq == 0:
            quotient = Decimal(0)
        elif gap == 0:
            if p.source == CLOSED_FORM:
                raise ValueError(f"{p.family}: gap 0 with in > 0")
            quotient = Decimal("Infinity")
        else:
            quotient = dec_sqrt(p.in_sq / gap)
        rows.append(FrontierRow(
            family=p.family, gap=gap, in_value=dec_sqrt(p.in_sq),
            quotient=quotient, source=p.source))
    return tuple(rows)
