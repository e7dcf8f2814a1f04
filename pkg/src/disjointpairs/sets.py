"""Sets of nonnegative integers and the arithmetic that makes a pair "disjoint".

A pair of sets (A, B) is disjoint in the sense used throughout this package
when their difference sets share nothing but zero:

    (A - A) intersect (B - B) = {0}

which is the same as saying the sum map (a, b) -> a + b is injective on
A x B.  Such pairs obey two packing inequalities at every scale x, with
A(x) = |{a in A : a <= x}|:

  * product bound: A(x) * B(x) <= 2x + 1, because the sums a + b with
    a, b <= x are pairwise distinct and all lie in [0, 2x];
  * difference packing: the positive differences of A and of B, clipped to
    [1, x], are disjoint subsets of [1, x], so their counts add up to at
    most x.

Difference sets are materialized as big-int bitmaps (bit d set iff d is a
difference), which keeps membership, intersection and clipped counting cheap
for sets reaching into the millions.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

# Refuse to materialize difference bitmaps beyond this many bits (256 MiB).
MATERIALIZE_CAP = 1 << 31


class UncertifiedRegionError(ValueError):
    """A count or coverage query went past the region a set is certified on."""


class IntSet:
    """A finite set of nonnegative integers, complete on [0, limit].

    Elements are kept strictly increasing.  ``limit`` records how far the
    membership list is certified: queries beyond it would silently
    undercount, so they raise ``UncertifiedRegionError`` instead.
    """

    __slots__ = ("elems", "limit", "_diffs")

    def __init__(self, elems, limit: int | None = None):
        elems = [int(e) for e in elems]
        if elems and elems[0] < 0:
            raise ValueError("elements must be nonnegative")
        for a, b in zip(elems, elems[1:]):
            if a >= b:
                raise ValueError("elements must be strictly increasing")
        if limit is None:
            limit = elems[-1] if elems else 0
        limit = int(limit)
        if limit < 0:
            raise ValueError("limit must be nonnegative")
        if elems and elems[-1] > limit:
            raise ValueError(f"element {elems[-1]} exceeds limit {limit}")
        self.elems = elems
        self.limit = limit
        self._diffs = None

    @classmethod
    def from_values(cls, values, limit: int | None = None) -> "IntSet":
        """Build from any iterable, sorting and deduplicating."""
        return cls(sorted(set(values)), limit)

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x) -> bool:
        i = bisect.bisect_left(self.elems, x)
        return i < len(self.elems) and self.elems[i] == x

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntSet)
                and self.elems == other.elems and self.limit == other.limit)

    def __hash__(self):
        return hash((tuple(self.elems), self.limit))

    def __repr__(self) -> str:
        if len(self.elems) > 8:
            head = ", ".join(map(str, self.elems[:8]))
            body = f"[{head}, ...x{len(self.elems)}]"
        else:
            body = repr(self.elems)
        return f"IntSet({body}, limit={self.limit})"

    def count(self, x: int) -> int:
        """Number of elements <= x.  Raises past the certified limit."""
        if x > self.limit:
            raise UncertifiedRegionError(
                f"count at {x} exceeds certified limit {self.limit}")
        return bisect.bisect_right(self.elems, x)

    def mask(self) -> int:
        """Bitmap of the elements (bit e set iff e in the set)."""
        m = 0
        for e in self.elems:
            m |= 1 << e
        return m

    def to_json(self) -> dict:
        """JSON form with big integers rendered as decimal strings."""
        return {"limit": str(self.limit), "elems": [str(e) for e in self.elems]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntSet":
        if not isinstance(obj, dict) or "limit" not in obj or "elems" not in obj:
            raise ValueError("expected an object with 'limit' and 'elems'")
        return cls([int(e) for e in obj["elems"]], int(obj["limit"]))


@dataclass(frozen=True)
class DiffSet:
    """Difference set |s - t| of an IntSet, stored as a bitmap.

    ``bits`` has bit d set iff d is a difference of two elements; bit 0 is
    set whenever the source set is nonempty.  ``limit`` is the largest
    possible difference (the source maximum).
    """

    limit: int
    bits: int

    def __contains__(self, d) -> bool:
        return 0 <= d <= self.limit and (self.bits >> d) & 1 == 1

    def positive_count_up_to(self, x: int) -> int:
        """Number of positive differences <= x."""
        if x < 1:
            return 0
        clip = min(x, self.limit)
        return ((self.bits & ((1 << (clip + 1)) - 1)) >> 1).bit_count()

    def values(self) -> list[int]:
        """All differences in increasing order (0 included when nonempty)."""
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out


def count_up_to(s: IntSet, x: int) -> int:
    """A(x): number of elements of ``s`` not exceeding x."""
    return s.count(x)


def difference_set(s: IntSet) -> DiffSet:
    """All absolute differences of ``s``, as a bitmap.

    Cached on the set, since pairs get probed at many scales.  Refuses sets
    whose maximum exceeds the bitmap materialization cap.
    """
    if s._diffs is not None:
        return s._diffs
    top = s.elems[-1] if s.elems else 0
    if top > MATERIALIZE_CAP:
        raise ValueError(
            f"difference bitmap for maximum {top} exceeds cap {MATERIALIZE_CAP}")
    m = s.mask()
    bits = 0
    for e in s.elems:
        bits |= m >> e
    d = DiffSet(limit=top, bits=bits)
    s._diffs = d
    return d


def is_sidon(s: IntSet) -> bool:
    """True iff every positive difference arises from exactly one pair."""
    seen = set()
    elems = s.elems
    for i in range(1, len(elems)):
        for j in range(i):
            d = elems[i] - elems[j]
            if d in seen:
                return False
            seen.add(d)
    return True


def are_disjoint(a: IntSet, b: IntSet) -> bool:
    """True iff the difference sets of ``a`` and ``b`` meet only at zero.

    An empty side is disjoint from anything.  Note two sets may share one
    element (a shared element alone creates only the difference 0).
    """
    if not a.elems or not b.elems:
        return True
    return difference_set(a).bits & difference_set(b).bits == 1


def shared_difference(a: IntSet, b: IntSet) -> int | None:
    """Smallest positive difference common to both sets, or None."""
    if not a.elems or not b.elems:
        return None
    common = difference_set(a).bits & difference_set(b).bits & ~1
    if common == 0:
        return None
    return (common & -common).bit_length() - 1


def sum_coverage(a: IntSet, b: IntSet, x: int) -> int:
    """|{n in [0, 2x] : n = a' + b', a' <= x, b' <= x}|.

    For a disjoint pair this equals A(x) * B(x); any shortfall in the
    product bound shows up as uncovered sums.
    """
    if x > a.limit or x > b.limit:
        raise UncertifiedRegionError(
            f"sum coverage at {x} exceeds a certified limit "
            f"({a.limit}, {b.limit})")
    i = bisect.bisect_right(b.elems, x)
    bmask = 0
    for e in b.elems[:i]:
        bmask |= 1 << e
    if bmask == 0:
        return 0
    acc = 0
    for e in a.elems[:bisect.bisect_right(a.elems, x)]:
        acc |= bmask << e
    return acc.bit_count()


@dataclass(frozen=True)
class BoundsReport:
    """Outcome of the two packing inequalities for a pair at scale x."""

    x: int
    count_a: int
    count_b: int
    product: int
    product_bound: int
    product_margin: int
    diffs_a: int
    diffs_b: int
    packing_bound: int
    packing_margin: int
    disjoint: bool
    violations: tuple[str, ...]

    @property
    def product_ok(self) -> bool:
        return self.product_margin >= 0

    @property
    def packing_ok(self) -> bool:
        return self.packing_margin >= 0

    def ok(self) -> bool:
        return not self.violations


def pair_bounds_check(a: IntSet, b: IntSet, x: int) -> BoundsReport:
    """Check A(x)B(x) <= 2x + 1 and the difference packing bound at x.

    Margins report the slack; a failing inequality or a non-disjoint input
    is named in ``violations`` rather than raised, so callers can report
    what exactly broke.
    """
    if x > a.limit or x > b.limit:
        raise UncertifiedRegionError(
            f"bounds check at {x} exceeds a certified limit "
            f"({a.limit}, {b.limit})")
    ca = a.count(x)
    cb = b.count(x)
    product = ca * cb
    product_bound = 2 * x + 1
    da = difference_set(a).positive_count_up_to(x)
    db = difference_set(b).positive_count_up_to(x)
    disjoint = are_disjoint(a, b)
    violations = []
    if not disjoint:
        violations.append(f"shared difference {shared_difference(a, b)}")
    if product > product_bound:
        violations.append(f"product {product} > {product_bound} at x={x}")
    if da + db > x:
        violations.append(f"difference packing {da}+{db} > {x} at x={x}")
    return BoundsReport(
        x=x, count_a=ca, count_b=cb,
        product=product, product_bound=product_bound,
        product_margin=product_bound - product,
        diffs_a=da, diffs_b=db,
        packing_bound=x, packing_margin=x - da - db,
        disjoint=disjoint, violations=tuple(violations),
    )


def binomial_packing_check(a: IntSet, b: IntSet, x: int) -> bool | None:
    """C(A(x), 2) + C(B(x), 2) <= x, meaningful only for Sidon sides.

    When a side has repeated differences the binomial count overstates its
    distinct differences, so the inequality is not implied; returns None in
    that case instead of guessing.
    """
    if not (is_sidon(a) and is_sidon(b)):
        return None
    ca = a.count(x)
    cb = b.count(x)
    return ca * (ca - 1) // 2 + cb * (cb - 1) // 2 <= x
