"""Exhaustive and branch-and-bound search for extremal disjoint pairs in [0, n].

A pair (A, B) of subsets of {0, ..., n} is disjoint when the positive
differences of A and of B have no value in common.  Three objectives are
searched: the product |A| * |B|, the balance min(|A|, |B|) and the total
|A| + |B|.

All three are invariant under translating either side and under swapping
the sides, so the search runs over canonical pairs: each nonempty side is
translated to start at 0 (hence both sides contain 0; note a shared element
alone only contributes the difference 0) and the two sides are ordered
lexicographically.  Pairs with an empty side are tracked as explicit
candidates.  Setting ``canonicalize=False`` searches the raw pair space
instead, which is exponentially wasteful but validates that the reduction
loses nothing.

Packing facts prune the tree: all positive differences of both sides fit
disjointly in [1, n], and a side with s elements has at least s - 1 distinct
positive differences, so |A| + |B| <= n + 2 and |A| * |B| <= 2n + 1 for
every disjoint pair in [0, n].

Reported witnesses are the lexicographically least optimal canonical pair,
identical across engines and worker counts; node and prune statistics are
likewise worker-invariant because subtree tasks never exchange incumbents
(each starts from the greedy seed value).
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .sets import IntSet

# Exhaustive enumeration refuses universes beyond this size outright; in
# practice it is pleasant up to n around 14 and hopeless well before 26.
EXHAUSTIVE_LIMIT = 26


class Objective(enum.Enum):
    MAX_PRODUCT = "product"
    MAX_MIN = "min"
    MAX_SUM = "sum"


@dataclass(frozen=True)
class SearchProblem:
    n: int
    objective: Objective
    canonicalize: bool = True


@dataclass(frozen=True)
class SearchResult:
    n: int
    objective: Objective
    value: int
    optimal: bool
    witnesses: tuple[tuple[IntSet, IntSet], ...]
    stats: dict = field(compare=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "objective": self.objective.value,
            "value": self.value,
            "optimal": self.optimal,
            "witnesses": [{"a": a.to_json(), "b": b.to_json()}
                          for a, b in self.witnesses],
            "stats": dict(self.stats),
        }


def _value(obj: Objective, sa: int, sb: int) -> int:
    if obj is Objective.MAX_PRODUCT:
        return sa * sb
    if obj is Objective.MAX_MIN:
        return sa if sa < sb else sb
    return sa + sb


def canonical_pair(a_elems, b_elems) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Translate each side to start at 0 and order the sides."""
    a_elems = tuple(a_elems)
    b_elems = tuple(b_elems)
    ta = tuple(e - a_elems[0] for e in a_elems) if a_elems else ()
    tb = tuple(e - b_elems[0] for e in b_elems) if b_elems else ()
    return (ta, tb) if ta <= tb else (tb, ta)


def _mask_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _diff_bits(elems) -> int:
    """Bitmap of the positive pairwise differences."""
    bits = 0
    for i in range(1, len(elems)):
        ei = elems[i]
        for j in range(i):
            bits |= 1 << (ei - elems[j])
    return bits


def _new_diffs(elems, x: int) -> int:
    """Positive differences created by appending x (> max) to a sorted side."""
    bits = 0
    for e in elems:
        bits |= 1 << (x - e)
    return bits


def _result(problem: SearchProblem, value: int, witness, stats) -> SearchResult:
    wa, wb = witness
    return SearchResult(
        n=problem.n, objective=problem.objective, value=int(value),
        optimal=True,
        witnesses=((IntSet(wa, problem.n), IntSet(wb, problem.n)),),
        stats=stats)


# ---------------------------------------------------------------------------
# exhaustive engine

def _canonical_universe(n: int):
    """Empty set plus every 0-containing subset of [0, n], in lex order."""
    tuples = sorted(_mask_tuple((m << 1) | 1) for m in range(1 << n))
    return [()] + tuples


def exhaustive_search(problem: SearchProblem) -> SearchResult:
    """Check every pair of subsets, reduced to the canonical universe.

    With ``canonicalize=False`` the value is computed over the raw universe
    of all subsets; the reported witness is canonical either way, so the two
    modes must agree exactly (that equality is the point of the raw mode).
    """
    n, obj = problem.n, problem.objective
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(
            f"exhaustive search refuses n = {n} > {EXHAUSTIVE_LIMIT}; "
            f"use branch_and_bound")

    canon = _canonical_universe(n)
    if problem.canonicalize:
        universes = {"value": canon, "witness": canon}
    else:
        raw = sorted(_mask_tuple(m) for m in range(1 << (n + 1)))
        universes = {"value": raw, "witness": canon}

    def arrays(tuples):
        dm = np.array([_diff_bits(t) for t in tuples], dtype=np.int64)
        sz = np.array([len(t) for t in tuples], dtype=np.int64)
        return dm, sz

    def row_values(sz_i, partner_sz):
        if obj is Objective.MAX_PRODUCT:
            return sz_i * partner_sz
        if obj is Objective.MAX_MIN:
            return np.minimum(sz_i, partner_sz)
        return sz_i + partner_sz

    dm, sz = arrays(universes["value"])
    count = len(dm)
    chunk = max(1, (1 << 22) // count)
    best = 0
    for i0 in range(0, count, chunk):
        compat = (dm[i0:i0 + chunk, None] & dm[None, :]) == 0
        partner = np.where(compat, sz[None, :], -1).max(axis=1)
        best = max(best, int(row_values(sz[i0:i0 + chunk], partner).max()))

    wt = universes["witness"]
    wdm, wsz = (dm, sz) if problem.canonicalize else arrays(wt)
    witness = None
    for i, t in enumerate(wt):
        compat = (wdm & wdm[i]) == 0
        hits = np.nonzero(compat & (row_values(int(wsz[i]), wsz) == best))[0]
        hits = hits[hits >= i]  # partner must not precede in lex order
        if hits.size:
            witness = (t, wt[int(hits[0])])
            break
    stats = {"engine": "exhaustive", "subsets": count,
             "pairs_checked": count * count}
    return _result(problem, best, witness, stats)


# ---------------------------------------------------------------------------
# branch and bound

def greedy_pair(n: int, objective: Objective | None = None) -> tuple[IntSet, IntSet]:
    """Deterministic greedy pair on [0, n]: each element joined to the
    currently smaller side when feasible (ties to A), else the other side,
    else skipped.  Balanced growth gives a decent incumbent for all three
    objectives, which is its whole job; nothing about it is optimal.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = [0], [0]
    da = db = 0
    for x in range(1, n + 1):
        nda = _new_diffs(a, x)
        ndb = _new_diffs(b, x)
        if len(a) <= len(b):
            order = (("a", nda, db), ("b", ndb, da))
        else:
            order = (("b", ndb, da), ("a", nda, db))
        for side, nd, other in order:
            if nd & other == 0:
                if side == "a":
                    a.append(x)
                    da |= nd
                else:
                    b.append(x)
                    db |= nd
                break
    return IntSet(a, n), IntSet(b, n)


def _global_cap(obj: Objective, n: int) -> int:
    if obj is Objective.MAX_PRODUCT:
        return 2 * n + 1
    if obj is Objective.MAX_MIN:
        return (n + 2) // 2
    return n + 2


def _best_split_product(sa: int, sb: int, t: int) -> int:
    cands = {0, t}
    v = (t + sb - sa) // 2
    for tv in (v, v + 1):
        if 0 <= tv <= t:
            cands.add(tv)
    return max((sa + ta) * (sb + t - ta) for ta in cands)


def _upper_bound(obj: Objective, sa: int, sb: int, t: int, cap: int) -> int:
    """Best conceivable objective after at most t further insertions."""
    if obj is Objective.MAX_SUM:
        ub = sa + sb + t
    elif obj is Objective.MAX_MIN:
        ub = min(sa + t, sb + t, (sa + sb + t) // 2)
    else:
        ub = _best_split_product(sa, sb, t)
    return ub if ub < cap else cap


@dataclass
class _Node:
    a: tuple[int, ...]
    b: tuple[int, ...]
    da: int
    db: int
    next_elem: int
    virgin: bool  # no element beyond the seeds assigned yet (symmetry break)


def _allowance(n: int, sa: int, sb: int, pa: int, pb: int,
               remaining: int, full: bool) -> int:
    """How many more insertions the difference budget permits.

    A side of final size s has at least s - 1 distinct positive differences
    and all of them, over both sides, pack disjointly in [1, n].  With both
    seeds nonempty every insertion costs at least one fresh difference; an
    empty side gets its first element for free.
    """
    budget = n - pa - pb
    if full:
        budget += (sa == 0) + (sb == 0)
        room = 2 * remaining  # an element may join both sides at most once
    else:
        room = remaining
    t = budget if budget < room else room
    return t if t > 0 else 0


def _explore(n: int, obj: Objective, root: _Node, incumbent: int,
             full: bool):
    """Depth-first search below one subtree root.

    Prunes strictly below the incumbent, so ties at the optimum survive and
    the lexicographically least witness is exact.  Never reads anything
    mutable from outside: results are a pure function of the root, which is
    what makes multi-worker runs reproducible.
    """
    stats = {"nodes": 0, "leaves": 0, "pruned_bound": 0, "pruned_conflict": 0}
    cap = _global_cap(obj, n)
    best = incumbent
    witness = None
    a = list(root.a)
    b = list(root.b)

    def rec(da: int, db: int, e: int, virgin: bool):
        nonlocal best, witness
        stats["nodes"] += 1
        if e > n:
            stats["leaves"] += 1
            v = _value(obj, len(a), len(b))
            if v < best:
                return
            cand = canonical_pair(a, b) if full else (
                (tuple(a), tuple(b)) if tuple(a) <= tuple(b)
                else (tuple(b), tuple(a)))
            if v > best:
                best = v
                witness = cand
            elif witness is None or cand < witness:
                witness = cand
            return
        t = _allowance(n, len(a), len(b), da.bit_count(), db.bit_count(),
                       n - e + 1, full)
        if _upper_bound(obj, len(a), len(b), t, cap) < best:
            stats["pruned_bound"] += 1
            return
        nda = _new_diffs(a, e)
        ndb = _new_diffs(b, e)
        if nda & db == 0:
            a.append(e)
            rec(da | nda, db, e + 1, False)
            a.pop()
        else:
            stats["pruned_conflict"] += 1
        if not virgin or full:
            if ndb & da == 0:
                b.append(e)
                rec(da, db | ndb, e + 1, False)
                b.pop()
            else:
                stats["pruned_conflict"] += 1
        if full:
            if nda & db == 0 and ndb & da == 0 and nda & ndb == 0:
                a.append(e)
                b.append(e)
                rec(da | nda, db | ndb, e + 1, False)
                a.pop()
                b.pop()
            else:
                stats["pruned_conflict"] += 1
        rec(da, db, e + 1, virgin)

    rec(root.da, root.db, root.next_elem, root.virgin)
    return best, witness, stats


def _expand_roots(n: int, obj: Objective, incumbent: int, depth: int,
                  full: bool):
    """Enumerate the assignment prefixes down to ``depth`` as subtree roots.

    Leaves met on the way (when n < depth) are folded into a prefix result
    of the same shape as a task result.
    """
    roots: list[_Node] = []
    stats = {"nodes": 0, "leaves": 0, "pruned_bound": 0, "pruned_conflict": 0}
    cap = _global_cap(obj, n)
    best = incumbent
    witness = None
    a: list[int] = []
    b: list[int] = []
    start = 0 if full else 1
    if not full:
        a.append(0)
        b.append(0)

    def rec(da: int, db: int, e: int, virgin: bool):
        nonlocal best, witness
        if e > n:
            stats["leaves"] += 1
            v = _value(obj, len(a), len(b))
            if v < best:
                return
            cand = canonical_pair(a, b)
            if v > best:
                best, witness = v, cand
            elif witness is None or cand < witness:
                witness = cand
            return
        if e - start >= depth:
            roots.append(_Node(tuple(a), tuple(b), da, db, e, virgin))
            return
        stats["nodes"] += 1
        t = _allowance(n, len(a), len(b), da.bit_count(), db.bit_count(),
                       n - e + 1, full)
        if _upper_bound(obj, len(a), len(b), t, cap) < best:
            stats["pruned_bound"] += 1
            return
        nda = _new_diffs(a, e)
        ndb = _new_diffs(b, e)
        if nda & db == 0:
            a.append(e)
            rec(da | nda, db, e + 1, False)
            a.pop()
        if not virgin or full:
            if ndb & da == 0:
                b.append(e)
                rec(da, db | ndb, e + 1, False)
                b.pop()
        if full and nda & db == 0 and ndb & da == 0 and nda & ndb == 0:
            a.append(e)
            b.append(e)
            rec(da | nda, db | ndb, e + 1, False)
            a.pop()
            b.pop()
        rec(da, db, e + 1, virgin)

    rec(0, 0, start, True)
    return roots, (best, witness, stats)


def branch_and_bound(problem: SearchProblem, workers: int = 1,
                     split_depth: int = 3) -> SearchResult:
    """Optimal pair by depth-first search with packing-bound pruning.

    The tree assigns elements in increasing order to side A, side B or
    neither (plus "both" in the raw-space mode).  Subtrees at ``split_depth``
    become independent tasks; every task starts from the greedy seed value
    and never hears about other tasks' finds, so value, witness and even the
    statistics are identical whatever ``workers`` is.
    """
    n, obj = problem.n, problem.objective
    if n < 0:
        raise ValueError("n must be nonnegative")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    full = not problem.canonicalize
    ga, gb = greedy_pair(n)
    incumbent = _value(obj, len(ga), len(gb))
    roots, prefix = _expand_roots(n, obj, incumbent, max(split_depth, 0), full)

    if workers == 1 or len(roots) < 2:
        parts = [_explore(n, obj, r, incumbent, full) for r in roots]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda r: _explore(n, obj, r, incumbent, full), roots))
    parts.append(prefix)

    candidates = []
    if not full:
        top = tuple(range(n + 1))
        candidates = [(_value(obj, 0, n + 1), ((), top)),
                      (_value(obj, 0, 0), ((), ()))]
    best = max(max(p[0] for p in parts),
               max((v for v, _ in candidates), default=0))
    pool_wits = [p[1] for p in parts if p[0] == best and p[1] is not None]
    pool_wits += [w for v, w in candidates if v == best]
    witness = min(pool_wits)

    stats = {"engine": "branch-and-bound", "tasks": len(roots),
             "greedy_start": incumbent}
    for key in ("nodes", "leaves", "pruned_bound", "pruned_conflict"):
        stats[key] = sum(p[2][key] for p in parts)
    return _result(problem, best, witness, stats)
