"""Core set arithmetic against brute-force oracles.

Every nontrivial quantity (difference sets, clipped counts, sum coverage,
disjointness) is recomputed here by direct enumeration over small random
instances; the library must match the oracle exactly.
"""

import random

import pytest

from disjointpairs.sets import (MATERIALIZE_CAP, IntSet, UncertifiedRegionError,
                                are_disjoint, binomial_packing_check,
                                count_up_to, difference_set, is_sidon,
                                pair_bounds_check, shared_difference,
                                sum_coverage)


# ---------------------------------------------------------------------------
# oracles: straight enumeration, no cleverness

def brute_diffs(elems):
    return {a - b for a in elems for b in elems if a >= b}


def brute_positive_diffs(elems):
    return brute_diffs(elems) - {0}


def brute_disjoint(ea, eb):
    if not ea or not eb:
        return True
    return not (brute_positive_diffs(ea) & brute_positive_diffs(eb))


def brute_sum_injective(ea, eb):
    sums = [a + b for a in ea for b in eb]
    return len(sums) == len(set(sums))


def brute_sidon(elems):
    diffs = [b - a for i, a in enumerate(elems) for b in elems[i + 1:]]
    return len(diffs) == len(set(diffs))


def random_subset(rng, top, density=0.3):
    return sorted(e for e in range(top + 1) if rng.random() < density)


def random_disjoint_pair(rng, n):
    """Greedy random assembly: offer each element to a random side."""
    a, b = [0], [0]
    for x in range(1, n + 1):
        first, second = ([a, b] if rng.random() < 0.5 else [b, a])
        for side in (first, second):
            other = b if side is a else a
            nd = {x - e for e in side}
            if not (nd & brute_positive_diffs(other)):
                side.append(x)
                break
    a.sort()
    b.sort()
    assert brute_disjoint(a, b)
    return a, b


# ---------------------------------------------------------------------------
# IntSet basics

def test_intset_validation():
    with pytest.raises(ValueError):
        IntSet([-1, 0])
    with pytest.raises(ValueError):
        IntSet([0, 0, 1])
    with pytest.raises(ValueError):
        IntSet([3, 2])
    with pytest.raises(ValueError):
        IntSet([0, 5], limit=4)
    s = IntSet([0, 2, 7])
    assert s.limit == 7
    assert IntSet([]).limit == 0
    assert IntSet.from_values([5, 1, 5, 3]).elems == [1, 3, 5]


def test_intset_queries_match_enumeration():
    rng = random.Random(9001)
    for _ in range(50):
        top = rng.randrange(1, 60)
        elems = random_subset(rng, top)
        s = IntSet(elems, top)
        assert len(s) == len(elems)
        assert list(s) == elems
        for x in range(top + 1):
            assert count_up_to(s, x) == sum(1 for e in elems if e <= x)
            assert (x in s) == (x in set(elems))
        with pytest.raises(UncertifiedRegionError):
            s.count(top + 1)


def test_intset_json_round_trip():
    s = IntSet([0, 3, 2 ** 70], limit=2 ** 70 + 5)
    obj = s.to_json()
    assert obj["elems"][-1] == str(2 ** 70)  # big ints as decimal strings
    assert IntSet.from_json(obj) == s
    with pytest.raises(ValueError):
        IntSet.from_json({"elems": ["1"]})


# ---------------------------------------------------------------------------
# difference sets

def test_difference_set_matches_enumeration():
    rng = random.Random(4242)
    for _ in range(60):
        elems = random_subset(rng, rng.randrange(1, 80))
        s = IntSet(elems) if elems else IntSet([])
        d = difference_set(s)
        expected = sorted(brute_diffs(elems))
        assert d.values() == expected
        top = elems[-1] if elems else 0
        for x in [-1, 0, 1, top // 2, top, top + 5]:
            want = sum(1 for v in expected if 0 < v <= x)
            assert d.positive_count_up_to(x) == want, (elems, x)
        for v in range(top + 2):
            assert (v in d) == (v in brute_diffs(elems))


def test_difference_set_is_cached_and_capped():
    s = IntSet([0, 1, 5])
    assert difference_set(s) is difference_set(s)
    huge = IntSet([0, MATERIALIZE_CAP + 1])
    with pytest.raises(ValueError):
        difference_set(huge)


def test_is_sidon_matches_enumeration():
    rng = random.Random(777)
    assert is_sidon(IntSet([]))
    assert is_sidon(IntSet([0, 1, 3]))
    assert not is_sidon(IntSet([0, 1, 2]))  # difference 1 twice
    for _ in range(80):
        elems = random_subset(rng, rng.randrange(1, 40), density=0.35)
        s = IntSet(elems) if elems else IntSet([])
        assert is_sidon(s) == brute_sidon(elems), elems


# ---------------------------------------------------------------------------
# disjointness

def test_are_disjoint_matches_enumeration():
    rng = random.Random(2024)
    agree = disagree = 0
    for _ in range(200):
        ea = random_subset(rng, rng.randrange(1, 30), density=0.25)
        eb = random_subset(rng, rng.randrange(1, 30), density=0.25)
        a = IntSet(ea)
        b = IntSet(eb)
        want = brute_disjoint(ea, eb)
        assert are_disjoint(a, b) == want, (ea, eb)
        if want:
            agree += 1
            assert shared_difference(a, b) is None
        else:
            disagree += 1
            d = shared_difference(a, b)
            assert d is not None and d > 0
            assert d in brute_positive_diffs(ea) & brute_positive_diffs(eb)
            assert d == min(brute_positive_diffs(ea) & brute_positive_diffs(eb))
    # the sample must exercise both outcomes or the test proves nothing
    assert agree > 10 and disagree > 10


def test_disjoint_iff_sum_map_injective():
    # the defining equivalence: (A-A) meet (B-B) = {0}  <=>  a+b all distinct
    rng = random.Random(515)
    for _ in range(150):
        ea = random_subset(rng, rng.randrange(1, 25), density=0.3)
        eb = random_subset(rng, rng.randrange(1, 25), density=0.3)
        if not ea or not eb:
            continue
        assert are_disjoint(IntSet(ea), IntSet(eb)) == brute_sum_injective(ea, eb)


def test_empty_and_shared_element_edge_cases():
    assert are_disjoint(IntSet([]), IntSet([0, 1, 2]))
    assert are_disjoint(IntSet([]), IntSet([]))
    # sharing one element only contributes the difference 0
    assert are_disjoint(IntSet([0, 1]), IntSet([0, 2]))
    assert not are_disjoint(IntSet([0, 1]), IntSet([0, 1]))


def test_disjointness_is_translation_invariant():
    rng = random.Random(8383)
    for _ in range(50):
        ea, eb = random_disjoint_pair(rng, rng.randrange(4, 20))
        t = rng.randrange(1, 50)
        assert are_disjoint(IntSet([e + t for e in ea]), IntSet(eb))
        assert are_disjoint(IntSet(ea), IntSet([e + t for e in eb]))


# ---------------------------------------------------------------------------
# sum coverage and the packing bounds

def test_sum_coverage_matches_enumeration():
    rng = random.Random(6060)
    for _ in range(80):
        top = rng.randrange(1, 40)
        ea = random_subset(rng, top)
        eb = random_subset(rng, top)
        a = IntSet(ea, top)
        b = IntSet(eb, top)
        for x in [0, top // 2, top]:
            want = len({p + q for p in ea if p <= x for q in eb if q <= x})
            assert sum_coverage(a, b, x) == want, (ea, eb, x)
    with pytest.raises(UncertifiedRegionError):
        sum_coverage(IntSet([0], 5), IntSet([0], 5), 6)


def test_sum_coverage_equals_product_for_disjoint_pairs():
    rng = random.Random(31337)
    for _ in range(60):
        n = rng.randrange(4, 30)
        ea, eb = random_disjoint_pair(rng, n)
        a = IntSet(ea, n)
        b = IntSet(eb, n)
        x = rng.randrange(n + 1)
        assert sum_coverage(a, b, x) == a.count(x) * b.count(x)


def test_pair_bounds_hold_on_random_disjoint_pairs():
    rng = random.Random(112358)
    for _ in range(120):
        n = rng.randrange(1, 40)
        ea, eb = random_disjoint_pair(rng, n)
        a = IntSet(ea, n)
        b = IntSet(eb, n)
        for x in {1, n // 2, n} - {0}:
            rep = pair_bounds_check(a, b, x)
            assert rep.ok(), rep.violations
            assert rep.disjoint
            assert rep.product == rep.count_a * rep.count_b
            assert rep.product_margin == 2 * x + 1 - rep.product >= 0
            assert rep.packing_margin == x - rep.diffs_a - rep.diffs_b >= 0


def test_pair_bounds_report_names_every_violation():
    # A = B = [0..6] breaks disjointness, the product bound and the packing
    # bound at x = 6 all at once; the report must say so rather than raise
    full = IntSet(list(range(7)))
    rep = pair_bounds_check(full, IntSet(list(range(7))), 6)
    assert not rep.ok() and not rep.disjoint
    assert not rep.product_ok and not rep.packing_ok
    text = " ".join(rep.violations)
    assert "shared difference 1" in text
    assert "product 49 > 13" in text


def test_binomial_packing_needs_sidon_sides():
    # a side with a repeated difference makes the binomial count a lie
    assert binomial_packing_check(IntSet([0, 1, 2]), IntSet([0]), 2) is None
    rng = random.Random(90210)
    checked = 0
    for _ in range(400):
        n = rng.randrange(2, 11)  # dense greedy sides are rarely Sidon past this
        ea, eb = random_disjoint_pair(rng, n)
        a = IntSet(ea, n)
        b = IntSet(eb, n)
        if not (is_sidon(a) and is_sidon(b)):
            continue
        checked += 1
        ca, cb = a.count(n), b.count(n)
        want = ca * (ca - 1) // 2 + cb * (cb - 1) // 2 <= n
        assert binomial_packing_check(a, b, n) == want
        assert want  # distinct differences pack into [1, n], so this holds
    assert checked > 20
