"""Mixed-radix digit systems whose even and odd digit places form a disjoint pair.

Fix moduli m_1, m_2, ... (each >= 2) and place values P_0 = 1,
P_j = m_1 * ... * m_j.  Every integer in [0, P_n) has a unique expansion
sum d_j * P_j with 0 <= d_j < m_{j+1}.  Collect

    A = numbers whose digits sit only at even places,
    B = numbers whose digits sit only at odd places.

Then every n in [0, P_n) splits uniquely as a + b with a in A, b in B, so
(A, B) is a disjoint pair covering the range exactly.  All moduli equal to k
gives the classic base-k pair; with the uniform base the counting ratio
A(x)B(x)/x tops out at 2(k+1)/(k+2) and min(A(x), B(x))/sqrt(x) bottoms out
at 1/sqrt(k).

Moduli that grow superlinearly (the "growth" extension rule
m_{i+1} = max(i * m_i, 2)) push the product ratio toward its ceiling of 2
along probe points y = N + P_{2k}, where N is the largest A-element whose
digits stay below place 2k.  At those points the counts collapse to products
of moduli:

    A(y) = 2 * m_1 m_3 ... m_{2k-1},    B(y) = m_2 m_4 ... m_{2k},
    A(2y) = 3 * m_1 m_3 ... m_{2k-1},   B(2y) = B(y),

so A(y)B(y)/y climbs to 2 while A(2y)B(2y)/(2y) climbs to 3/2.

``fit_moduli`` inverts the construction: given targets x_1 < x_2 < ... it
chooses moduli so that each x_i lands in a window
[N_k + P_2k, 2 P_{2k-1} + P_2k] on which the ratio is provably at least
2 / (1 + 2/m_2k), with equality at the right endpoint when m_2k >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sets import IntSet

GROWTH = "growth"


class ExtendSpecError(ValueError):
    """The digit system is too short for the requested range or probe."""


class InfeasibleTargetError(ValueError):
    """No modulus >= 2 places a fitting target inside its window."""


class MixedRadixSpec:
    """An immutable list of moduli plus the derived place values."""

    __slots__ = ("moduli", "places")

    def __init__(self, moduli):
        moduli = tuple(int(m) for m in moduli)
        if not moduli:
            raise ValueError("need at least one modulus")
        if any(m < 2 for m in moduli):
            raise ValueError(f"moduli must all be >= 2, got {moduli}")
        places = [1]
        for m in moduli:
            places.append(places[-1] * m)
        self.moduli = moduli
        self.places = tuple(places)

    @property
    def total(self) -> int:
        """P_n: one past the largest representable integer."""
        return self.places[-1]

    def __len__(self) -> int:
        return len(self.moduli)

    def __eq__(self, other) -> bool:
        return isinstance(other, MixedRadixSpec) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self) -> str:
        return f"MixedRadixSpec{self.moduli}"

    def digits(self, x: int) -> list[int]:
        """Digit expansion of x, least significant place first."""
        if not 0 <= x < self.total:
            raise ExtendSpecError(
                f"{x} is outside [0, {self.total}); extend the spec")
        out = []
        for m in self.moduli:
            x, d = divmod(x, m)
            out.append(d)
        return out

    def value(self, digits) -> int:
        """Inverse of :meth:`digits`."""
        digits = list(digits)
        if len(digits) > len(self.moduli):
            raise ExtendSpecError("more digits than places")
        acc = 0
        for d, m, p in zip(digits, self.moduli, self.places):
            if not 0 <= d < m:
                raise ValueError(f"digit {d} out of range for modulus {m}")
            acc += d * p
        return acc

    def to_json(self) -> dict:
        return {"moduli": [str(m) for m in self.moduli]}

    @classmethod
    def from_json(cls, obj: dict) -> "MixedRadixSpec":
        if not isinstance(obj, dict) or "moduli" not in obj:
            raise ValueError("expected an object with 'moduli'")
        return cls(int(m) for m in obj["moduli"])


EVEN = 0
ODD = 1


def side_elements(spec: MixedRadixSpec, parity: int, limit: int) -> list[int]:
    """Elements <= limit using only places of the given parity, sorted.

    Odometer order: place by place, digit by digit, never by filtering the
    whole range, so the cost is proportional to the output.
    """
    if parity not in (EVEN, ODD):
        raise ValueError("parity must be EVEN (0) or ODD (1)")
    vals = [0]
    for j in range(parity, len(spec.moduli), 2):
        p = spec.places[j]
        if p > limit:
            break
        block = []
        for d in range(1, spec.moduli[j]):
            base = d * p
            if base > limit:
                break
            for v in vals:
                w = base + v
                if w > limit:
                    break
                block.append(w)
        # every earlier value is < p, so the blocks concatenate in order
        vals += block
    return vals


def mixed_radix_pair(spec: MixedRadixSpec, limit: int) -> tuple[IntSet, IntSet]:
    """The (even-places, odd-places) pair, complete up to ``limit``.

    Requires limit < P_n so that no element above the representable range
    is silently missing; extend the spec first if it is not.
    """
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    if limit >= spec.total:
        raise ExtendSpecError(
            f"limit {limit} is not covered by P_n = {spec.total}; "
            f"extend the spec past it")
    a = IntSet(side_elements(spec, EVEN, limit), limit)
    b = IntSet(side_elements(spec, ODD, limit), limit)
    return a, b


def mixed_radix_count(spec: MixedRadixSpec, parity: int, x: int) -> int:
    """Count of side elements <= x without enumerating them.

    Walks the digits of x from the most significant place down, keeping the
    usual tight/free split: at a free place every allowed digit below the
    current one contributes the full product of allowed digits underneath.
    """
    if parity not in (EVEN, ODD):
        raise ValueError("parity must be EVEN (0) or ODD (1)")
    if not 0 <= x < spec.total:
        raise ExtendSpecError(
            f"{x} is outside [0, {spec.total}); extend the spec")
    digits = spec.digits(x)
    free = []
    acc = 1
    for j, m in enumerate(spec.moduli):
        if j % 2 == parity:
            acc *= m
        free.append(acc)
    total = 0
    for j in range(len(digits) - 1, -1, -1):
        below = free[j - 1] if j > 0 else 1
        if j % 2 == parity:
            total += digits[j] * below
        elif digits[j] > 0:
            # the only allowed digit here is 0, which already drops below x
            return total + below
    return total + 1


class SpecSide:
    """Counting view of one side of a digit-system pair, backed by the
    digit walk instead of a materialized element list."""

    __slots__ = ("spec", "parity")

    def __init__(self, spec: MixedRadixSpec, parity: int):
        if parity not in (EVEN, ODD):
            raise ValueError("parity must be EVEN (0) or ODD (1)")
        self.spec = spec
        self.parity = parity

    @property
    def limit(self) -> int:
        return self.spec.total - 1

    def count(self, x: int) -> int:
        return mixed_radix_count(self.spec, self.parity, x)

    def elements(self, limit: int) -> IntSet:
        return IntSet(side_elements(self.spec, self.parity, limit), limit)


def uniform_base_pair(k: int, limit: int) -> tuple[IntSet, IntSet]:
    """Base-k pair: digits at even positions vs digits at odd positions.

    The number of digit places is sized from the limit, so the construction
    is unbounded in scale.
    """
    if k < 2:
        raise ValueError("base must be >= 2")
    n = 1
    p = k
    while p <= limit:
        n += 1
        p *= k
    return mixed_radix_pair(MixedRadixSpec((k,) * n), limit)


def powers_of_two_pair(limit: int) -> tuple[IntSet, IntSet]:
    """Binary expansions split by bit-position parity (the base-2 pair)."""
    return uniform_base_pair(2, limit)


def extend_spec(spec: MixedRadixSpec, target: int, rule=GROWTH) -> MixedRadixSpec:
    """Append moduli until P_n > target.

    ``rule`` is either the growth rule m_{i+1} = max(i * m_i, 2) or an
    integer constant >= 2 appended verbatim.  A spec already covering the
    target comes back unchanged.
    """
    if rule != GROWTH:
        rule = int(rule)
        if rule < 2:
            raise ValueError("constant extension modulus must be >= 2")
    ms = list(spec.moduli)
    total = spec.total
    if total > target:
        return spec
    while total <= target:
        nxt = max(len(ms) * ms[-1], 2) if rule == GROWTH else rule
        ms.append(nxt)
        total *= nxt
    return MixedRadixSpec(ms)


def _extend_places(spec: MixedRadixSpec, nplaces: int, rule=GROWTH) -> MixedRadixSpec:
    """Append moduli (by rule) until at least ``nplaces`` places exist."""
    if len(spec.moduli) >= nplaces:
        return spec
    ms = list(spec.moduli)
    while len(ms) < nplaces:
        ms.append(max(len(ms) * ms[-1], 2) if rule == GROWTH else int(rule))
    return MixedRadixSpec(ms)


def side_max_below(spec: MixedRadixSpec, parity: int, place: int) -> int:
    """Largest side element whose digits all sit at places below ``place``."""
    return sum((spec.moduli[j] - 1) * spec.places[j]
               for j in range(parity, min(place, len(spec.moduli)), 2))


@dataclass(frozen=True)
class WitnessProbe:
    """Counts of both sides at a probe point y and its double.

    y = N + P_2k with N the largest even-side element below place 2k.  For
    superlinearly growing moduli, A(y)B(y)/y approaches 2 and
    A(2y)B(2y)/(2y) approaches 3/2 as k grows.
    """

    k: int
    probe: int
    count_a: int
    count_b: int
    count_a_double: int
    count_b_double: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.count_a * self.count_b, self.probe)

    @property
    def ratio_double(self) -> Fraction:
        return Fraction(self.count_a_double * self.count_b_double, 2 * self.probe)


def witness_probe(spec: MixedRadixSpec, k: int) -> WitnessProbe:
    """Probe the pair at y_k = N_k + P_2k and at 2 y_k.

    Needs at least 2k moduli, plus a modulus after place 2k that is >= 4 so
    both probe points stay inside the representable range with room for the
    digit 3.  A missing modulus after place 2k is filled in by the growth
    rule (on a copy); a present but too small one raises, since changing it
    would change the pair.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(spec.moduli) < 2 * k:
        raise ExtendSpecError(
            f"need at least {2 * k} moduli for probe {k}, have {len(spec.moduli)}")
    if len(spec.moduli) == 2 * k:
        spec = _extend_places(spec, 2 * k + 1)
    if spec.moduli[2 * k] < 4:
        raise ExtendSpecError(
            f"modulus after place {2 * k} is {spec.moduli[2 * k]} < 4; "
            f"extend the spec differently")
    y = side_max_below(spec, EVEN, 2 * k) + spec.places[2 * k]
    return WitnessProbe(
        k=k, probe=y,
        count_a=mixed_radix_count(spec, EVEN, y),
        count_b=mixed_radix_count(spec, ODD, y),
        count_a_double=mixed_radix_count(spec, EVEN, 2 * y),
        count_b_double=mixed_radix_count(spec, ODD, 2 * y),
    )


@dataclass(frozen=True)
class FitWindow:
    """One fitted target with its guaranteed-ratio window.

    On every integer x in [lower, upper] the pair satisfies
    A(x)B(x)/x >= bound = 2/(1 + 2/modulus); the right endpoint attains it
    exactly when modulus >= 3.
    """

    target: int
    prefix_max: int
    place: int
    lower: int
    upper: int
    modulus: int
    bound: Fraction

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "prefix_max": str(self.prefix_max),
            "place": str(self.place),
            "lower": str(self.lower),
            "upper": str(self.upper),
            "modulus": str(self.modulus),
            "bound": {"num": str(self.bound.numerator),
                      "den": str(self.bound.denominator)},
        }


@dataclass(frozen=True)
class FitResult:
    spec: MixedRadixSpec
    windows: tuple[FitWindow, ...]

    def to_json(self) -> dict:
        return {"moduli": [str(m) for m in self.spec.moduli],
                "windows": [w.to_json() for w in self.windows]}


def fit_moduli(targets) -> FitResult:
    """Choose moduli so each target sits inside a guaranteed-ratio window.

    The first window uses m_1 = 2 and the largest m_2 with
    1 + 2 m_2 <= x_1 <= 4 + 2 m_2; each later target gets m_{2k-1} = 2 and
    the largest m_2k keeping x inside [N_k + P_2k, 2 P_{2k-1} + P_2k].
    Raises InfeasibleTargetError, naming the offending target, whenever the
    largest such modulus falls below 2.
    """
    targets = [int(t) for t in targets]
    if not targets:
        raise InfeasibleTargetError("need at least one target")
    for a, b in zip(targets, targets[1:]):
        if a >= b:
            raise InfeasibleTargetError(
                f"targets must be strictly increasing, got {a} before {b}")
    x1 = targets[0]
    m2 = (x1 - 1) // 2
    if m2 < 2:
        raise InfeasibleTargetError(
            f"target {x1}: largest usable second modulus is {m2} < 2")
    ms = [2, m2]
    prefix_max = 1
    windows = [FitWindow(
        target=x1, prefix_max=prefix_max, place=2 * m2,
        lower=1 + 2 * m2, upper=4 + 2 * m2, modulus=m2,
        bound=Fraction(2 * m2, m2 + 2))]
    for x in targets[1:]:
        p_even = 1
        for m in ms:
            p_even *= m
        ms.append(2)
        p_odd = 2 * p_even
        prefix_max += p_even
        m = (x - prefix_max) // p_odd
        if m < 2:
            raise InfeasibleTargetError(
                f"target {x}: largest usable modulus is {m} < 2")
        if x > (m + 2) * p_odd:
            raise InfeasibleTargetError(
                f"target {x}: exceeds window top {(m + 2) * p_odd}")
        ms.append(m)
        windows.append(FitWindow(
            target=x, prefix_max=prefix_max, place=m * p_odd,
            lower=prefix_max + m * p_odd, upper=(m + 2) * p_odd,
            modulus=m, bound=Fraction(2 * m, m + 2)))
    return FitResult(MixedRadixSpec(ms), tuple(windows))
