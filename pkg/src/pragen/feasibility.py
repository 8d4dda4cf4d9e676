"""Gender-separation feasibility for one day of ward occupancy.

A ward can host F female and M male patients if some subset of rooms can be
reserved for women while the remaining rooms hold all men.  Equivalently,
some achievable room-subset capacity b must satisfy F <= b <= total - M.
Structured capacity profiles (a single room size, singles plus one size,
complete size ranges and their scalar multiples, divisibility chains,
superincreasing or arithmetic sizes, two coprime sizes) admit fast
criteria; everything else is decided by a reachable-sums dynamic program
over the capacity multiset, which doubles as the reference oracle for the
fast paths in the test suite.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

MAX_INT = 2**31 - 1


class Method(str, Enum):
    """Which criterion decided a feasibility question."""

    CONSTANT_CAPACITY = "ConstantCapacity"
    SINGLES_PLUS_CONSTANT = "SinglesPlusConstant"
    EVEN_PAIR = "EvenPair"
    SUPERINCREASING = "Superincreasing"
    ARITHMETIC = "Arithmetic"
    CHAIN = "Chain"
    FROBENIUS_COPRIME = "FrobeniusCoprime"
    ALL_SIZES_ONE_TO_N = "AllSizesOneToN"
    POWERS_OF_TWO = "PowersOfTwo"
    SCALED_FAMILY = "ScaledFamily"
    SUBSET_SUM_ORACLE = "SubsetSumOracle"
    CAPACITY_EXCEEDED = "CapacityExceeded"


@dataclass(frozen=True)
class WardConfig:
    """A ward described by its multiset of room capacities (beds per room).

    Room order is preserved; witness indices refer to positions in
    ``capacities``.
    """

    capacities: tuple[int, ...]

    def __post_init__(self) -> None:
        caps = tuple(int(c) for c in self.capacities)
        object.__setattr__(self, "capacities", caps)
        if not caps:
            raise ValueError("ward needs at least one room")
        if any(c < 1 for c in caps):
            raise ValueError("every room capacity must be >= 1")
        if any(c > MAX_INT for c in caps):
            raise ValueError(f"room capacity exceeds {MAX_INT}")

    @cached_property
    def total_capacity(self) -> int:
        return sum(self.capacities)

    @property
    def room_count(self) -> int:
        return len(self.capacities)

    @cached_property
    def capacity_counts(self) -> dict[int, int]:
        return dict(Counter(self.capacities))

    @cached_property
    def distinct_capacities(self) -> tuple[int, ...]:
        return tuple(sorted(self.capacity_counts))

    def count_of(self, capacity: int) -> int:
        return self.capacity_counts.get(capacity, 0)

    def indices_of(self, capacity: int) -> list[int]:
        return [i for i, c in enumerate(self.capacities) if c == capacity]


@dataclass(frozen=True)
class Census:
    """Counts of female and male patients present on one day."""

    females: int
    males: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "females", int(self.females))
        object.__setattr__(self, "males", int(self.males))
        if self.females < 0 or self.males < 0:
            raise ValueError("census counts must be >= 0")
        if max(self.females, self.males) > MAX_INT:
            raise ValueError(f"census count exceeds {MAX_INT}")

    @property
    def total(self) -> int:
        return self.females + self.males

    def swapped(self) -> "Census":
        return Census(self.males, self.females)


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of a feasibility check.

    ``witness`` lists room indices reserved for female patients; present
    whenever ``feasible`` and the rooms satisfy both covering inequalities.
    """

    feasible: bool
    method: Method
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CapacityFamily:
    """Deterministic classification of a ward into one checker family.

    Parameter fields are populated per family: ``c`` for the constant,
    singles-plus-constant and even-pair families, ``a``/``case``/``n`` for
    scalar-multiple families, ``pair`` for the coprime two-size family.
    """

    kind: Method
    c: int | None = None
    a: int | None = None
    n: int | None = None
    case: str | None = None
    pair: tuple[int, int] | None = None

    def params(self) -> dict:
        out: dict = {}
        if self.c is not None:
            out["c"] = self.c
        if self.a is not None:
            out["a"] = self.a
        if self.n is not None:
            out["n"] = self.n
        if self.case is not None:
            out["case"] = self.case
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out


def _capacity_exceeded(census: Census, ward: WardConfig) -> FeasibilityVerdict | None:
    if census.total > ward.total_capacity:
        return FeasibilityVerdict(False, Method.CAPACITY_EXCEEDED, None)
    return None


def _exact_fill_two_sizes(
    ward: WardConfig, small: int, big: int, target: int
) -> tuple[int, ...]:
    """Indices of rooms with sizes {small, big} summing exactly to target.

    Requires enough small rooms to bridge any remainder, which holds for the
    singles-plus-constant and even-pair ward shapes.
    """
    big_rooms = ward.indices_of(big)
    small_rooms = ward.indices_of(small)
    use_big = min(len(big_rooms), target // big)
    rest = target - use_big * big
    if rest % small != 0 or rest // small > len(small_rooms):
        raise AssertionError("two-size fill failed; ward shape violated")
    chosen = big_rooms[:use_big] + small_rooms[: rest // small]
    return tuple(sorted(chosen))


def check_constant_capacity(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Ward with one room size c: feasible iff ceil(F/c)+ceil(M/c) <= rooms."""
    if len(ward.distinct_capacities) != 1:
        raise ValueError("constant-capacity check needs a single room size")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    c = ward.distinct_capacities[0]
    need_f = -(-census.females // c)
    need_m = -(-census.males // c)
    if need_f + need_m > ward.room_count:
        return FeasibilityVerdict(False, Method.CONSTANT_CAPACITY, None)
    return FeasibilityVerdict(True, Method.CONSTANT_CAPACITY, tuple(range(need_f)))


def check_singles_plus_constant(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Sizes {1, c} with at least c-1 singles: feasible iff F+M fits in total."""
    distinct = ward.distinct_capacities
    if len(distinct) != 2 or distinct[0] != 1:
        raise ValueError("expected room sizes {1, c} with both present")
    c = distinct[1]
    if ward.count_of(1) < c - 1:
        raise ValueError(f"needs at least {c - 1} single rooms")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    # Every value in [0, total] is an exact subset sum here, so aim for F.
    witness = _exact_fill_two_sizes(ward, 1, c, census.females)
    return FeasibilityVerdict(True, Method.SINGLES_PLUS_CONSTANT, witness)


def check_even_pair(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Sizes {2, 2c}, c >= 2, with at least c-1 double rooms.

    Subset sums are exactly the even values up to the total, so the census
    fits iff both counts are even and fit, or they fit with room to spare.
    """
    distinct = ward.distinct_capacities
    if len(distinct) != 2 or distinct[0] != 2 or distinct[1] % 2 != 0:
        raise ValueError("expected room sizes {2, 2c}")
    c = distinct[1] // 2
    if c < 2 or ward.count_of(2) < c - 1:
        raise ValueError("even-pair shape needs c >= 2 and >= c-1 double rooms")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    F, M = census.females, census.males
    total = ward.total_capacity
    both_even = F % 2 == 0 and M % 2 == 0
    if not (both_even or F + M < total):
        return FeasibilityVerdict(False, Method.EVEN_PAIR, None)
    b = F if F % 2 == 0 else F + 1
    witness = _exact_fill_two_sizes(ward, 2, distinct[1], b)
    return FeasibilityVerdict(True, Method.EVEN_PAIR, witness)


def subset_sum_oracle(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Reference decision: is some subset-capacity b in [F, total-M] reachable?

    One reachable-sums bitset pass answers the whole range; the witness is
    reconstructed by backtracking over per-room prefix masks for the smallest
    reachable b >= F.
    """
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    F = census.females
    hi = ward.total_capacity - census.males
    masks = [1]
    for c in ward.capacities:
        masks.append(masks[-1] | (masks[-1] << c))
    window = (masks[-1] >> F) & ((1 << (hi - F + 1)) - 1)
    if window == 0:
        return FeasibilityVerdict(False, Method.SUBSET_SUM_ORACLE, None)
    b = F + ((window & -window).bit_length() - 1)
    chosen = []
    for i in range(ward.room_count - 1, -1, -1):
        if (masks[i] >> b) & 1:
            continue
        chosen.append(i)
        b -= ward.capacities[i]
    return FeasibilityVerdict(True, Method.SUBSET_SUM_ORACLE, tuple(sorted(chosen)))


def _is_superincreasing(sorted_caps: tuple[int, ...]) -> bool:
    prefix = 0
    for i, c in enumerate(sorted_caps):
        if i > 0 and prefix > c:
            return False
        prefix += c
    return True


def check_superincreasing(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Sorted capacities dominate their prefix sums: greedy decides each b."""
    order = sorted(range(ward.room_count), key=lambda i: ward.capacities[i])
    sorted_caps = tuple(ward.capacities[i] for i in order)
    if not _is_superincreasing(sorted_caps):
        raise ValueError("capacities are not superincreasing")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    for b in range(census.females, ward.total_capacity - census.males + 1):
        remaining = b
        chosen = []
        for i in reversed(order):
            if ward.capacities[i] <= remaining:
                remaining -= ward.capacities[i]
                chosen.append(i)
            if remaining == 0:
                break
        if remaining == 0:
            return FeasibilityVerdict(True, Method.SUPERINCREASING, tuple(sorted(chosen)))
    return FeasibilityVerdict(False, Method.SUPERINCREASING, None)


def check_chain(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Distinct sizes forming a divisibility chain: greedy bounded knapsack.

    Taking as many of the largest size as fits is exact here because any
    shortfall can be re-assembled from smaller sizes that divide it.
    """
    distinct = ward.distinct_capacities
    for a, b in zip(distinct, distinct[1:]):
        if b % a != 0:
            raise ValueError("capacities do not form a divisibility chain")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    counts = ward.capacity_counts
    for b in range(census.females, ward.total_capacity - census.males + 1):
        remaining = b
        take: dict[int, int] = {}
        for c in reversed(distinct):
            k = min(counts[c], remaining // c)
            take[c] = k
            remaining -= k * c
        if remaining == 0:
            chosen: list[int] = []
            for c, k in take.items():
                chosen.extend(ward.indices_of(c)[:k])
            return FeasibilityVerdict(True, Method.CHAIN, tuple(sorted(chosen)))
    return FeasibilityVerdict(False, Method.CHAIN, None)


def _arithmetic_step(distinct: tuple[int, ...]) -> int | None:
    """Common difference of the distinct capacities, or None."""
    if len(distinct) == 1:
        return 1
    step = distinct[1] - distinct[0]
    for a, b in zip(distinct, distinct[1:]):
        if b - a != step:
            return None
    return step


def check_arithmetic(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Each size once, sizes in arithmetic progression a1, a1+j, ..., a1+(n-1)j.

    A subset of k sizes sums to k*a1 + j*q where q is any integer between the
    sum of the k smallest and the k largest offsets, so reachability of each
    candidate b reduces to a divisibility and interval test.
    """
    distinct = ward.distinct_capacities
    if any(v != 1 for v in ward.capacity_counts.values()):
        raise ValueError("arithmetic family requires each size exactly once")
    step = _arithmetic_step(distinct)
    if step is None:
        raise ValueError("capacities are not an arithmetic sequence")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    n = len(distinct)
    a1 = distinct[0]
    for b in range(census.females, ward.total_capacity - census.males + 1):
        for k in range(n + 1):
            rem = b - k * a1
            if rem < 0:
                break
            if rem % step != 0:
                continue
            q = rem // step
            lo = k * (k - 1) // 2
            hi = k * (2 * n - k - 1) // 2
            if lo <= q <= hi:
                offsets = list(range(k))
                excess = q - lo
                for slot in range(k - 1, -1, -1):
                    bump = min(excess, (n - k + slot) - offsets[slot])
                    offsets[slot] += bump
                    excess -= bump
                chosen = [
                    ward.capacities.index(a1 + off * step) for off in offsets
                ]
                return FeasibilityVerdict(True, Method.ARITHMETIC, tuple(sorted(chosen)))
    return FeasibilityVerdict(False, Method.ARITHMETIC, None)


def frobenius_unique_pair(a1: int, a2: int, value: int) -> tuple[int, int]:
    """The unique (x1, x2) with x2 < a1 and value = x1*a1 + x2*a2.

    Exists for coprime a1, a2 once value >= (a1-1)(a2-1); computed with the
    extended Euclidean algorithm (modular inverse), not by search.
    """
    if a1 < 1 or a2 < 1:
        raise ValueError("sizes must be positive")
    if math.gcd(a1, a2) != 1:
        raise ValueError("sizes must be coprime")
    if value < (a1 - 1) * (a2 - 1):
        raise ValueError("value below the uniqueness threshold (a1-1)(a2-1)")
    if a1 == 1:
        return value, 0
    x2 = (value * pow(a2, -1, a1)) % a1
    x1 = (value - x2 * a2) // a1
    return x1, x2


def check_frobenius_coprime(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Two coprime sizes a1 < a2 with fewer than a1 large rooms.

    With F at or above the uniqueness threshold, every candidate b has exactly
    one representation with x2 < a1, so feasibility is a direct bound check on
    the unique coefficients over the b-range.
    """
    distinct = ward.distinct_capacities
    if len(distinct) != 2:
        raise ValueError("expected exactly two distinct sizes")
    a1, a2 = distinct
    if math.gcd(a1, a2) != 1:
        raise ValueError("sizes must be coprime")
    if ward.count_of(a2) >= a1:
        raise ValueError("needs fewer than a1 rooms of the larger size")
    threshold = (a1 - 1) * (a2 - 1)
    if census.females < threshold:
        raise ValueError("female count below the uniqueness threshold")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    r1, r2 = ward.count_of(a1), ward.count_of(a2)
    for value in range(census.females, ward.total_capacity - census.males + 1):
        x1, x2 = frobenius_unique_pair(a1, a2, value)
        if x1 <= r1 and x2 <= r2:
            chosen = ward.indices_of(a1)[:x1] + ward.indices_of(a2)[:x2]
            return FeasibilityVerdict(
                True, Method.FROBENIUS_COPRIME, tuple(sorted(chosen))
            )
    return FeasibilityVerdict(False, Method.FROBENIUS_COPRIME, None)


def _exact_fill_complete_range(ward: WardConfig, target: int, powers: bool) -> tuple[int, ...]:
    """Room indices summing exactly to target when all sizes of a complete
    range (1..n, or 1,2,4,...,2^n) are present.

    Grows the selection one bed at a time: take an unused single room, or
    swap the smallest unused room in for used rooms worth one bed less.
    """
    unused: dict[int, list[int]] = {}
    for i, c in enumerate(ward.capacities):
        unused.setdefault(c, []).append(i)
    used: dict[int, list[int]] = {c: [] for c in unused}
    for _ in range(target):
        c_min = min(c for c, rooms in unused.items() if rooms)
        room = unused[c_min].pop()
        if c_min > 1:
            if powers:
                # one used room of each smaller power adds up to c_min - 1
                size = 1
                while size < c_min:
                    freed = used[size].pop()
                    unused[size].append(freed)
                    size *= 2
            else:
                freed = used[c_min - 1].pop()
                unused[c_min - 1].append(freed)
        used[c_min].append(room)
    return tuple(sorted(i for rooms in used.values() for i in rooms))


def check_all_sizes_one_to_n(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Every size 1..n present: feasible iff the census fits the total."""
    distinct = ward.distinct_capacities
    if distinct != tuple(range(1, distinct[-1] + 1)):
        raise ValueError("expected every room size 1..n to be present")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    witness = _exact_fill_complete_range(ward, census.females, powers=False)
    return FeasibilityVerdict(True, Method.ALL_SIZES_ONE_TO_N, witness)


def check_powers_of_two(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Every size 1, 2, 4, ..., 2^n present: feasible iff the census fits."""
    distinct = ward.distinct_capacities
    if distinct[0] != 1 or any(b != 2 * a for a, b in zip(distinct, distinct[1:])):
        raise ValueError("expected every room size 2^0..2^n to be present")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    witness = _exact_fill_complete_range(ward, census.females, powers=True)
    return FeasibilityVerdict(True, Method.POWERS_OF_TWO, witness)


_SCALED_CASES = ("two_sizes", "all_multiples", "powers")


def _scaled_subcase(ward: WardConfig, a: int) -> tuple[str, int] | None:
    """Which complete-range shape the capacities form after dividing by a."""
    distinct = ward.distinct_capacities
    if any(c % a for c in distinct):
        return None
    reduced = [c // a for c in distinct]
    if len(reduced) == 2 and reduced[0] == 1 and ward.count_of(a) >= reduced[1] - 1:
        return "two_sizes", reduced[1]
    if reduced == list(range(1, len(reduced) + 1)):
        return "all_multiples", reduced[-1]
    if reduced[0] == 1 and all(y == 2 * x for x, y in zip(reduced, reduced[1:])):
        return "powers", len(reduced) - 1
    return None


def check_scaled_family(census: Census, ward: WardConfig, a: int) -> FeasibilityVerdict:
    """Capacities a * {1,n} / a * {1..n} / a * {1,2,...,2^n}.

    Splitting every room into a-bed units reduces the question to a constant
    capacity ward, giving: feasible iff ceil(F/a) + ceil(M/a) <= total/a.
    The witness comes from the divided-by-a ward, whose rooms map one-to-one
    onto the original ones.
    """
    sub = _scaled_subcase(ward, a)
    if sub is None:
        raise ValueError(f"capacities do not form a scaled family for a={a}")
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    need_f = -(-census.females // a)
    need_m = -(-census.males // a)
    if need_f + need_m > ward.total_capacity // a:
        return FeasibilityVerdict(False, Method.SCALED_FAMILY, None)
    reduced_ward = WardConfig(tuple(c // a for c in ward.capacities))
    reduced_census = Census(need_f, need_m)
    case, _ = sub
    if len(reduced_ward.distinct_capacities) == 1:
        inner = check_constant_capacity(reduced_census, reduced_ward)
    elif case == "two_sizes":
        inner = check_singles_plus_constant(reduced_census, reduced_ward)
    elif case == "all_multiples":
        inner = check_all_sizes_one_to_n(reduced_census, reduced_ward)
    else:
        inner = check_powers_of_two(reduced_census, reduced_ward)
    return FeasibilityVerdict(True, Method.SCALED_FAMILY, inner.witness)


def _divisors_descending(value: int) -> list[int]:
    divs = set()
    d = 1
    while d * d <= value:
        if value % d == 0:
            divs.add(d)
            divs.add(value // d)
        d += 1
    return sorted(divs, reverse=True)


@lru_cache(maxsize=4096)
def classify(ward: WardConfig) -> CapacityFamily:
    """First matching family in fixed priority order; the oracle is total.

    Cheapest criteria come first, so overlapping shapes (e.g. {1,2,4} is both
    a complete power range and superincreasing) resolve deterministically.
    """
    distinct = ward.distinct_capacities
    counts = ward.capacity_counts
    if len(distinct) == 1:
        return CapacityFamily(Method.CONSTANT_CAPACITY, c=distinct[0])
    if len(distinct) == 2 and distinct[0] == 1 and counts[1] >= distinct[1] - 1:
        return CapacityFamily(Method.SINGLES_PLUS_CONSTANT, c=distinct[1])
    if (
        len(distinct) == 2
        and distinct[0] == 2
        and distinct[1] % 2 == 0
        and distinct[1] // 2 >= 2
        and counts[2] >= distinct[1] // 2 - 1
    ):
        return CapacityFamily(Method.EVEN_PAIR, c=distinct[1] // 2)
    if distinct == tuple(range(1, distinct[-1] + 1)):
        return CapacityFamily(Method.ALL_SIZES_ONE_TO_N, n=distinct[-1])
    if distinct[0] == 1 and all(b == 2 * a for a, b in zip(distinct, distinct[1:])):
        return CapacityFamily(Method.POWERS_OF_TWO, n=len(distinct) - 1)
    gcd_all = math.gcd(*ward.capacities)
    for a in _divisors_descending(gcd_all):
        sub = _scaled_subcase(ward, a)
        if sub is not None:
            case, n = sub
            return CapacityFamily(Method.SCALED_FAMILY, a=a, n=n, case=case)
    if (
        len(distinct) == 2
        and math.gcd(distinct[0], distinct[1]) == 1
        and counts[distinct[1]] < distinct[0]
    ):
        return CapacityFamily(Method.FROBENIUS_COPRIME, pair=(distinct[0], distinct[1]))
    if all(b % a == 0 for a, b in zip(distinct, distinct[1:])):
        return CapacityFamily(Method.CHAIN)
    if _is_superincreasing(tuple(sorted(ward.capacities))):
        return CapacityFamily(Method.SUPERINCREASING)
    if all(v == 1 for v in counts.values()) and _arithmetic_step(distinct) is not None:
        return CapacityFamily(Method.ARITHMETIC)
    return CapacityFamily(Method.SUBSET_SUM_ORACLE)


def _complemented(verdict: FeasibilityVerdict, ward: WardConfig) -> FeasibilityVerdict:
    """Swap the witness to the complement set (female/male roles exchanged)."""
    if verdict.witness is None:
        return verdict
    keep = set(verdict.witness)
    complement = tuple(i for i in range(ward.room_count) if i not in keep)
    return FeasibilityVerdict(verdict.feasible, verdict.method, complement)


def is_feasible(census: Census, ward: WardConfig) -> FeasibilityVerdict:
    """Classify the ward and dispatch to the fastest applicable criterion.

    Agrees with subset_sum_oracle on every input; the coprime two-size family
    additionally needs a large-enough female count, falling back to the
    swapped census or the oracle when it is not met.
    """
    early = _capacity_exceeded(census, ward)
    if early:
        return early
    family = classify(ward)
    kind = family.kind
    if kind == Method.CONSTANT_CAPACITY:
        return check_constant_capacity(census, ward)
    if kind == Method.SINGLES_PLUS_CONSTANT:
        return check_singles_plus_constant(census, ward)
    if kind == Method.EVEN_PAIR:
        return check_even_pair(census, ward)
    if kind == Method.ALL_SIZES_ONE_TO_N:
        return check_all_sizes_one_to_n(census, ward)
    if kind == Method.POWERS_OF_TWO:
        return check_powers_of_two(census, ward)
    if kind == Method.SCALED_FAMILY:
        return check_scaled_family(census, ward, family.a)
    if kind == Method.FROBENIUS_COPRIME:
        a1, a2 = family.pair
        threshold = (a1 - 1) * (a2 - 1)
        if census.females >= threshold:
            return check_frobenius_coprime(census, ward)
        if census.males >= threshold:
            return _complemented(check_frobenius_coprime(census.swapped(), ward), ward)
        return subset_sum_oracle(census, ward)
    if kind == Method.CHAIN:
        return check_chain(census, ward)
    if kind == Method.SUPERINCREASING:
        return check_superincreasing(census, ward)
    if kind == Method.ARITHMETIC:
        return check_arithmetic(census, ward)
    return subset_sum_oracle(census, ward)
