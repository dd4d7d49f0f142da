"""Weight validation, window/obstruction machinery, class membership,
resonance detection, and admissible-weight enumeration.

All arithmetic is exact over Python integers.  Every operation here has
brute-force-verifiable semantics: the ``brute`` backend and the bounded
nested-loop searches are the ground truth the fast paths are tested against.
"""

from __future__ import annotations

import math
import operator
from collections.abc import Iterable, Iterator

from qcweights import semigroup
from qcweights.model import (
    BASE_CASE_DIVISIBILITY,
    BASE_CASE_M1,
    NO_WINDOW_EXISTS,
    OBSTRUCTION_SET_HIT,
    ClassFailure,
    MembershipVerdict,
    ObstructionSet,
    ResonanceWitness,
    WeightError,
    WeightTuple,
)

BACKENDS = ("brute", "sieve", "apery")

# Tags for the length-3 linearity criteria.
BASIC_CRITERION = "basic-criterion"
PRIME_PAIR = "prime-pair"
TWIN_PRIME = "twin-prime"
DOUBLING_BOUND = "doubling-bound"


def _as_int_tuple(raw, what: str) -> tuple[int, ...]:
    try:
        return tuple(operator.index(x) for x in raw)
    except TypeError as exc:
        raise WeightError(f"{what} entries must be integers") from exc


def validate_weight(raw: Iterable[int] | WeightTuple) -> WeightTuple:
    """Check the weight invariants and return the validated tuple.

    Raises WeightError naming the violated invariant: fewer than 2 entries,
    a non-positive entry, entries not strictly increasing, or gcd != 1.
    """
    if isinstance(raw, WeightTuple):
        raw = raw.m
    entries = _as_int_tuple(raw, "weight")
    if len(entries) < 2:
        raise WeightError(f"a weight needs at least 2 entries, got {len(entries)}")
    if any(e < 1 for e in entries):
        raise WeightError("weight entries must be positive")
    if any(a >= b for a, b in zip(entries, entries[1:])):
        raise WeightError("weight entries must be strictly increasing")
    g = math.gcd(*entries)
    if g != 1:
        raise WeightError(f"gcd of weight entries must be 1, got {g}")
    return WeightTuple(entries)


def _coerce(weight) -> WeightTuple:
    if isinstance(weight, WeightTuple):
        return weight
    return validate_weight(weight)


def _check_prefix(prefix, min_len: int = 2) -> tuple[int, ...]:
    # A prefix of a valid weight keeps positivity and strict increase but may
    # have gcd > 1, so no gcd condition here.
    if isinstance(prefix, WeightTuple):
        prefix = prefix.m
    entries = _as_int_tuple(prefix, "prefix")
    if len(entries) < min_len:
        raise WeightError(f"prefix needs at least {min_len} entries, got {len(entries)}")
    if any(e < 1 for e in entries):
        raise WeightError("prefix entries must be positive")
    if any(a >= b for a, b in zip(entries, entries[1:])):
        raise WeightError("prefix entries must be strictly increasing")
    return entries


def _check_multi_index(k, length: int) -> tuple[int, ...]:
    kk = _as_int_tuple(k, "multi-index")
    if len(kk) != length:
        raise WeightError(f"multi-index must have length {length}, got {len(kk)}")
    if any(x < 0 for x in kk):
        raise WeightError("multi-index entries must be nonnegative")
    return kk


def is_prime(n: int) -> bool:
    """Deterministic trial division; exact for any nonnegative input."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def r_value(prefix, i: int, k) -> int:
    """The shifted combination m_i + sum(m_q * k_q) over the prefix.

    ``i`` is 1-based and ``k`` must have one entry per prefix weight.
    """
    pref = _check_prefix(prefix, min_len=1)
    kk = _check_multi_index(k, len(pref))
    if not 1 <= i <= len(pref):
        raise WeightError(f"index i={i} out of range 1..{len(pref)}")
    return pref[i - 1] + sum(q * kq for q, kq in zip(pref, kk))


def c_exponent(weight, i: int, j: int, k) -> int:
    """The rotation exponent (m_i - m_j) + sum(m_r * k_r) over the full weight.

    Indices are 1-based and must differ; ``k`` has one entry per weight.
    A zero value at i < j is exactly a resonance (see :func:`resonances`).
    """
    w = _coerce(weight)
    n = len(w)
    kk = _check_multi_index(k, n)
    if not (1 <= i <= n and 1 <= j <= n):
        raise WeightError(f"indices (i={i}, j={j}) out of range 1..{n}")
    if i == j:
        raise WeightError("indices i and j must differ")
    return (w[i - 1] - w[j - 1]) + sum(mr * kr for mr, kr in zip(w.m, kk))


def _brute_window_elements(prefix: tuple[int, ...], lo: int, hi: int) -> list[int]:
    # Nested-loop ground truth: enumerate k with partial sums < hi, which
    # bounds each k_q by hi / m_q.
    found: set[int] = set()
    length = len(prefix)

    def descend(q: int, partial: int, nonzero: bool) -> None:
        if q == length:
            if nonzero:
                for mi in prefix:
                    r = mi + partial
                    if lo < r < hi:
                        found.add(r)
            return
        g = prefix[q]
        total = partial
        kq = 0
        while total < hi:
            descend(q + 1, total, nonzero or kq > 0)
            total += g
            kq += 1

    descend(0, 0, False)
    return sorted(found)


def obstruction_set(prefix, M: int, backend: str = "sieve") -> ObstructionSet:
    """Blocked integers of the window ((M-1)*S, M*S) over the prefix, S being
    the prefix sum.

    The three backends (brute nested loops, dynamic-programming sieve, Apery
    residue table) return identical sets on every input.
    """
    pref = _check_prefix(prefix)
    M = operator.index(M)
    if M < 1:
        raise WeightError(f"window index M must be >= 1, got {M}")
    if backend not in BACKENDS:
        raise WeightError(f"unknown backend {backend!r}, expected one of {BACKENDS}")
    sigma = sum(pref)
    lo, hi = (M - 1) * sigma, M * sigma
    if backend == "brute":
        elements = tuple(_brute_window_elements(pref, lo, hi))
        return ObstructionSet(prefix=pref, window=M, interval=(lo, hi), elements=elements)
    if backend == "sieve":
        table = semigroup.build_sieve(pref, hi)
    else:
        table = semigroup.build_apery(pref)
    return semigroup.obstruction_set_fast(pref, M, table)


def _class_verdict(entries: tuple[int, ...], weight: WeightTuple) -> MembershipVerdict:
    # The literal recursive membership conditions.  No gcd condition appears
    # here: prefixes of valid weights may have gcd > 1.
    if entries[0] < 2:
        return MembershipVerdict(weight, False, (), ClassFailure(BASE_CASE_M1, 2))
    if entries[1] % entries[0] == 0:
        return MembershipVerdict(weight, False, (), ClassFailure(BASE_CASE_DIVISIBILITY, 2))
    witnesses: list[int] = []
    for j in range(3, len(entries) + 1):
        prefix = entries[: j - 1]
        sigma = sum(prefix)
        mj = entries[j - 1]
        if mj % sigma == 0:
            # The strict window inequalities cannot hold for a multiple of S.
            return MembershipVerdict(
                weight, False, tuple(witnesses), ClassFailure(NO_WINDOW_EXISTS, j)
            )
        window = mj // sigma + 1
        table = semigroup.build_apery(prefix)
        if any(semigroup.is_representable_nonzero(table, mj - mi) for mi in prefix):
            return MembershipVerdict(
                weight, False, tuple(witnesses), ClassFailure(OBSTRUCTION_SET_HIT, j)
            )
        witnesses.append(window)
    return MembershipVerdict(weight, True, tuple(witnesses), None)


def is_in_class(weight) -> MembershipVerdict:
    """Decide class membership for a validated weight.

    Base case n = 2: m1 >= 2 and m2 not divisible by m1.  Each further level
    j places m_j in its unique open window over the prefix sum S_j (index
    floor(m_j / S_j) + 1; no window exists when S_j divides m_j) and requires
    m_j to avoid that window's obstruction set.
    """
    w = _coerce(weight)
    return _class_verdict(w.m, w)


def _weighted_sum_solutions(weights: tuple[int, ...], target: int) -> Iterator[tuple[int, ...]]:
    # All k >= 0 with sum(weights[r] * k[r]) == target, in lexicographic order.
    if not weights:
        if target == 0:
            yield ()
        return
    head = weights[0]
    for k0 in range(target // head + 1):
        for rest in _weighted_sum_solutions(weights[1:], target - k0 * head):
            yield (k0, *rest)


def resonances(weight) -> list[ResonanceWitness]:
    """All triples (i, j, k) with i < j and m_i + sum(m_r * k_r, r < j) = m_j.

    The search is finite because each k_r is bounded by (m_j - m_i) / m_r.
    An empty result certifies that every origin-fixing rotation exponent
    (m_i - m_j) + sum(m_r * k_r) with i != j is nonzero.
    """
    w = _coerce(weight)
    m = w.m
    out: list[ResonanceWitness] = []
    for j in range(2, len(m) + 1):
        for i in range(1, j):
            deficit = m[j - 1] - m[i - 1]
            for k in _weighted_sum_solutions(m[: j - 1], deficit):
                out.append(ResonanceWitness(i, j, k))
    out.sort(key=ResonanceWitness.sort_key)
    return out


def _bounded_multi_indices(length: int, total: int) -> Iterator[tuple[int, ...]]:
    # All k >= 0 of the given length with sum(k) <= total.
    if length == 0:
        yield ()
        return
    for head in range(total + 1):
        for rest in _bounded_multi_indices(length - 1, total - head):
            yield (head, *rest)


def zero_set_equivalence_check(weight, degree_bound: int) -> bool:
    """Verify that exponent zeros and resonances coincide up to a degree bound.

    Over all full-length k with sum(k) <= degree_bound and all pairs i < j,
    the zero set of the rotation exponent must equal the resonance witnesses
    embedded into full length by appending zero components.
    """
    w = _coerce(weight)
    degree_bound = operator.index(degree_bound)
    if degree_bound < 0:
        raise WeightError("degree bound must be >= 0")
    m = w.m
    n = len(m)

    expected: dict[tuple[int, int], set[tuple[int, ...]]] = {}
    for wit in resonances(w):
        full = wit.k + (0,) * (n - len(wit.k))
        if sum(full) <= degree_bound:
            expected.setdefault((wit.i, wit.j), set()).add(full)

    found: dict[tuple[int, int], set[tuple[int, ...]]] = {}
    for k in _bounded_multi_indices(n, degree_bound):
        combo = sum(mr * kr for mr, kr in zip(m, k))
        for j in range(2, n + 1):
            for i in range(1, j):
                # (m_i - m_j) + combo == 0, the exponent evaluated at k.
                if combo == m[j - 1] - m[i - 1]:
                    found.setdefault((i, j), set()).add(k)
    return found == expected


def enumerate_admissible(prefix, M: int, backend: str = "sieve") -> list[int]:
    """All extensions s of the prefix that are admissible in window M.

    Returns every integer s strictly inside the window that avoids the
    obstruction set, exceeds the last prefix entry, and keeps the overall gcd
    at 1.  Each returned s is re-checked to extend the prefix into the class.
    """
    pref = _check_prefix(prefix)
    verdict = _class_verdict(pref, WeightTuple(pref))
    if not verdict.in_class:
        assert verdict.failure is not None
        raise WeightError(f"prefix not in the weight class: {verdict.failure.reason}")
    iset = obstruction_set(pref, M, backend)
    lo, hi = iset.interval
    blocked = set(iset.elements)
    prefix_gcd = math.gcd(*pref)
    out: list[int] = []
    for s in range(max(lo, pref[-1]) + 1, hi):
        if s in blocked or math.gcd(prefix_gcd, s) != 1:
            continue
        check = is_in_class(validate_weight((*pref, s)))
        if not check.in_class:
            raise RuntimeError(
                f"internal check failed: {(*pref, s)} should be in the class"
            )
        out.append(s)
    return out


def check_n3_criteria(weight) -> list[str]:
    """Which of the four length-3 linearity criteria the weight satisfies.

    Tags (sorted): basic-criterion (m1 >= 3, m2 and m3 not divisible by m1,
    m1 + m2 > m3); prime-pair (m2, m3 odd primes >= 5 with m3 - m2 < m1);
    twin-prime (m2, m3 a twin prime pair other than (3, 5), m1 >= 3);
    doubling-bound (3 <= m1 and m3 < 2 * m1).  Every tagged weight is in the
    class.
    """
    w = _coerce(weight)
    if len(w) != 3:
        raise WeightError(f"criteria apply to weights of length 3, got {len(w)}")
    m1, m2, m3 = w.m
    tags: list[str] = []
    if m1 >= 3 and m2 % m1 != 0 and m3 % m1 != 0 and m1 + m2 > m3:
        tags.append(BASIC_CRITERION)
    if m2 >= 5 and is_prime(m2) and is_prime(m3) and m3 - m2 < m1:
        tags.append(PRIME_PAIR)
    if (
        m3 - m2 == 2
        and is_prime(m2)
        and is_prime(m3)
        and (m2, m3) != (3, 5)
        and m1 >= 3
    ):
        tags.append(TWIN_PRIME)
    if m1 >= 3 and m3 < 2 * m1:
        tags.append(DOUBLING_BOUND)
    return sorted(tags)
