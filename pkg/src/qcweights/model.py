"""Domain data types shared by the analyzer modules.

Everything here is a small frozen dataclass over plain integers, so values
hash, compare, and print deterministically and can be shared freely between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass


class WeightError(ValueError):
    """An input violates a weight-tuple invariant or an argument contract."""


# Rejection reasons reported by class membership checks.
BASE_CASE_M1 = "base-case-m1"
BASE_CASE_DIVISIBILITY = "base-case-divisibility"
NO_WINDOW_EXISTS = "no-window-exists"
OBSTRUCTION_SET_HIT = "obstruction-set-hit"

FAILURE_REASONS = (
    BASE_CASE_M1,
    BASE_CASE_DIVISIBILITY,
    NO_WINDOW_EXISTS,
    OBSTRUCTION_SET_HIT,
)


@dataclass(frozen=True)
class WeightTuple:
    """A weight (m1, ..., mn): strictly increasing positive integers, n >= 2,
    with overall gcd 1.

    Construct through :func:`qcweights.core.validate_weight`, which checks the
    invariants and names the violated one on failure.
    """

    m: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.m)

    def __len__(self) -> int:
        return len(self.m)

    def __iter__(self):
        return iter(self.m)

    def __getitem__(self, idx):
        return self.m[idx]

    def prefix(self, length: int) -> tuple[int, ...]:
        return self.m[:length]


@dataclass(frozen=True)
class ObstructionSet:
    """The blocked integers of one window over a prefix.

    With S the prefix sum, the window of index M is the open integer interval
    ((M-1)*S, M*S).  An integer is blocked when it equals some prefix entry
    plus a nonzero nonnegative integer combination of the prefix entries.
    """

    prefix: tuple[int, ...]
    window: int                 # the window index M >= 1
    interval: tuple[int, int]   # open bounds ((M-1)*S, M*S)
    elements: tuple[int, ...]   # sorted ascending

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, value: int) -> bool:
        return value in self.elements


@dataclass(frozen=True)
class ClassFailure:
    """Why a weight was rejected.

    ``level`` is 2 for the base-case reasons and the recursion level j
    (3-based up to n) for the window reasons.
    """

    reason: str
    level: int


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of a class membership check.

    ``witnesses`` holds the window indices M_3, ..., M_n of the levels that
    passed, so it has length n - 2 exactly when the weight is accepted.
    """

    weight: WeightTuple
    in_class: bool
    witnesses: tuple[int, ...]
    failure: ClassFailure | None = None


@dataclass(frozen=True)
class ResonanceWitness:
    """A solution of m_i + sum(m_r * k_r for r < j) = m_j with i < j.

    Indices are 1-based; ``k`` has length j - 1.  Such a solution is exactly
    what permits a nonlinear monomial in an origin-fixing automorphism.
    """

    i: int
    j: int
    k: tuple[int, ...]

    def sort_key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.i, self.j, self.k)
