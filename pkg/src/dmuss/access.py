"""Access structures and the achievable-rate region.

A scheme instance is K users, each reading a subset of the N storage
nodes.  A rate tuple is feasible iff it satisfies two families of
constraints:

* pairwise: user k's rate is at most the smallest number of nodes k keeps
  to itself relative to any single other user, ``min |A_k \\ A_j|``;
* cutset: any group of users cannot jointly receive more symbols than the
  number of nodes they touch, ``sum R_i <= |union of their sets|``.

Both families are checked exhaustively (the subset family is exponential
in K, hence the hard user cap).  The cutset bound function is a monotone
submodular set function, which is what makes the greedy augmentation in
:func:`augment_quotas` safe: the integer points below it form a
polymatroid, so any maximal greedy extension reaches total N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotInRegionError, SingleUserError, TooLargeError, TooManyUsersError

MAX_USERS = 20  # subset enumeration is 2^K
ENUM_MAX_USERS = 6
ENUM_MAX_NODES = 12

Rate = Fraction  # rates may be rational; integer tuples use plain ints


@dataclass(frozen=True)
class AccessStructure:
    """The node subsets each user can read.

    Users are numbered 1..K and nodes 1..N.  N is defined as the size of
    the union, and the union must cover 1..N without gaps (a node nobody
    reads cannot store anything useful).
    """

    sets: tuple  # tuple of frozensets of 1-indexed node ids

    def __post_init__(self):
        if not self.sets:
            raise ValueError("need at least one user")
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        union = frozenset().union(*sets)
        if not union or any(s == frozenset() for s in sets):
            raise ValueError("every user needs a nonempty access set")
        if min(union) < 1 or union != frozenset(range(1, len(union) + 1)):
            raise ValueError("access sets must cover 1..N with no gaps")

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]]) -> "AccessStructure":
        return cls(tuple(frozenset(s) for s in sets))

    @property
    def K(self) -> int:
        return len(self.sets)

    @property
    def N(self) -> int:
        return len(frozenset().union(*self.sets))

    def user_set(self, k: int) -> frozenset:
        """Access set of user k (1-indexed)."""
        return self.sets[k - 1]

    def sorted_set(self, k: int) -> list[int]:
        """Access set of user k as an ascending node list; position i of
        this list is the scheme's i-th evaluation slot for the user."""
        return sorted(self.sets[k - 1])

    def union_size(self, users: Iterable[int]) -> int:
        members = [self.sets[k - 1] for k in users]
        return len(frozenset().union(*members)) if members else 0


@dataclass(frozen=True)
class Constraint:
    """One linear inequality of the rate region: sum of rates <= bound."""

    kind: str  # "pairwise" or "cutset"
    users: tuple  # users whose rates are summed (pairwise: a single user)
    bound: int

    def lhs(self, rates: Sequence) -> Fraction:
        return sum((Fraction(rates[k - 1]) for k in self.users), Fraction(0))

    def satisfied(self, rates: Sequence) -> bool:
        return self.lhs(rates) <= self.bound

    def __str__(self):
        terms = " + ".join(f"R{k}" for k in self.users)
        return f"{terms} <= {self.bound} ({self.kind})"


@dataclass
class RegionReport:
    """Outcome of a membership test, including the first violated constraint."""

    ok: bool
    violation: Constraint | None = None
    violation_lhs: Fraction | None = None
    pairwise_vacuous: bool = dc_field(default=False)  # K == 1: no other user to hide from
    checked: int = 0

    def describe(self) -> str:
        if self.ok:
            note = " (single user: pairwise bounds vacuous)" if self.pairwise_vacuous else ""
            return f"in region; {self.checked} constraints hold{note}"
        return f"outside region: {self.violation} violated with value {self.violation_lhs}"


def pairwise_bound(acc: AccessStructure, k: int) -> int:
    """min over other users j of |A_k \\ A_j|; needs K >= 2."""
    if acc.K == 1:
        raise SingleUserError("pairwise bound is undefined with a single user")
    mine = acc.user_set(k)
    return min(len(mine - acc.user_set(j)) for j in range(1, acc.K + 1) if j != k)


def capacity_constraints(acc: AccessStructure) -> list[Constraint]:
    """All defining inequalities, in canonical order.

    Pairwise bounds come first (one per user, ascending; omitted when
    K == 1), then cutset bounds for every nonempty user subset ordered by
    size then lexicographically.
    """
    if acc.K > MAX_USERS:
        raise TooManyUsersError(f"K={acc.K} exceeds the supported cap of {MAX_USERS}")
    out: list[Constraint] = []
    if acc.K >= 2:
        for k in range(1, acc.K + 1):
            out.append(Constraint("pairwise", (k,), pairwise_bound(acc, k)))
    for size in range(1, acc.K + 1):
        for users in itertools.combinations(range(1, acc.K + 1), size):
            out.append(Constraint("cutset", users, acc.union_size(users)))
    return out


def in_capacity_region(acc: AccessStructure, rates: Sequence) -> RegionReport:
    """Exhaustive membership test for a (possibly rational) rate tuple.

    Returns a report rather than a bare bool so callers can surface the
    violated inequality; the first one in canonical order wins.
    """
    if len(rates) != acc.K:
        raise ValueError(f"expected {acc.K} rates, got {len(rates)}")
    rates = [Fraction(r) for r in rates]
    if any(r < 0 for r in rates):
        raise ValueError("rates must be nonnegative")
    constraints = capacity_constraints(acc)
    for con in constraints:
        value = con.lhs(rates)
        if value > con.bound:
            return RegionReport(
                ok=False,
                violation=con,
                violation_lhs=value,
                pairwise_vacuous=acc.K == 1,
                checked=len(constraints),
            )
    return RegionReport(ok=True, pairwise_vacuous=acc.K == 1, checked=len(constraints))


def _node_masks(acc: AccessStructure) -> list[int]:
    return [sum(1 << (n - 1) for n in s) for s in acc.sets]


def cut_sizes_by_subset(acc: AccessStructure) -> list[int]:
    """f[mask] = size of the union of the access sets selected by mask."""
    masks = _node_masks(acc)
    union = [0] * (1 << acc.K)
    for m in range(1, 1 << acc.K):
        low = (m & -m).bit_length() - 1
        union[m] = union[m & (m - 1)] | masks[low]
    return [bin(u).count("1") for u in union]


def integer_tuple_in_region(acc: AccessStructure, tup: Sequence[int]) -> bool:
    """Fast integral membership test used by enumeration and augmentation."""
    f = cut_sizes_by_subset(acc)
    if acc.K >= 2:
        for k in range(1, acc.K + 1):
            if tup[k - 1] > pairwise_bound(acc, k):
                return False
    for m in range(1, 1 << acc.K):
        total = 0
        mm = m
        while mm:
            low = mm & -mm
            total += tup[low.bit_length() - 1]
            mm ^= low
        if total > f[m]:
            return False
    return True


def augment_quotas(acc: AccessStructure, rates: Sequence[int]) -> tuple:
    """Pad an in-region integer rate tuple up to total N.

    Greedily increments the first user (in index order) whose increment
    keeps every cutset inequality intact, until the total hits N.  The
    cutset bound is a polymatroid rank function, so a valid increment
    always exists before the total reaches N and the greedy never gets
    stuck.  The result dominates ``rates`` componentwise, still satisfies
    every cutset bound, and sums to exactly N.

    Raises:
        NotInRegionError: rates are not integers or fail the region test.
    """
    if len(rates) != acc.K:
        raise ValueError(f"expected {acc.K} rates, got {len(rates)}")
    if any(int(r) != Fraction(r) for r in rates):
        raise NotInRegionError(f"augmentation needs integer rates, got {tuple(rates)}")
    report = in_capacity_region(acc, rates)
    if not report.ok:
        raise NotInRegionError(report.describe())
    f = cut_sizes_by_subset(acc)
    quotas = [int(r) for r in rates]
    n = acc.N
    while sum(quotas) < n:
        for k in range(acc.K):
            ok = True
            for m in range(1, 1 << acc.K):
                if not (m >> k) & 1:
                    continue
                total = 0
                mm = m
                while mm:
                    low = mm & -mm
                    total += quotas[low.bit_length() - 1]
                    mm ^= low
                if total + 1 > f[m]:
                    ok = False
                    break
            if ok:
                quotas[k] += 1
                break
        else:
            raise AssertionError("greedy augmentation stuck below N; region check is broken")
    return tuple(quotas)


def validate_quotas(acc: AccessStructure, rates: Sequence[int], quotas: Sequence[int]) -> bool:
    """Check the three augmentation invariants for an explicit tuple."""
    if len(quotas) != acc.K or any(int(x) != x for x in quotas):
        return False
    if any(p < r for p, r in zip(quotas, rates)):
        return False
    if sum(quotas) != acc.N:
        return False
    f = cut_sizes_by_subset(acc)
    for m in range(1, 1 << acc.K):
        total = 0
        mm = m
        while mm:
            low = mm & -mm
            total += quotas[low.bit_length() - 1]
            mm ^= low
        if total > f[m]:
            return False
    return True


def enumerate_integer_region(acc: AccessStructure) -> list:
    """All nonnegative integer rate tuples in the region, lexicographically.

    Depth-first with partial-sum pruning (the grand cutset caps the total
    at N); per-user caps come from the singleton cutset and, when K >= 2,
    the pairwise bound.

    Raises:
        TooLargeError: K > 6 or N > 12.
    """
    if acc.K > ENUM_MAX_USERS or acc.N > ENUM_MAX_NODES:
        raise TooLargeError(
            f"enumeration capped at K <= {ENUM_MAX_USERS}, N <= {ENUM_MAX_NODES};"
            f" got K={acc.K}, N={acc.N}"
        )
    caps = []
    for k in range(1, acc.K + 1):
        cap = len(acc.user_set(k))
        if acc.K >= 2:
            cap = min(cap, pairwise_bound(acc, k))
        caps.append(cap)
    n = acc.N
    out = []
    tup = [0] * acc.K

    def descend(idx: int, total: int):
        if idx == acc.K:
            if integer_tuple_in_region(acc, tup):
                out.append(tuple(tup))
            return
        for v in range(min(caps[idx], n - total) + 1):
            tup[idx] = v
            descend(idx + 1, total + v)
        tup[idx] = 0

    descend(0, 0)
    return out
