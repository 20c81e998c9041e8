"""Disjoint node-block selection via bipartite matching.

Planning must reserve, for each user k, a block of exactly R'_k nodes
inside that user's access set, with blocks of different users disjoint.
Cloning user k R'_k times turns this into a perfect matching problem on
clones vs nodes; Hall's condition for the clone graph is exactly the
cutset family ``sum_{k in S} R'_k <= |union of A_k|``, so a matching
exists precisely when the padded tuple satisfies those bounds.

The matcher is augmenting-path search with a deterministic preference
order: clones are processed in (user, copy) order and each search visits
currently-free nodes (ascending) before trying to displace earlier
matches (also ascending).  The preference keeps small instances intuitive
-- two identical users {1,2}, {1,2} end up with blocks {1} and {2}, not
the reshuffled assignment a plain search produces -- and any failed
search yields a Hall violation witness for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .access import AccessStructure
from .errors import NoSdrError


@dataclass(frozen=True)
class DeficiencyCertificate:
    """Witness that no assignment exists: more clones than reachable nodes."""

    clones: tuple  # (user, copy) pairs, copies 1-indexed
    nodes: tuple  # sorted union of the clones' access sets

    @property
    def clone_count(self) -> int:
        return len(self.clones)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def describe(self) -> str:
        users = sorted({k for k, _ in self.clones})
        return (
            f"{self.clone_count} required representatives for users {users} "
            f"share only {self.node_count} nodes {list(self.nodes)}"
        )


@dataclass(frozen=True)
class SdrAssignment:
    """Per-user disjoint node blocks; ``blocks[k-1]`` is user k's block."""

    blocks: tuple  # tuple of frozensets of node ids

    def block(self, k: int) -> frozenset:
        return self.blocks[k - 1]

    def sorted_block(self, k: int) -> list[int]:
        return sorted(self.blocks[k - 1])


def find_sdr(acc: AccessStructure, quotas: Sequence[int]) -> SdrAssignment:
    """Pick disjoint node blocks within each A_k, with |block k| = R'_k.

    Raises:
        NoSdrError: no such blocks exist; carries a
            :class:`DeficiencyCertificate` naming a clone set D with
            |union of access sets| < |D|.
    """
    if len(quotas) != acc.K:
        raise ValueError(f"expected {acc.K} block sizes, got {len(quotas)}")
    if any(r < 0 or int(r) != r for r in quotas):
        raise ValueError("block sizes must be nonnegative integers")

    clones = [(k, j) for k in range(1, acc.K + 1) for j in range(1, quotas[k - 1] + 1)]
    neighbours = {k: acc.sorted_set(k) for k in range(1, acc.K + 1)}
    owner: dict[int, tuple] = {}  # node -> clone currently holding it

    def extend(clone, visited: set) -> bool:
        k = clone[0]
        # free nodes first, then displaceable ones, each group ascending
        order = sorted(neighbours[k], key=lambda n: (n in owner, n))
        for n in order:
            if n in visited:
                continue
            visited.add(n)
            held_by = owner.get(n)
            if held_by is None or extend(held_by, visited):
                owner[n] = clone
                return True
        return False

    for clone in clones:
        visited: set = set()
        if not extend(clone, visited):
            deficient = [clone] + sorted(owner[n] for n in visited)
            cert = DeficiencyCertificate(
                clones=tuple(sorted(deficient)),
                nodes=tuple(sorted(visited | set(neighbours[clone[0]]))),
            )
            raise NoSdrError(f"no distinct representatives: {cert.describe()}", cert)

    blocks = [set() for _ in range(acc.K)]
    for n, (k, _) in owner.items():
        blocks[k - 1].add(n)
    return SdrAssignment(blocks=tuple(frozenset(b) for b in blocks))


def validate_sdr(acc: AccessStructure, quotas: Sequence[int], assignment: SdrAssignment) -> bool:
    """True iff blocks sit inside their access sets, have the required
    sizes, and are pairwise disjoint."""
    if len(assignment.blocks) != acc.K or len(quotas) != acc.K:
        return False
    seen: set = set()
    for k in range(1, acc.K + 1):
        block = assignment.block(k)
        if len(block) != quotas[k - 1]:
            return False
        if not block <= acc.user_set(k):
            return False
        if block & seen:
            return False
        seen |= block
    return True
