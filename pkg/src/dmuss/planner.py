"""Scheme planning: from an access structure and integer rate tuple to a
full set of encoding constants.

A finished :class:`Plan` fixes, for every user k:

* a padded length R'_k >= R_k (the message plus enough fresh randomness
  that the padded tuple exhausts all N nodes),
* a reserved node block (disjoint across users, inside A_k),
* a permutation of evaluation exponents pi_k, giving user k the points
  gamma^{pi_k(1)}, ..., gamma^{pi_k(|A_k|)},
* nonzero share scalings alpha_{k,n} for each node n in A_k.

Correctness of the whole scheme reduces to one condition: the N x N
matrix V built from the permuted null-space bases of the users'
tail-coefficient matrices, with each row scaled by its alpha, must be
nonsingular.  The planner keeps that matrix in the split form
``diag(zeta) @ C + D`` where C collects the rows of reserved nodes
(unscaled) and D everything else.  C is block-diagonal up to row
permutation, hence nonsingular by construction, which makes
det(diag(zeta) @ C + D) a multilinear polynomial in zeta whose leading
coefficient det(C) is nonzero -- so suitable all-nonzero scalings zeta
always exist over GF(p), p >= 3, and a deterministic sweep can find one
when random sampling runs out of luck.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .access import AccessStructure, augment_quotas, in_capacity_region, validate_quotas
from .errors import (
    FieldTooSmallError,
    NotInRegionError,
    PlanningFailedError,
    SingularMatrixError,
)
from .gf import Field
from .linalg import Matrix, NullBasis
from .sdr import SdrAssignment, find_sdr, validate_sdr

RANDOM_TRIALS_PER_ROW = 64  # scaling-search budget is 64 * N draws


@dataclass(frozen=True)
class Plan:
    """Every constant needed to encode and decode one scheme instance."""

    field: Field
    access: AccessStructure
    rates: tuple  # ints, one per user
    quotas: tuple  # padded lengths, summing to N
    reserved: SdrAssignment
    perms: tuple  # perms[k-1][i-1] = pi_k(i), 1-indexed exponent slots
    alphas: tuple  # alphas[k-1][n] = nonzero scaling for node n in A_k

    @property
    def K(self) -> int:
        return self.access.K

    @property
    def N(self) -> int:
        return self.access.N

    @property
    def unknown_count(self) -> int:
        """Total unknowns in the encoding system: tails plus one share per node."""
        return sum(len(s) for s in self.access.sets)

    def gammas(self, k: int) -> list:
        """Evaluation points of user k, aligned with the sorted access set."""
        g, p = self.field.gamma, self.field.p
        return [pow(g, e, p) for e in self.perms[k - 1]]

    def alpha(self, k: int, n: int) -> int:
        return self.alphas[k - 1][n]


@dataclass
class CorrectnessDecomposition:
    """The correctness matrix in reserved/rest split form.

    ``matrix = diag(zeta) @ c + d`` where row n of c holds the permuted
    basis row of the user that reserved node n (and zeros elsewhere),
    zeta[n-1] is that user's scaling at n, and d holds the alpha-scaled
    rows of all non-reserving users.  c and d never have a nonzero entry
    in the same position.
    """

    c: Matrix
    d: Matrix
    zeta: list
    matrix: Matrix


def tail_basis(field: Field, quota: int, set_size: int) -> NullBasis:
    """Null-space basis of user k's tail-coefficient matrix.

    The matrix stacks the degree-R'_k..set_size-1 monomial evaluations at
    the first ``set_size`` powers of gamma; with R'_k == set_size it has
    no rows and the null space is everything.
    """
    if quota == set_size:
        return linalg.null_space(field, [], cols=set_size)
    return linalg.null_space(field, linalg.build_B(field, quota, set_size))


def choose_permutation(field: Field, basis: NullBasis, sorted_set: list, zblock: Sequence[int]) -> tuple:
    """Deterministic exponent permutation for one user.

    Picks the lexicographically first nonsingular subset of basis rows
    (greedy top-down rank extension) and routes those rows to the
    positions of the reserved nodes, both taken in ascending order; every
    remaining row keeps ascending order over the remaining positions.
    Returns pi as a tuple with pi[i-1] = pi(i).
    """
    size = len(sorted_set)
    quota = basis.dim
    if quota == 0:
        return tuple(range(1, size + 1))
    rows = basis.as_columns_matrix()  # size x quota; row j <-> exponent j+1
    selected: list[int] = []
    picked_rows: list = []
    for j in range(size):
        if len(selected) == quota:
            break
        trial = picked_rows + [rows[j]]
        if linalg.rank(field, trial) == len(trial):
            selected.append(j + 1)
            picked_rows.append(rows[j])
    if len(selected) != quota:
        raise SingularMatrixError("null basis lost rank; field data inconsistent")
    zpositions = sorted(sorted_set.index(n) + 1 for n in zblock)
    rest_rows = [j for j in range(1, size + 1) if j not in set(selected)]
    rest_positions = [i for i in range(1, size + 1) if i not in set(zpositions)]
    pi = [0] * size
    for pos, row in zip(zpositions, selected):
        pi[pos - 1] = row
    for pos, row in zip(rest_positions, rest_rows):
        pi[pos - 1] = row
    return tuple(pi)


def _permuted_basis_rows(basis: NullBasis, perm: Sequence[int]) -> Matrix:
    rows = basis.as_columns_matrix()
    return [rows[e - 1] for e in perm] if basis.dim else [[] for _ in perm]


def build_split(
    field: Field,
    acc: AccessStructure,
    quotas: Sequence[int],
    reserved: SdrAssignment,
    perms: Sequence,
    bases: Sequence[NullBasis],
    rest_alphas: Sequence,
) -> tuple:
    """Assemble the (c, d) split of the correctness matrix.

    ``rest_alphas[k-1][n]`` scales the row of node n for non-reserving
    user k; reserved rows go into c unscaled (their scalings are the zeta
    coordinates chosen afterwards).  Returns (c, d, owner) with owner[n-1]
    the user that reserved node n.
    """
    n_total = acc.N
    offsets = []
    acc_off = 0
    for k in range(1, acc.K + 1):
        offsets.append(acc_off)
        acc_off += quotas[k - 1]
    c = linalg.zeros(n_total, n_total)
    d = linalg.zeros(n_total, n_total)
    owner = [0] * n_total
    p = field.p
    for k in range(1, acc.K + 1):
        rows = _permuted_basis_rows(bases[k - 1], perms[k - 1])
        block = reserved.block(k)
        off = offsets[k - 1]
        for i, node in enumerate(acc.sorted_set(k), start=1):
            row_vals = rows[i - 1]
            if node in block:
                owner[node - 1] = k
                for t, v in enumerate(row_vals):
                    c[node - 1][off + t] = v
            else:
                a = rest_alphas[k - 1][node]
                for t, v in enumerate(row_vals):
                    d[node - 1][off + t] = a * v % p
    return c, d, owner


def choose_zeta(field: Field, c: Matrix, d: Matrix, seed: int = 0) -> list:
    """All-nonzero row scalings with det(diag(zeta) @ c + d) != 0.

    Phase one samples each coordinate uniformly from the nonzero elements
    with a seeded generator, up to 64 * N full draws.  Phase two walks the
    coordinates left to right: with earlier rows frozen and later rows
    taken straight from c, the determinant is linear in the current
    coordinate with slope equal to the previous partial determinant, so at
    most one value is forbidden and the smallest admissible nonzero value
    is taken.  The sweep can only dead-end over GF(2), where "nonzero"
    leaves no alternative; that surfaces as PlanningFailedError.
    """
    n = len(c)
    p = field.p
    if n == 0:
        return []
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIALS_PER_ROW * n):
        zeta = [rng.randrange(1, p) for _ in range(n)]
        m = [[z * cv + dv for cv, dv in zip(crow, drow)] for z, crow, drow in zip(zeta, c, d)]
        m = [[v % p for v in row] for row in m]
        if linalg.det(field, m) != 0:
            return zeta
    kappa = linalg.det(field, c)
    if kappa == 0:
        raise PlanningFailedError("reserved-row matrix is singular; invalid block selection")
    work = linalg.copy_matrix(c)
    zeta = []
    for i in range(n):
        saved = work[i]
        work[i] = d[i]
        delta = linalg.det(field, work)
        # det as a function of this coordinate v is v * kappa + delta
        forbidden = -delta * pow(kappa, p - 2, p) % p
        v = next((cand for cand in range(1, p) if cand != forbidden), None)
        if v is None:
            raise PlanningFailedError(
                "no nonzero scaling keeps the correctness matrix invertible"
            )
        work[i] = [(v * cv + dv) % p for cv, dv in zip(saved, d[i])]
        kappa = (v * kappa + delta) % p
        zeta.append(v)
    if kappa == 0:
        raise AssertionError("sweep ended on a singular matrix; linearity bookkeeping broken")
    return zeta


def _ones_alphas(acc: AccessStructure) -> tuple:
    return tuple({n: 1 for n in acc.sorted_set(k)} for k in range(1, acc.K + 1))


def make_plan(field: Field, acc: AccessStructure, rates: Sequence[int], seed: int = 0) -> Plan:
    """Build a complete plan for an integral in-region rate tuple.

    Raises:
        NotInRegionError: rates are fractional or outside the region.
        FieldTooSmallError: some access set needs more evaluation points
            than GF(p) has nonzero elements.
        PlanningFailedError: the scaling search dead-ended (GF(2) only).
    """
    if len(rates) != acc.K:
        raise ValueError(f"expected {acc.K} rates, got {len(rates)}")
    largest = max(len(s) for s in acc.sets)
    if field.p - 1 < largest:
        raise FieldTooSmallError(
            f"access set of size {largest} needs p-1 >= {largest}, got p={field.p}"
        )
    quotas = augment_quotas(acc, rates)
    reserved = find_sdr(acc, quotas)
    bases = [tail_basis(field, quotas[k - 1], len(acc.user_set(k))) for k in range(1, acc.K + 1)]
    perms = tuple(
        choose_permutation(field, bases[k - 1], acc.sorted_set(k), reserved.sorted_block(k))
        for k in range(1, acc.K + 1)
    )
    rest_alphas = _ones_alphas(acc)
    c, d, owner = build_split(field, acc, quotas, reserved, perms, bases, rest_alphas)
    zeta = choose_zeta(field, c, d, seed)
    alphas = []
    for k in range(1, acc.K + 1):
        per_user = dict(rest_alphas[k - 1])
        for n in reserved.sorted_block(k):
            per_user[n] = zeta[n - 1]
        alphas.append(per_user)
    return Plan(
        field=field,
        access=acc,
        rates=tuple(int(r) for r in rates),
        quotas=quotas,
        reserved=reserved,
        perms=perms,
        alphas=tuple(alphas),
    )


def plan_decomposition(plan: Plan) -> CorrectnessDecomposition:
    """Recompute the split form of a finished plan's correctness matrix."""
    acc = plan.access
    bases = [
        tail_basis(plan.field, plan.quotas[k - 1], len(acc.user_set(k)))
        for k in range(1, acc.K + 1)
    ]
    c, d, owner = build_split(
        plan.field, acc, plan.quotas, plan.reserved, plan.perms, bases, plan.alphas
    )
    zeta = [plan.alphas[owner[i] - 1][i + 1] for i in range(acc.N)]
    p = plan.field.p
    full = [
        [(z * cv + dv) % p for cv, dv in zip(crow, drow)]
        for z, crow, drow in zip(zeta, c, d)
    ]
    return CorrectnessDecomposition(c=c, d=d, zeta=zeta, matrix=full)


def plan_from_parameters(
    field: Field,
    acc: AccessStructure,
    rates: Sequence[int],
    quotas: Sequence[int],
    reserved: SdrAssignment,
    perms: Sequence,
    alphas: Sequence,
) -> Plan:
    """Assemble and validate a plan from externally supplied constants.

    Used for deserialization and for reproducing published worked
    examples.  All structural invariants are rechecked, and the
    correctness matrix must come out invertible.
    """
    report = in_capacity_region(acc, rates)
    if not report.ok:
        raise NotInRegionError(report.describe())
    if any(int(r) != Fraction(r) for r in rates):
        raise NotInRegionError("plans carry integral rates only")
    if not validate_quotas(acc, rates, quotas):
        raise ValueError("padded lengths fail the augmentation invariants")
    if not validate_sdr(acc, quotas, reserved):
        raise ValueError("reserved blocks are not a valid distinct-representative pick")
    largest = max(len(s) for s in acc.sets)
    if field.p - 1 < largest:
        raise FieldTooSmallError(
            f"access set of size {largest} needs p-1 >= {largest}, got p={field.p}"
        )
    for k in range(1, acc.K + 1):
        size = len(acc.user_set(k))
        if sorted(perms[k - 1]) != list(range(1, size + 1)):
            raise ValueError(f"user {k}: not a permutation of 1..{size}")
        per_user = alphas[k - 1]
        if set(per_user) != acc.user_set(k) or any(a % field.p == 0 for a in per_user.values()):
            raise ValueError(f"user {k}: scalings must cover the access set and be nonzero")
    plan = Plan(
        field=field,
        access=acc,
        rates=tuple(int(r) for r in rates),
        quotas=tuple(int(r) for r in quotas),
        reserved=reserved,
        perms=tuple(tuple(p_) for p_ in perms),
        alphas=tuple(dict(a) for a in alphas),
    )
    dec = plan_decomposition(plan)
    if linalg.det(field, dec.matrix) == 0:
        raise SingularMatrixError("supplied constants give a singular correctness matrix")
    return plan
