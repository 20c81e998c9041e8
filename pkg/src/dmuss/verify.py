"""Machine-checkable guarantees: correctness, storage entropy, privacy.

Everything the scheme promises is a statement about the linear transfer
map T from (messages, free pads) to shares, with the inputs uniform:

* storage entropy: the N shares are jointly uniform iff rank(T) = N;
* pairwise privacy: observer k' learns nothing about user k's message iff
  stacking the w_k coordinate selector onto T's rows for A_{k'} raises
  the rank by exactly R_k (every message value stays equally likely);
* correctness: each user's local interpolation returns its message.

The rank criteria are exact, not statistical.  For tiny instances
:func:`brute_force_audit` additionally enumerates every input and checks
the distributions themselves -- uniformity of shares and exact
independence per pair -- giving an oracle the rank arguments must agree
with.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg
from .codec import TransferMap, decode, encode, split_transfer_input, transfer_map
from .errors import TooLargeError
from .planner import Plan

AUDIT_INPUT_CAP = 20000  # p**N beyond this refuses to enumerate


def _as_transfer_map(target) -> TransferMap:
    return transfer_map(target) if isinstance(target, Plan) else target


@dataclass
class PairPrivacy:
    """Rank bookkeeping for one ordered (secret owner, observer) pair."""

    secret_user: int
    observer: int
    base_rank: int  # rank of T restricted to the observer's nodes
    joint_rank: int  # rank after stacking the secret-message selector
    required: int  # R_k: ranks must differ by exactly this
    private: bool

    @property
    def leaked(self) -> int:
        """Message symbols the observer can resolve (0 when private)."""
        return self.required - (self.joint_rank - self.base_rank)


@dataclass
class PrivacyReport:
    pairs: list
    vacuous: bool  # single user: nothing to hide from

    @property
    def all_private(self) -> bool:
        return all(p.private for p in self.pairs)


def check_privacy(target) -> PrivacyReport:
    """Exact pairwise-privacy check via rank comparison on the transfer map."""
    tm = _as_transfer_map(target)
    k_count = len(tm.rates)
    pairs = []
    for k in range(1, k_count + 1):
        selector = tm.message_selector(k)
        for k2 in range(1, k_count + 1):
            if k2 == k:
                continue
            observed = tm.rows_for_nodes(tm.access.user_set(k2))
            base = linalg.rank(tm.field, observed)
            joint = linalg.rank(tm.field, observed + selector)
            required = tm.rates[k - 1]
            pairs.append(
                PairPrivacy(
                    secret_user=k,
                    observer=k2,
                    base_rank=base,
                    joint_rank=joint,
                    required=required,
                    private=joint - base == required,
                )
            )
    return PrivacyReport(pairs=pairs, vacuous=k_count == 1)


@dataclass
class EntropyReport:
    rank: int
    nodes: int

    @property
    def full(self) -> bool:
        return self.rank == self.nodes


def check_entropy(target) -> EntropyReport:
    """Shares are jointly uniform iff the transfer map has full rank."""
    tm = _as_transfer_map(target)
    return EntropyReport(rank=linalg.rank(tm.field, tm.matrix), nodes=len(tm.matrix))


@dataclass
class CorrectnessReport:
    trials: int
    failures: int
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def check_correctness(plan: Plan, trials: int = 100, seed: int = 0) -> CorrectnessReport:
    """Randomized end-to-end round-trips plus the defining share identity.

    Each trial encodes fresh uniform messages and checks, for every user,
    that decoding returns the message and that the user's polynomial
    meets its scaled shares at every evaluation point.
    """
    rng = random.Random(seed)
    p = plan.field.p
    failures = 0
    first = None

    def note(msg):
        nonlocal failures, first
        failures += 1
        if first is None:
            first = msg

    for trial in range(trials):
        msgs = [[rng.randrange(p) for _ in range(r)] for r in plan.rates]
        res = encode(plan, msgs, seed=rng.randrange(1 << 30))
        for k in range(1, plan.K + 1):
            got = decode(plan, k, res.shares)
            if got.message != msgs[k - 1]:
                note(f"trial {trial}: user {k} decoded {got.message} != {msgs[k - 1]}")
        # defining identity: g_k(gamma_{k,i}) == -alpha * Y_n
        for k in range(1, plan.K + 1):
            coeffs = (
                list(msgs[k - 1]) + list(res.pads.free[k - 1]) + list(res.pads.tail[k - 1])
            )
            nodes = plan.access.sorted_set(k)
            for g, n in zip(plan.gammas(k), nodes):
                val = 0
                for c in reversed(coeffs):
                    val = (val * g + c) % p
                want = -plan.alpha(k, n) * res.shares[n - 1] % p
                if val != want:
                    note(f"trial {trial}: user {k} node {n}: share identity broken")
    return CorrectnessReport(trials=trials, failures=failures, first_failure=first)


@dataclass
class AuditPair:
    secret_user: int
    observer: int
    independent: bool


@dataclass
class AuditReport:
    """Exhaustive-enumeration verdicts on a small instance."""

    inputs: int
    bijective: bool
    pairs: list
    roundtrip_checked: bool
    roundtrip_failures: int

    @property
    def all_independent(self) -> bool:
        return all(p.independent for p in self.pairs)

    @property
    def ok(self) -> bool:
        return (
            self.bijective
            and self.all_independent
            and (not self.roundtrip_checked or self.roundtrip_failures == 0)
        )


def brute_force_audit(target, max_inputs: int = AUDIT_INPUT_CAP) -> AuditReport:
    """Enumerate all p**N inputs and check the promised distributions.

    Checks (a) the input-to-shares map is a bijection, (b) for every
    ordered pair, the observer's share tuple is exactly independent of the
    secret user's message tuple, and (c), when given a full plan rather
    than a bare transfer map, that every input round-trips through decode.

    Raises:
        TooLargeError: p**N exceeds ``max_inputs`` (itself capped at
            AUDIT_INPUT_CAP).
    """
    plan = target if isinstance(target, Plan) else None
    tm = _as_transfer_map(target)
    p = tm.field.p
    n = len(tm.matrix)
    total = p ** tm.input_dim
    cap = min(max_inputs, AUDIT_INPUT_CAP)
    if total > cap:
        raise TooLargeError(f"{p}**{tm.input_dim} = {total} inputs exceeds cap {cap}")

    k_count = len(tm.rates)
    msg_offsets = tm.message_offsets
    node_lists = [sorted(tm.access.user_set(k)) for k in range(1, k_count + 1)]
    ordered_pairs = [
        (k, k2) for k in range(1, k_count + 1) for k2 in range(1, k_count + 1) if k != k2
    ]
    counts = {pair: {} for pair in ordered_pairs}

    decoders = []
    if plan is not None:
        for k in range(1, k_count + 1):
            gammas = plan.gammas(k)
            size = len(gammas)
            vander = [[pow(g, r, p) for r in range(size)] for g in gammas]
            inv = linalg.inverse(plan.field, vander)
            negalpha = [-plan.alpha(k, nd) % p for nd in node_lists[k - 1]]
            decoders.append((inv, negalpha))

    seen = set()
    roundtrip_failures = 0
    matrix = tm.matrix
    for x in itertools.product(range(p), repeat=tm.input_dim):
        y = [sum(c * v for c, v in zip(row, x)) % p for row in matrix]
        seen.add(tuple(y))
        for pair in ordered_pairs:
            k, k2 = pair
            w = x[msg_offsets[k - 1] : msg_offsets[k - 1] + tm.rates[k - 1]]
            obs = tuple(y[nd - 1] for nd in node_lists[k2 - 1])
            key = (tuple(w), obs)
            counts[pair][key] = counts[pair].get(key, 0) + 1
        if plan is not None:
            for k in range(1, k_count + 1):
                inv, negalpha = decoders[k - 1]
                rhs = [na * y[nd - 1] % p for na, nd in zip(negalpha, node_lists[k - 1])]
                r_k = tm.rates[k - 1]
                w_hat = [
                    sum(c * v for c, v in zip(inv[i], rhs)) % p for i in range(r_k)
                ]
                if w_hat != list(x[msg_offsets[k - 1] : msg_offsets[k - 1] + r_k]):
                    roundtrip_failures += 1

    pair_reports = []
    for pair in ordered_pairs:
        k, _ = pair
        tally = counts[pair]
        w_values = {w for w, _ in tally}
        obs_values = {o for _, o in tally}
        independent = len(w_values) == p ** tm.rates[k - 1]
        if independent:
            for obs in obs_values:
                per_w = [tally.get((w, obs), 0) for w in w_values]
                if len(set(per_w)) != 1:
                    independent = False
                    break
        pair_reports.append(AuditPair(secret_user=pair[0], observer=pair[1], independent=independent))

    return AuditReport(
        inputs=total,
        bijective=len(seen) == total,
        pairs=pair_reports,
        roundtrip_checked=plan is not None,
        roundtrip_failures=roundtrip_failures,
    )
