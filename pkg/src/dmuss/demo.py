"""A fully worked reference instance.

Four users share eight nodes over GF(11) with the generator fixed to 8
and rates (1, 2, 2, 3); the rate tuple is tight (it sums to N), so the
padded lengths equal the rates and the only randomness is the solved tail
coefficients.  Every planning constant below is pinned rather than
recomputed so the instance encodes to the same shares on every machine;
the regression suite and the ``demo`` CLI command both run it.
"""

from __future__ import annotations

from .access import AccessStructure
from .codec import EncodeResult, encode_with_pads
from .gf import Field
from .planner import Plan, plan_from_parameters
from .sdr import SdrAssignment

P = 11
GAMMA = 8
ACCESS = ((1, 6, 7, 8), (1, 3, 4, 7), (1, 2, 3, 8), (2, 4, 5, 6, 7))
RATES = (1, 2, 2, 3)
QUOTAS = (1, 2, 2, 3)
RESERVED = ((8,), (3, 4), (1, 2), (5, 6, 7))
PERMS = ((4, 2, 3, 1), (3, 2, 1, 4), (1, 2, 3, 4), (4, 5, 1, 2, 3))
# share scalings: 1 everywhere except two spots for user 2
SPECIAL_ALPHAS = {(2, 3): 7, (2, 7): 8}
MESSAGES = ([1], [2, 6], [4, 0], [3, 5, 7])


def demo_field() -> Field:
    return Field(P, gamma=GAMMA)


def demo_access() -> AccessStructure:
    return AccessStructure.of(ACCESS)


def demo_plan() -> Plan:
    acc = demo_access()
    alphas = []
    for k in range(1, acc.K + 1):
        alphas.append({n: SPECIAL_ALPHAS.get((k, n), 1) for n in acc.sorted_set(k)})
    return plan_from_parameters(
        field=demo_field(),
        acc=acc,
        rates=RATES,
        quotas=QUOTAS,
        reserved=SdrAssignment(blocks=tuple(frozenset(z) for z in RESERVED)),
        perms=PERMS,
        alphas=alphas,
    )


def demo_messages() -> list:
    return [list(m) for m in MESSAGES]


def demo_encode(plan: Plan | None = None) -> EncodeResult:
    """Encode the pinned messages (rates are tight, so no free pads)."""
    plan = plan or demo_plan()
    return encode_with_pads(plan, demo_messages(), [[] for _ in range(plan.K)])
