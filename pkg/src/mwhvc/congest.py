"""Round layout and message accounting for the bipartite server/client network.

Servers are hypergraph vertices, clients are hyperedges, and a link joins
``v`` and ``e`` whenever ``v`` is in ``e``.  Iteration 0 takes two rounds
(weight/degree up, minimum pair down); each later iteration takes four:

    r1  CoveredUp     joining vertex -> its live edges
    r2  CoveredDown   newly covered edge -> all its members
    r3  RaiseStuck    live vertex -> its live edges (1 bit)
    r4  DealBit       uncovered edge -> its members (1 bit: multiply or keep)

Field widths are fixed per kind, so every message of a kind costs the same
number of bits.  The per-message budget is
``ceil(log2(W+1)) + f * ceil(log2(n+1)) + 8``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .errors import BudgetViolation

__all__ = [
    "Kind",
    "Message",
    "MessageStats",
    "MessageLedger",
    "bitlen",
    "budget",
    "message_bits",
    "account",
    "schedule_iteration",
    "total_rounds",
    "ledger_summary",
]

ROUNDS_PER_ITERATION = 4


class Kind(str, Enum):
    WEIGHT_DEGREE = "WeightDegree"
    MIN_PAIR = "MinPair"
    LOCAL_DEGREE = "LocalDegree"
    COVERED_UP = "CoveredUp"
    COVERED_DOWN = "CoveredDown"
    RAISE_STUCK = "RaiseStuck"
    DEAL_BIT = "DealBit"


def bitlen(x: int) -> int:
    """``ceil(log2(x + 1))``: bits needed to write ``x >= 0`` in binary."""
    return int(x).bit_length()


def budget(n: int, W: int, f: int) -> int:
    return bitlen(W) + f * bitlen(n) + 8


def message_bits(kind: Kind, n: int, W: int, f: int) -> int:
    kind = Kind(kind)
    if kind in (Kind.WEIGHT_DEGREE, Kind.MIN_PAIR):
        # weight field + degree field; degrees never exceed n**f
        return bitlen(W) + bitlen(n**f)
    if kind is Kind.LOCAL_DEGREE:
        return bitlen(n**f)
    if kind in (Kind.COVERED_UP, Kind.COVERED_DOWN):
        return 2
    return 1


@dataclass(frozen=True)
class Message:
    kind: Kind
    src: tuple[str, int]
    dst: tuple[str, int]
    round: int
    bits: int


def account(m: Message | Kind, n: int, W: int, f: int) -> int:
    """Bit cost of ``m``; raises :class:`BudgetViolation` above the budget."""
    kind = m.kind if isinstance(m, Message) else Kind(m)
    bits = message_bits(kind, n, W, f)
    limit = budget(n, W, f)
    if bits > limit:
        raise BudgetViolation(
            f"{kind.value} message needs {bits} bits, budget is {limit}",
            payload={"kind": kind.value, "bits": bits, "budget": limit, "n": n, "W": W, "f": f},
        )
    return bits


def schedule_iteration(i: int) -> dict[Kind, int]:
    """Round index of each message kind sent during iteration ``i``."""
    if i == 0:
        return {Kind.WEIGHT_DEGREE: 0, Kind.MIN_PAIR: 1, Kind.LOCAL_DEGREE: 1}
    base = 2 + ROUNDS_PER_ITERATION * (i - 1)
    return {
        Kind.COVERED_UP: base,
        Kind.COVERED_DOWN: base + 1,
        Kind.RAISE_STUCK: base + 2,
        Kind.DEAL_BIT: base + 3,
    }


def total_rounds(iterations: int, m: int) -> int:
    """Rounds of a run; an edgeless instance exchanges nothing."""
    if m == 0:
        return 0
    return 2 + ROUNDS_PER_ITERATION * iterations


@dataclass
class MessageStats:
    total_messages: int = 0
    total_bits: int = 0
    max_bits: int = 0
    budget: int = 0
    per_round: dict[int, int] = field(default_factory=dict)
    per_kind: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "total_messages": self.total_messages,
            "total_bits": self.total_bits,
            "max_bits": self.max_bits,
            "budget": self.budget,
            "per_round": [self.per_round.get(r, 0) for r in range(max(self.per_round, default=-1) + 1)],
            "per_kind": dict(sorted(self.per_kind.items())),
        }


class MessageLedger:
    """Accounts every message of one run.

    Individual :class:`Message` records are kept only with ``keep=True``; the
    aggregate counters are always maintained.
    """

    def __init__(self, n: int, W: int, f: int, keep: bool = False):
        self.n, self.W, self.f = n, W, max(f, 1)
        self.keep = keep
        self.messages: list[Message] = []
        self._bits = {k: account(k, self.n, self.W, self.f) for k in Kind}
        self._per_round: Counter = Counter()
        self._per_kind: Counter = Counter()
        self._total_bits = 0
        self._max_bits = 0

    def send(self, kind: Kind, src, dst, iteration: int) -> None:
        rnd = schedule_iteration(iteration)[kind]
        bits = self._bits[kind]
        self._per_round[rnd] += 1
        self._per_kind[kind.value] += 1
        self._total_bits += bits
        if bits > self._max_bits:
            self._max_bits = bits
        if self.keep:
            self.messages.append(Message(kind, src, dst, rnd, bits))

    def summary(self) -> MessageStats:
        return MessageStats(
            total_messages=sum(self._per_round.values()),
            total_bits=self._total_bits,
            max_bits=self._max_bits,
            budget=budget(self.n, self.W, self.f),
            per_round=dict(sorted(self._per_round.items())),
            per_kind=dict(sorted(self._per_kind.items())),
        )


def ledger_summary(ledger: MessageLedger) -> MessageStats:
    return ledger.summary()
