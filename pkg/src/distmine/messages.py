"""Typed site/center messages, canonical payload sizing, and trace recording.

Every exchange between actors is a self-contained, serializable value, so
the in-process simulation could be replaced by real transport without
touching the algorithms. Payload bytes follow a fixed canonical encoding
(8 bytes per header field, 4 per item id, 8 per count) so byte metrics are
implementation-independent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .dataset import Itemset
from .miner import itemset_key

CountEntry = tuple[Itemset, int]


def _check_sorted(itemsets) -> None:
    keys = [itemset_key(x) for x in itemsets]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        raise ValueError("message itemsets must be (length, lex) sorted and duplicate-free")


@dataclass(frozen=True)
class LocalReport:
    """A site's locally frequent candidates for level k, with local counts."""

    site_id: int
    k: int
    entries: tuple[CountEntry, ...]

    def __post_init__(self) -> None:
        _check_sorted([x for x, _ in self.entries])


@dataclass(frozen=True)
class CountRequest:
    """Center asks a site for the local counts of the given itemsets."""

    k: int
    itemsets: tuple[Itemset, ...]

    def __post_init__(self) -> None:
        _check_sorted(self.itemsets)


@dataclass(frozen=True)
class CountResponse:
    """A site's answer to a CountRequest, itemset for itemset."""

    site_id: int
    k: int
    counts: tuple[CountEntry, ...]

    def __post_init__(self) -> None:
        _check_sorted([x for x, _ in self.counts])


@dataclass(frozen=True)
class GlobalResult:
    """Globally frequent level-k itemsets with global counts; continue_flag
    False tells sites the level-wise loop is over."""

    k: int
    frequent: tuple[CountEntry, ...]
    continue_flag: bool

    def __post_init__(self) -> None:
        _check_sorted([x for x, _ in self.frequent])


ProtocolMessage = Union[LocalReport, CountRequest, CountResponse, GlobalResult]

_HEADER_FIELDS = {LocalReport: 2, CountRequest: 1, CountResponse: 2, GlobalResult: 2}


def _entries_of(msg: ProtocolMessage) -> tuple:
    if isinstance(msg, LocalReport):
        return msg.entries
    if isinstance(msg, CountRequest):
        return msg.itemsets
    if isinstance(msg, CountResponse):
        return msg.counts
    return msg.frequent


def payload_itemsets(msg: ProtocolMessage) -> int:
    """Number of itemsets carried by a message."""
    return len(_entries_of(msg))


def canonical_size(msg: ProtocolMessage) -> int:
    """Canonical payload size in bytes."""
    size = 8 * _HEADER_FIELDS[type(msg)]
    if isinstance(msg, CountRequest):
        size += sum(4 * len(x) for x in msg.itemsets)
    else:
        size += sum(4 * len(x) + 8 for x, _ in _entries_of(msg))
    return size


@dataclass(frozen=True)
class TraceRecord:
    """One sent message, as recorded in the optional run trace."""

    seq: int
    src: str
    dst: str
    k: int
    type: str
    items: int
    bytes: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "seq": self.seq,
                "from": self.src,
                "to": self.dst,
                "k": self.k,
                "type": self.type,
                "items": self.items,
                "bytes": self.bytes,
            },
            separators=(",", ":"),
        )


class MessageLog:
    """Records every message and accumulates message/byte counters.

    ``colocated_pair`` names two actors sharing a host (the center rides on
    site 0); when ``count_colocated`` is False their exchanges still appear
    in the trace but are excluded from the counters.
    """

    def __init__(
        self,
        count_colocated: bool = True,
        colocated_pair: tuple[str, str] | None = None,
    ) -> None:
        self.trace: list[TraceRecord] = []
        self.messages_sent = 0
        self.payload_bytes = 0
        self._skip = (
            frozenset(colocated_pair)
            if colocated_pair is not None and not count_colocated
            else None
        )

    def send(self, src: str, dst: str, msg: ProtocolMessage) -> None:
        size = canonical_size(msg)
        self.trace.append(
            TraceRecord(
                seq=len(self.trace),
                src=src,
                dst=dst,
                k=msg.k,
                type=type(msg).__name__,
                items=payload_itemsets(msg),
                bytes=size,
            )
        )
        if self._skip is not None and frozenset((src, dst)) == self._skip:
            return
        self.messages_sent += 1
        self.payload_bytes += size


@dataclass(frozen=True)
class RoundMetrics:
    """Per-level counters shared by all distributed runs.

    Candidate counters are distinct-across-sites: ``candidates_generated``
    is the number of distinct itemsets proposed anywhere this round and
    ``candidates_after_local_prune`` the distinct itemsets actually counted.
    ``llk_total`` sums the entries of all local reports.
    """

    k: int
    candidates_generated: int
    candidates_after_local_prune: int
    messages_sent: int
    payload_bytes: int
    llk_total: int
    lk_size: int
