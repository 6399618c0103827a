"""Center-coordinated distributed mining with heavy-set candidate pruning.

Each site keeps its partition as a bit matrix and reports only locally
frequent candidates; the center combines reports, bounds the global count
of partially reported itemsets, polls the silent sites for survivors, and
broadcasts each level's globally frequent itemsets. Message traffic per
level stays within 4n for n sites: n reports, at most n batched count
requests, their responses, and n result broadcasts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .dataset import Itemset, TransactionDb
from .lmatrix import LMatrix, ScanCounter
from .messages import (
    CountRequest,
    CountResponse,
    GlobalResult,
    LocalReport,
    MessageLog,
    RoundMetrics,
)
from .miner import MiningResult, apriori_gen, itemset_key, parse_minsup, threshold


class ProtocolError(RuntimeError):
    """A site or the center received an out-of-contract message."""


def local_support(matrix: LMatrix, itemset: Itemset) -> int:
    """Support on a site's matrix; items the site has never seen count 0."""
    if itemset and itemset[-1] >= matrix.n_cols:
        return 0
    return matrix.support(itemset)


def local_prune(
    candidates: list[Itemset],
    subset_counts: dict[Itemset, int],
    site_threshold: int,
) -> list[Itemset]:
    """Drop candidates whose best possible local count is below threshold.

    The bound for a k-candidate is the minimum local count over its (k-1)-
    subsets, which support can never exceed. Every subset must already be in
    ``subset_counts``; a missing one is a pipeline bug, not user error.
    """
    if site_threshold <= 0:
        return list(candidates)
    kept = []
    for cand in candidates:
        try:
            bound = min(
                subset_counts[cand[:j] + cand[j + 1 :]] for j in range(len(cand))
            )
        except KeyError as err:
            raise ProtocolError(
                f"no local count for subset {err.args[0]!r} of candidate {cand!r}"
            ) from None
        if bound >= site_threshold:
            kept.append(cand)
    return kept


class LocalSite:
    """Per-partition state machine: builds reports, answers count requests,
    and tracks which itemsets are heavy here (locally and globally frequent)."""

    def __init__(self, site_id: int, part: TransactionDb, minsup: Fraction) -> None:
        if part.size == 0:
            raise ValueError(f"site {site_id}: empty partition")
        self.site_id = site_id
        self.partition = part
        self.scan_counter = ScanCounter()
        self.matrix = LMatrix.from_db(part, self.scan_counter)
        self.size = part.size
        self.site_threshold = threshold(minsup, part.size)
        self.universe = part.universe
        self.heavy_prev: set[Itemset] = set()
        self.local_counts: dict[Itemset, int] = {}
        self.flag = True
        self.last_candidates: list[Itemset] = []
        self.last_survivors: list[Itemset] = []

    def local_candidates(self, k: int) -> list[Itemset]:
        """Level-k candidates: every single item at k=1, otherwise the
        Apriori join over the previous level's heavy itemsets."""
        if k == 1:
            return [(i,) for i in range(self.universe)]
        return apriori_gen(sorted(self.heavy_prev))

    def build_report(self, k: int) -> LocalReport:
        """Generate, prune, and count level-k candidates; report the locally
        frequent ones. The report is sent even when empty so the center can
        tell "nothing frequent" from "no reply"."""
        candidates = self.local_candidates(k)
        if k == 1:
            survivors = candidates
        else:
            survivors = local_prune(candidates, self.local_counts, self.site_threshold)
        counts = self.matrix.support_batch(survivors)
        self.local_counts.update(zip(survivors, counts))
        self.last_candidates = candidates
        self.last_survivors = survivors
        entries = tuple(
            (x, n) for x, n in zip(survivors, counts) if n >= self.site_threshold
        )
        return LocalReport(site_id=self.site_id, k=k, entries=entries)

    def handle_count_request(self, req: CountRequest) -> CountResponse:
        """Answer exact local counts from the matrix (no raw rescan)."""
        counts = []
        for x in req.itemsets:
            n = local_support(self.matrix, x)
            self.local_counts[x] = n
            counts.append((x, n))
        return CountResponse(site_id=self.site_id, k=req.k, counts=tuple(counts))

    def update_heavy(self, result: GlobalResult) -> None:
        """Recompute the heavy set from the level's global result.

        Counts from this round are reused; only itemsets this site never
        counted are recounted on the matrix.
        """
        heavy = set()
        for x, _ in result.frequent:
            n = self.local_counts.get(x)
            if n is None:
                n = local_support(self.matrix, x)
                self.local_counts[x] = n
            if n >= self.site_threshold:
                heavy.add(x)
        self.heavy_prev = heavy
        self.flag = result.continue_flag


class _Pending(NamedTuple):
    count: int
    awaiting: set[int]


class AggregationOutcome(NamedTuple):
    immediately_frequent: list[tuple[Itemset, int]]
    pruned: list[Itemset]
    requests: dict[int, CountRequest]


class CenterSite:
    """Combines local reports into global decisions for one level at a time."""

    def __init__(self, site_sizes: list[int], minsup: Fraction) -> None:
        self.n_sites = len(site_sizes)
        self.site_sizes = list(site_sizes)
        self.total_size = sum(site_sizes)
        self.global_threshold = threshold(minsup, self.total_size)
        self.site_thresholds = [threshold(minsup, d) for d in site_sizes]
        self.flag = True
        self.level = 0
        self._immediate: list[tuple[Itemset, int]] = []
        self._pending: dict[Itemset, _Pending] = {}

    def aggregate(self, reports: list[LocalReport]) -> AggregationOutcome:
        """Process one report per site: decide fully reported itemsets on the
        spot, bound the rest, and batch one count request per silent site.

        An itemset reported by every site has its exact global count (the sum)
        and each addend cleared its local threshold, so it is frequent without
        polling. Otherwise a silent site can contribute at most its local
        threshold minus one; if even that optimistic total misses the global
        threshold the itemset is pruned, else the silent sites are polled.
        """
        if sorted(r.site_id for r in reports) != list(range(self.n_sites)):
            raise ProtocolError("expected exactly one report per site")
        levels = {r.k for r in reports}
        if len(levels) != 1:
            raise ProtocolError(f"reports span multiple levels: {sorted(levels)}")
        self.level = k = levels.pop()

        origins: dict[Itemset, dict[int, int]] = {}
        for rep in sorted(reports, key=lambda r: r.site_id):
            for x, n in rep.entries:
                origins.setdefault(x, {})[rep.site_id] = n
        if not origins:
            self.flag = False

        immediate: list[tuple[Itemset, int]] = []
        pruned: list[Itemset] = []
        pending: dict[Itemset, _Pending] = {}
        for x in sorted(origins, key=itemset_key):
            counts = origins[x]
            reported = sum(counts.values())
            if len(counts) == self.n_sites:
                immediate.append((x, reported))
                continue
            silent = [i for i in range(self.n_sites) if i not in counts]
            max_count = reported + sum(self.site_thresholds[i] - 1 for i in silent)
            if max_count < self.global_threshold:
                pruned.append(x)
            else:
                pending[x] = _Pending(count=reported, awaiting=set(silent))

        requests: dict[int, CountRequest] = {}
        for i in range(self.n_sites):
            wanted = tuple(
                x for x in sorted(pending, key=itemset_key) if i in pending[x].awaiting
            )
            if wanted:
                requests[i] = CountRequest(k=k, itemsets=wanted)
        self._immediate = immediate
        self._pending = pending
        return AggregationOutcome(immediate, pruned, requests)

    def finalize(self, responses: list[CountResponse]) -> GlobalResult:
        """Fold poll responses into totals and close the level.

        The loop continues only if the level produced more frequent itemsets
        than its own size k (any (k+1)-itemset needs k+1 frequent k-subsets).
        """
        for resp in responses:
            if resp.k != self.level:
                raise ProtocolError(
                    f"response for level {resp.k} during level {self.level}"
                )
            for x, n in resp.counts:
                pend = self._pending.get(x)
                if pend is None or resp.site_id not in pend.awaiting:
                    raise ProtocolError(
                        f"site {resp.site_id} answered unrequested itemset {x!r}"
                    )
                pend.awaiting.discard(resp.site_id)
                self._pending[x] = _Pending(pend.count + n, pend.awaiting)
        still_waiting = [x for x, p in self._pending.items() if p.awaiting]
        if still_waiting:
            raise ProtocolError(f"missing count responses for {still_waiting!r}")

        frequent = list(self._immediate)
        frequent.extend(
            (x, p.count)
            for x, p in self._pending.items()
            if p.count >= self.global_threshold
        )
        frequent.sort(key=lambda e: itemset_key(e[0]))
        self.flag = self.flag and len(frequent) >= self.level + 1
        self._immediate = []
        self._pending = {}
        return GlobalResult(
            k=self.level, frequent=tuple(frequent), continue_flag=self.flag
        )


class ImprovedRun:
    """One deterministic simulated run of the distributed protocol.

    Rounds are barrier-synchronized and all actors run in-process; state
    moves only through protocol messages. After ``run()`` the instance
    exposes per-round metrics, the full message trace, the sites (for scan
    counters), and everything pruned along the way.
    """

    def __init__(
        self,
        partitions: list[TransactionDb],
        minsup,
        *,
        count_colocated_messages: bool = True,
    ) -> None:
        if not partitions:
            raise ValueError("need at least one partition")
        self.minsup = parse_minsup(minsup)
        self.sites = [
            LocalSite(i, part, self.minsup) for i, part in enumerate(partitions)
        ]
        self.center = CenterSite([s.size for s in self.sites], self.minsup)
        self.log = MessageLog(
            count_colocated=count_colocated_messages,
            colocated_pair=("site:0", "center"),
        )
        self.metrics: list[RoundMetrics] = []
        self.locally_pruned: list[tuple[int, int, Itemset]] = []
        self.maxcount_pruned: list[tuple[int, Itemset]] = []
        self.result: MiningResult | None = None

    def run(self) -> MiningResult:
        if self.result is not None:
            raise RuntimeError("run() may only be called once per instance")
        frequent: dict[Itemset, int] = {}
        k = 0
        while True:
            k += 1
            outcome = self._run_round(k)
            frequent.update(dict(outcome.frequent))
            if not outcome.continue_flag:
                break
        self.result = MiningResult(
            minsup=self.minsup, db_size=self.center.total_size, frequent=frequent
        )
        return self.result

    def _run_round(self, k: int) -> GlobalResult:
        msgs0, bytes0 = self.log.messages_sent, self.log.payload_bytes
        cand_union: set[Itemset] = set()
        surv_union: set[Itemset] = set()
        llk_total = 0

        reports = []
        for site in self.sites:
            rep = site.build_report(k)
            cand_union.update(site.last_candidates)
            surv_union.update(site.last_survivors)
            self.locally_pruned.extend(
                (k, site.site_id, x)
                for x in set(site.last_candidates) - set(site.last_survivors)
            )
            llk_total += len(rep.entries)
            self.log.send(f"site:{site.site_id}", "center", rep)
            reports.append(rep)

        immediate, pruned, requests = self.center.aggregate(reports)
        self.maxcount_pruned.extend((k, x) for x in pruned)

        responses = []
        for site_id in sorted(requests):
            req = requests[site_id]
            self.log.send("center", f"site:{site_id}", req)
            resp = self.sites[site_id].handle_count_request(req)
            self.log.send(f"site:{site_id}", "center", resp)
            responses.append(resp)

        outcome = self.center.finalize(responses)
        for site in self.sites:
            self.log.send("center", f"site:{site.site_id}", outcome)
            site.update_heavy(outcome)

        self.metrics.append(
            RoundMetrics(
                k=k,
                candidates_generated=len(cand_union),
                candidates_after_local_prune=len(surv_union),
                messages_sent=self.log.messages_sent - msgs0,
                payload_bytes=self.log.payload_bytes - bytes0,
                llk_total=llk_total,
                lk_size=len(outcome.frequent),
            )
        )
        return outcome


def run_improved(
    partitions: list[TransactionDb],
    minsup,
    *,
    count_colocated_messages: bool = True,
) -> tuple[MiningResult, list[RoundMetrics]]:
    """Mine the union of ``partitions``; returns the result and per-round metrics.

    The result is exactly equal to sequential mining over the concatenated
    partitions.
    """
    run = ImprovedRun(
        partitions, minsup, count_colocated_messages=count_colocated_messages
    )
    result = run.run()
    return result, run.metrics
