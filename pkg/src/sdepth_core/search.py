"""
Exact Stanley depth by backtracking over interval partitions.

Elements are indexed in a linear extension of the order (total degree, then
lexicographic). In any partition the smallest uncovered element is the lo of
its interval, so the search only ever branches on the hi of that element.
Sets of elements are Python ints used as bitmaps over that index space.
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from math import comb
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sdepth_core import config
from sdepth_core.errors import PartitionError, PosetError, SearchBudgetExceeded
from sdepth_core.ideal import MonomialIdeal, divides
from sdepth_core.poset import (
    CharacteristicPoset,
    Interval,
    IntervalPartition,
    build_poset,
    partition_sdepth,
    rho,
)


class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SearchConfig:
    """
    node_budget: max intervals tried per decision call; in parallel mode it is
        shared out across the root branches.
    candidate_order: hi candidates by decreasing rho, then lexicographic.
    parallel: split the root branching over a process pool of `threads` workers.
    """

    node_budget: int = config.SDEPTH_NODE_BUDGET
    candidate_order: str = "rho-desc-lex"
    parallel: bool = False
    threads: int = config.SDEPTH_THREADS
    memo_limit: int = config.SDEPTH_MEMO_LIMIT

    def __post_init__(self):
        if self.node_budget <= 0:
            raise ValueError(f"node_budget must be positive, got {self.node_budget}")
        if self.candidate_order != "rho-desc-lex":
            raise ValueError(f"Unknown candidate order '{self.candidate_order}'")

    @classmethod
    def from_env(cls) -> "SearchConfig":
        return cls(
            node_budget=config.SDEPTH_NODE_BUDGET,
            parallel=config.SDEPTH_THREADS > 1,
            threads=max(1, config.SDEPTH_THREADS),
            memo_limit=config.SDEPTH_MEMO_LIMIT,
        )


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    partition: Optional[IntervalPartition] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


@dataclass(frozen=True)
class SdepthResult:
    value: int
    witness: IntervalPartition
    nodes: int = 0


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# -------------------------------------------------------------------
# Order structure of a poset, independent of k
# -------------------------------------------------------------------

class _LatticeIndex:
    def __init__(self, poset: CharacteristicPoset):
        self.poset = poset
        exps = poset.exponents()
        order = sorted(range(len(exps)), key=lambda i: (sum(exps[i]), exps[i]))
        self.codes = [poset.elements[i] for i in order]
        self.exps = [exps[i] for i in order]
        self.size = len(self.codes)
        self.full = (1 << self.size) - 1
        self.pos = {code: i for i, code in enumerate(self.codes)}
        self.rho = [rho(c, poset.g) for c in self.exps]
        self.degree = [sum(c) for c in self.exps]

        strides = poset.strides
        g = poset.g
        self.down = [0] * self.size
        for i, c in enumerate(self.exps):
            mask = 1 << i
            for j in range(poset.n):
                if c[j] > 0:
                    below = self.pos.get(self.codes[i] - strides[j])
                    if below is not None:
                        mask |= self.down[below]
            self.down[i] = mask
        self.up = [0] * self.size
        for i in range(self.size - 1, -1, -1):
            c = self.exps[i]
            mask = 1 << i
            for j in range(poset.n):
                if c[j] < g[j]:
                    mask |= self.up[self.pos[self.codes[i] + strides[j]]]
            self.up[i] = mask


# -------------------------------------------------------------------
# Decision procedure for a fixed k
# -------------------------------------------------------------------

class _Search:
    def __init__(self, index: _LatticeIndex, k: int, cfg: SearchConfig):
        self.ix = index
        self.k = k
        self.cfg = cfg
        self.tops = 0
        for i, r in enumerate(index.rho):
            if r >= k:
                self.tops |= 1 << i
        self._candidates: Dict[int, List[Tuple[int, int]]] = {}
        self.failed = set()
        self.nodes = 0
        # rank-count prune, squarefree only
        self.counting = index.poset.squarefree and k > 0
        if self.counting:
            self.coef = [
                [(-1) ** (j - i) * comb(k - i, j - i) for i in range(j + 1)]
                for j in range(k + 1)
            ]

    def candidates(self, u: int) -> List[Tuple[int, int]]:
        cached = self._candidates.get(u)
        if cached is not None:
            return cached
        ix = self.ix
        out = []
        for t in _bits(ix.up[u] & self.tops):
            out.append((t, ix.up[u] & ix.down[t]))
        out.sort(key=lambda pair: (-ix.rho[pair[0]], ix.exps[pair[0]]))
        self._candidates[u] = out
        return out

    def _interval_ranks(self, u: int, t: int) -> List[Tuple[int, int]]:
        s = self.ix.degree[u]
        w = self.ix.degree[t]
        return [(r, comb(w - s, r - s)) for r in range(s, min(w, self.k) + 1)]

    def _counting_ok(self, alpha: List[int]) -> bool:
        for row in self.coef:
            if sum(c * a for c, a in zip(row, alpha)) < 0:
                return False
        return True

    def _tops_ok(self, covered: int, affected: int) -> bool:
        ix = self.ix
        free_tops = self.tops & ~covered
        for v in _bits(affected & ~covered):
            if not ix.up[v] & free_tops:
                return False
        return True

    def _remember(self, covered: int) -> None:
        if len(self.failed) < self.cfg.memo_limit:
            self.failed.add(covered)

    def run(self, root_branch: Optional[int] = None) -> Tuple[SearchStatus, List[Tuple[int, int]]]:
        ix = self.ix
        if ix.size == 0:
            return SearchStatus.FOUND, []
        alpha = [0] * (self.k + 1)
        if self.counting:
            for d in ix.degree:
                if d <= self.k:
                    alpha[d] += 1
            if not self._counting_ok(alpha):
                return SearchStatus.NOT_FOUND, []
        if not self._tops_ok(0, ix.full):
            return SearchStatus.NOT_FOUND, []

        covered = 0
        chosen: List[Tuple[int, int]] = []
        root = self.candidates(0)
        if root_branch is not None:
            root = root[root_branch:root_branch + 1]
        # frame: [u, candidates, next position, applied (t, mask) or None]
        frames = [[0, root, 0, None]]
        while frames:
            frame = frames[-1]
            if frame[3] is not None:
                t, mask = frame[3]
                covered ^= mask
                if self.counting:
                    for r, cnt in self._interval_ranks(frame[0], t):
                        alpha[r] += cnt
                chosen.pop()
                frame[3] = None
            u, cands = frame[0], frame[1]
            advanced = False
            while frame[2] < len(cands):
                t, mask = cands[frame[2]]
                frame[2] += 1
                if mask & covered:
                    continue
                self.nodes += 1
                if self.nodes > self.cfg.node_budget:
                    return SearchStatus.BUDGET_EXCEEDED, []
                new_cov = covered | mask
                if new_cov == ix.full:
                    chosen.append((u, t))
                    return SearchStatus.FOUND, chosen
                if new_cov in self.failed:
                    continue
                if self.counting:
                    ranks = self._interval_ranks(u, t)
                    for r, cnt in ranks:
                        alpha[r] -= cnt
                    ok = self._counting_ok(alpha)
                    if not ok:
                        for r, cnt in ranks:
                            alpha[r] += cnt
                        self._remember(new_cov)
                        continue
                affected = 0
                for top in _bits(mask & self.tops):
                    affected |= ix.down[top]
                if not self._tops_ok(new_cov, affected):
                    if self.counting:
                        for r, cnt in self._interval_ranks(u, t):
                            alpha[r] += cnt
                    self._remember(new_cov)
                    continue
                covered = new_cov
                chosen.append((u, t))
                frame[3] = (t, mask)
                free = ix.full & ~covered
                nxt = (free & -free).bit_length() - 1
                frames.append([nxt, self.candidates(nxt), 0, None])
                advanced = True
                break
            if not advanced:
                self._remember(covered)
                frames.pop()
        return SearchStatus.NOT_FOUND, []


def _witness(index: _LatticeIndex, chosen: Sequence[Tuple[int, int]], rule: str) -> IntervalPartition:
    intervals = tuple(Interval(index.exps[u], index.exps[t], rule) for u, t in chosen)
    return IntervalPartition(index.poset, intervals)


def _run_branch(args) -> Tuple[SearchStatus, List[Tuple[int, int]], int]:
    poset, k, cfg, branch = args
    if cfg is None:
        return SearchStatus.BUDGET_EXCEEDED, [], 0
    search = _Search(_LatticeIndex(poset), k, cfg)
    status, chosen = search.run(root_branch=branch)
    return status, chosen, search.nodes


def _branch_configs(cfg: SearchConfig, branches: int) -> List[Optional[SearchConfig]]:
    """Split node_budget across root branches; a branch left with no nodes gets None."""
    share, extra = divmod(cfg.node_budget, branches)
    budgets = [share + (1 if b < extra else 0) for b in range(branches)]
    return [replace(cfg, node_budget=nb) if nb > 0 else None for nb in budgets]


def has_partition_min_rho(
    poset: CharacteristicPoset,
    k: int,
    cfg: Optional[SearchConfig] = None,
) -> SearchResult:
    """
    Decide whether the poset admits a partition whose interval tops all have
    rho >= k. Found carries a verified witness; NotFound is a complete refutation.
    """
    cfg = cfg or SearchConfig()
    if not 0 <= k <= poset.n:
        raise ValueError(f"k must lie in [0, {poset.n}], got {k}")
    index = _LatticeIndex(poset)

    if cfg.parallel and cfg.threads > 1 and index.size > 0:
        branches = len(_Search(index, k, cfg).candidates(0))
        if branches == 0:
            return SearchResult(SearchStatus.NOT_FOUND, None, 0)
        with Pool(min(cfg.threads, max(1, branches))) as pool:
            outcomes = pool.map(_run_branch, [(poset, k, c, b) for b, c in enumerate(_branch_configs(cfg, branches))])
        nodes = sum(o[2] for o in outcomes)
        for status, chosen, _ in outcomes:
            if status is SearchStatus.FOUND:
                return _found(index, k, chosen, nodes)
        if any(o[0] is SearchStatus.BUDGET_EXCEEDED for o in outcomes):
            return SearchResult(SearchStatus.BUDGET_EXCEEDED, None, nodes)
        return SearchResult(SearchStatus.NOT_FOUND, None, nodes)

    search = _Search(index, k, cfg)
    status, chosen = search.run()
    logging.debug(f"[Search] k={k} on {index.size} elements: {status.value} after {search.nodes} nodes")
    if status is SearchStatus.FOUND:
        return _found(index, k, chosen, search.nodes)
    return SearchResult(status, None, search.nodes)


def _found(index: _LatticeIndex, k: int, chosen, nodes: int) -> SearchResult:
    part = _witness(index, chosen, "search").ensure_verified("search witness")
    if partition_sdepth(part) < k:
        raise PartitionError(f"Search witness has Stanley depth below {k}")
    return SearchResult(SearchStatus.FOUND, part, nodes)


def sdepth_exact(
    ideal: MonomialIdeal,
    cfg: Optional[SearchConfig] = None,
    g: Optional[Sequence[int]] = None,
) -> SdepthResult:
    """
    Largest k with a partition of min rho >= k, by descending scan from n.

    On budget exhaustion raises SearchBudgetExceeded with the best verified
    lower bound (and its witness) and the smallest unrefuted upper bound.
    """
    cfg = cfg or SearchConfig()
    poset = build_poset(ideal, g)
    upper = ideal.n
    budget_hit = False
    nodes = 0
    for k in range(ideal.n, -1, -1):
        result = has_partition_min_rho(poset, k, cfg)
        nodes += result.nodes
        if result.found:
            if budget_hit:
                raise SearchBudgetExceeded(
                    f"Node budget exhausted; sdepth({ideal}) lies in [{k}, {upper}]",
                    lower=k, upper=upper, witness=result.partition,
                )
            logging.info(f"[Search] sdepth({ideal}) = {k} ({nodes} nodes)")
            return SdepthResult(k, result.partition, nodes)
        if result.status is SearchStatus.BUDGET_EXCEEDED:
            budget_hit = True
        elif not budget_hit:
            upper = k - 1
    raise SearchBudgetExceeded(
        f"Node budget exhausted for every k on {ideal}", lower=None, upper=upper
    )


# -------------------------------------------------------------------
# Independent oracle
# -------------------------------------------------------------------

BRUTE_FORCE_MAX_ELEMENTS = 18


def brute_force_sdepth(ideal: MonomialIdeal, max_elements: int = BRUTE_FORCE_MAX_ELEMENTS) -> int:
    """
    Max over every interval partition of min rho, by plain enumeration on
    exponent tuples. Shares no code with the bitmap search.
    """
    poset = build_poset(ideal)
    if len(poset) > max_elements:
        raise PosetError(f"Poset has {len(poset)} elements, brute force allows {max_elements}")
    g = poset.g
    elems = sorted(poset.exponents(), key=lambda c: (sum(c), c))
    unbounded = ideal.n + 1

    @lru_cache(maxsize=None)
    def best(covered: frozenset) -> int:
        remaining = [c for c in elems if c not in covered]
        if not remaining:
            return unbounded
        u = remaining[0]
        result = -1
        for t in elems:
            if not divides(u, t):
                continue
            block = frozenset(c for c in elems if divides(u, c) and divides(c, t))
            if block & covered:
                continue
            rest = best(covered | block)
            if rest >= 0:
                result = max(result, min(rho(t, g), rest))
        return result

    return best(frozenset())
