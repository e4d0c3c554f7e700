"""Isomorph-free exhaustive generation of k-geodetic digraphs of a given order.

The generator grows out-lists in vertex order, lowest open slot first.
Vertex 0's tree is pre-labeled: in a k-geodetic digraph with out-degree
exactly d every vertex sees a full d-ary tree of depth k, so the first
moore_bound(d, k) vertices can be fixed in breadth-first order for free.
Later targets must keep each out-list strictly increasing, and a brand
new vertex may only enter as the smallest unused index.  Every digraph
with out-degree exactly d has a relabeling that the grammar produces, so
nothing is lost; duplicates that survive are removed by canonical form.

Pruning is incremental.  After an arc v -> w lands, only sources that
reach v within k-1 steps can gain a duplicate short walk or a short
closed walk, so only those are rescanned.  Whenever an out-list fills,
the diregular modes additionally run global cuts: a vertex locked out of
three or more finished k-balls in excess-2 mode (more generally, more
than epsilon), and the twin consequences for identical out-neighbourhood
pairs in the degree-2 excess-2 mode.  All cuts are sound: they only fire
on partials no valid completion can extend.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

from .canon import CanonicalForm, canonical_form
from .core import Digraph, SearchParams, moore_bound, verify

SPLIT_SLOTS = 4


@dataclass(frozen=True)
class PartialDigraph:
    """Snapshot of a partially decided digraph.

    out holds the decided prefix of each out-list; frontier is the next
    (vertex, slot) the generator would fill, or None when complete.
    """

    n: int
    out: tuple[tuple[int, ...], ...]
    in_deg: tuple[int, ...]
    frontier: tuple[int, int] | None


@dataclass(frozen=True)
class SearchResult:
    form: CanonicalForm
    digraph: Digraph


@dataclass(frozen=True)
class SearchOutcome:
    """Search results sorted by canonical form.

    complete is True only when the whole space was exhausted: a node
    budget or result cap that stops exploration early clears it.
    """

    results: tuple[SearchResult, ...]
    nodes_explored: int
    complete: bool


def seed_tree(params: SearchParams) -> PartialDigraph:
    """Forced breadth-first out-tree of vertex 0 for an order-n search.

    Vertices 0..moore_bound(d, k-1)-1 get full out-lists (vertex i feeds
    d*i+1 .. d*i+d); the depth-k layer and the epsilon extra vertices
    stay open.
    """
    d, k = params.d, params.k
    n = params.order
    internal = moore_bound(d, k - 1)
    out: list[tuple[int, ...]] = []
    in_deg = [0] * n
    for v in range(n):
        if v < internal:
            targets = tuple(range(d * v + 1, d * v + d + 1))
            for w in targets:
                in_deg[w] += 1
        else:
            targets = ()
        out.append(targets)
    return PartialDigraph(n=n, out=tuple(out), in_deg=tuple(in_deg), frontier=(internal, 0))


def partial_from_out_lists(n: int, out: list[tuple[int, ...]], d: int) -> PartialDigraph:
    """Build a PartialDigraph snapshot, deriving in-degrees and the frontier."""
    in_deg = [0] * n
    for targets in out:
        for w in targets:
            in_deg[w] += 1
    frontier = None
    for v in range(n):
        if len(out[v]) < d:
            frontier = (v, len(out[v]))
            break
    return PartialDigraph(n=n, out=tuple(tuple(t) for t in out), in_deg=tuple(in_deg), frontier=frontier)


class _Engine:
    """Depth-first generator over one subtree, with undo."""

    def __init__(self, params: SearchParams, pruning: str, start: PartialDigraph,
                 budget: int | None, max_results: int | None):
        if pruning not in ("full", "basic"):
            raise ValueError(f"unknown pruning mode {pruning!r}")
        self.params = params
        self.n = params.order
        self.d = params.d
        self.k = params.k
        self.diregular = params.diregular
        full = pruning == "full"
        self.mult_mode = full and params.diregular
        self.twin_mode = full and params.diregular and params.d == 2 and params.epsilon == 2 and params.k >= 2
        self.budget = budget
        self.max_results = max_results
        n = self.n
        if start.n != n:
            raise ValueError(f"partial has order {start.n}, params require {n}")
        if len(start.out) != n:
            raise ValueError(f"partial has {len(start.out)} out-lists, expected {n}")
        self.out: list[list[int]] = []
        self.out_mask = [0] * n
        self.in_mask = [0] * n
        self.in_deg = [0] * n
        self.max_used = -1
        for v, targets in enumerate(start.out):
            if len(targets) > self.d:
                raise ValueError(f"vertex {v} has more than {self.d} out-neighbours")
            prev = -1
            for w in targets:
                if not 0 <= w < n:
                    raise ValueError(f"vertex {v}: out-neighbour {w} out of range")
                if w <= prev:
                    raise ValueError(f"vertex {v}: out-list not strictly increasing")
                prev = w
                self.in_deg[w] += 1
                self.in_mask[w] |= 1 << v
                self.max_used = max(self.max_used, v, w)
            self.out.append(list(targets))
            if targets:
                self.out_mask[v] = sum(1 << w for w in targets)
        self.nodes = 0
        self.stopped = False
        self.results: dict[bytes, Digraph] = {}
        self.tasks: list[PartialDigraph] = []
        self.split_at: int | None = None

    # ---- state checks ----

    def _geodetic_from(self, u: int) -> bool:
        # layered walk scan with duplicate detection over decided arcs
        out_mask = self.out_mask
        acc = 1 << u
        cur = acc
        for _ in range(self.k):
            nxt = 0
            c = cur
            while c:
                b = c & -c
                c ^= b
                m = out_mask[b.bit_length() - 1]
                if nxt & m:
                    return False
                nxt |= m
            if nxt & acc:
                return False
            if not nxt:
                return True
            acc |= nxt
            cur = nxt
        return True

    def check_state(self) -> bool:
        """Full evaluation of the current partial: False means cut."""
        if self.diregular and any(deg > self.d for deg in self.in_deg):
            return False
        for u in range(self.n):
            if not self._geodetic_from(u):
                return False
        if self.mult_mode or self.twin_mode:
            return self._global_cuts()
        return True

    def _check_after(self, v: int) -> bool:
        # only sources reaching v within k-1 steps can see a new violation
        in_mask = self.in_mask
        src = 1 << v
        cur = src
        for _ in range(self.k - 1):
            nxt = 0
            c = cur
            while c:
                b = c & -c
                c ^= b
                nxt |= in_mask[b.bit_length() - 1]
            nxt &= ~src
            if not nxt:
                break
            src |= nxt
            cur = nxt
        c = src
        while c:
            b = c & -c
            c ^= b
            if not self._geodetic_from(b.bit_length() - 1):
                return False
        if (self.mult_mode or self.twin_mode) and len(self.out[v]) == self.d:
            return self._global_cuts()
        return True

    def _global_cuts(self) -> bool:
        # k-ball of every source, with finality (ball cannot grow further)
        n, k, d = self.n, self.k, self.d
        out, out_mask = self.out, self.out_mask
        full = (1 << n) - 1
        accs = [0] * n
        final = [False] * n
        for u in range(n):
            acc = 1 << u
            cur = acc
            fin = True
            for _ in range(k):
                nxt = 0
                c = cur
                while c:
                    b = c & -c
                    c ^= b
                    x = b.bit_length() - 1
                    if len(out[x]) < d:
                        fin = False
                    m = out_mask[x]
                    if nxt & m:
                        return False
                    nxt |= m
                if nxt & acc:
                    return False
                if not nxt:
                    break
                acc |= nxt
                cur = nxt
            accs[u] = acc
            final[u] = fin
        if self.mult_mode:
            # a finished ball pins its outliers for every completion
            eps = self.params.epsilon
            mult = [0] * n
            for u in range(n):
                if final[u]:
                    c = full & ~accs[u]
                    while c:
                        b = c & -c
                        c ^= b
                        x = b.bit_length() - 1
                        mult[x] += 1
                        if mult[x] > eps:
                            return False
        if self.twin_mode:
            groups: dict[int, list[int]] = {}
            for u in range(n):
                if len(out[u]) == d:
                    groups.setdefault(self.out_mask[u], []).append(u)
            for mask, twins in groups.items():
                if len(twins) < 2:
                    continue
                lo = mask & -mask
                a = lo.bit_length() - 1
                b = (mask ^ lo).bit_length() - 1
                # the shared out-neighbours must never reach one another
                if accs[a] >> b & 1 or accs[b] >> a & 1:
                    return False
                for i in range(len(twins)):
                    for j in range(i + 1, len(twins)):
                        p, q = twins[i], twins[j]
                        if final[p] and final[q]:
                            op = full & ~accs[p]
                            oq = full & ~accs[q]
                            if not op >> q & 1 or not oq >> p & 1:
                                return False
                            if op & ~(1 << q) != oq & ~(1 << p):
                                return False
        return True

    # ---- generation ----

    def _next_open(self, hint: int) -> int | None:
        v = hint
        while v < self.n and len(self.out[v]) == self.d:
            v += 1
        return v if v < self.n else None

    def _emit(self) -> None:
        g = Digraph(self.n, [tuple(t) for t in self.out])
        report = verify(g, self.params)
        if not report.ok:
            raise RuntimeError("internal error: generated digraph fails verification")
        data = canonical_form(g).data
        if data not in self.results:
            self.results[data] = g
            if self.max_results is not None and len(self.results) >= self.max_results:
                self.stopped = True

    def _snapshot(self, v: int) -> PartialDigraph:
        return PartialDigraph(
            n=self.n,
            out=tuple(tuple(t) for t in self.out),
            in_deg=tuple(self.in_deg),
            frontier=(v, len(self.out[v])),
        )

    def _dfs(self, hint: int, depth: int) -> None:
        v = self._next_open(hint)
        if v is None:
            self._emit()
            return
        if self.split_at is not None and depth == self.split_at:
            self.tasks.append(self._snapshot(v))
            return
        out_v = self.out[v]
        lo = out_v[-1] + 1 if out_v else 0
        hi = min(self.n - 1, max(self.max_used, v) + 1)
        d = self.d
        for w in range(lo, hi + 1):
            if w == v:
                continue
            if self.diregular and self.in_deg[w] >= d:
                continue
            if self.budget is not None and self.nodes >= self.budget:
                self.stopped = True
                return
            self.nodes += 1
            saved_max = self.max_used
            out_v.append(w)
            self.out_mask[v] |= 1 << w
            self.in_deg[w] += 1
            self.in_mask[w] |= 1 << v
            if self.max_used < w:
                self.max_used = w
            if self.max_used < v:
                self.max_used = v
            if self._check_after(v):
                self._dfs(v, depth + 1)
            out_v.pop()
            self.out_mask[v] ^= 1 << w
            self.in_deg[w] -= 1
            self.in_mask[w] ^= 1 << v
            self.max_used = saved_max
            if self.stopped:
                return

    def run(self, split_at: int | None = None) -> None:
        self.split_at = split_at
        if not self.check_state():
            return
        self._dfs(0, 0)


def prune(partial: PartialDigraph, params: SearchParams, pruning: str = "full") -> bool:
    """Decide whether a partial digraph can be discarded; True means cut.

    Cuts fire on: a duplicate walk or closed walk of length <= k among the
    decided arcs, an in-degree above d in diregular mode, a vertex shut
    out of more than epsilon finished k-balls in diregular mode, and twin
    consequence violations in the degree-2 excess-2 diregular mode.  A cut
    partial has no completion that verifies.
    """
    engine = _Engine(params, pruning, partial, budget=None, max_results=None)
    return not engine.check_state()


def split_tasks(params: SearchParams, pruning: str = "full",
                split_slots: int = SPLIT_SLOTS,
                budget: int | None = None) -> tuple[list[PartialDigraph], dict]:
    """First stage of a search: expand the seed by split_slots arc decisions.

    Returns the surviving partials as independent tasks plus a stats dict
    with nodes, results found below the split depth, and a stopped flag.
    """
    engine = _Engine(params, pruning, seed_tree(params), budget=budget,
                     max_results=params.max_results)
    engine.run(split_at=split_slots)
    stats = {
        "nodes": engine.nodes,
        "results": dict(engine.results),
        "stopped": engine.stopped,
    }
    return engine.tasks, stats


def run_task(params: SearchParams, task: PartialDigraph, pruning: str = "full",
             budget: int | None = None) -> tuple[dict[bytes, Digraph], int, bool]:
    """Exhaust one search subtree; returns (results, nodes, stopped)."""
    engine = _Engine(params, pruning, task, budget=budget, max_results=params.max_results)
    engine.run()
    return dict(engine.results), engine.nodes, engine.stopped


def _worker(payload) -> tuple[list[tuple[bytes, Digraph]], int, bool]:
    params, pruning, task, budget = payload
    results, nodes, stopped = run_task(params, task, pruning, budget)
    return sorted(results.items()), nodes, stopped


def task_quotas(budget: int | None, used: int, count: int) -> list[int | None]:
    """Split the remaining node budget evenly over count tasks."""
    if budget is None:
        return [None] * count
    remaining = max(0, budget - used)
    base, extra = divmod(remaining, count) if count else (0, 0)
    return [base + (1 if i < extra else 0) for i in range(count)]


def search(params: SearchParams, jobs: int = 1, pruning: str = "full",
           split_slots: int = SPLIT_SLOTS) -> SearchOutcome:
    """Exhaustive isomorph-free search for digraphs matching params.

    Every vertex gets out-degree exactly d; the diregular flag adds the
    in-degree d requirement.  Results are deduplicated and sorted by
    canonical form, so the outcome is identical for any worker count.
    """
    if jobs < 1:
        raise ValueError(f"worker count must be at least 1, got {jobs}")
    tasks, stats = split_tasks(params, pruning, split_slots, params.max_nodes)
    merged: dict[bytes, Digraph] = dict(stats["results"])
    nodes = stats["nodes"]
    stopped = stats["stopped"]
    quotas = task_quotas(params.max_nodes, nodes, len(tasks))
    payloads = [(params, pruning, task, quota) for task, quota in zip(tasks, quotas)]
    if stopped:
        payloads = []
    if jobs > 1 and len(payloads) > 1:
        with multiprocessing.Pool(processes=jobs) as pool:
            outcomes = pool.map(_worker, payloads, chunksize=1)
    else:
        outcomes = [_worker(p) for p in payloads]
    for result_items, task_nodes, task_stopped in outcomes:
        nodes += task_nodes
        stopped = stopped or task_stopped
        for data, g in result_items:
            merged.setdefault(data, g)
    complete = not stopped
    ordered = sorted(merged.items())
    if params.max_results is not None and len(ordered) > params.max_results:
        ordered = ordered[: params.max_results]
        complete = False
    results = tuple(SearchResult(form=CanonicalForm(data), digraph=g) for data, g in ordered)
    return SearchOutcome(results=results, nodes_explored=nodes, complete=complete)
