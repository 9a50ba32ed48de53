"""Metered access to a graph through degree, neighbor, and pair queries.

The oracle is the only interface the estimation algorithms use. It counts
distinct queries of each kind, memoizes every answer so repeat queries are
free, and optionally enforces a hard budget. Vertex sampling is also routed
through the oracle so runs are fully reproducible from one seed.

Budget semantics: only new distinct neighbor and pair queries are charged
against the cap. Degree queries and vertex samples are metered but exempt;
they scale with vertex-side sampling, which the cap (set from the edge count
estimate) is not meant to bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .graph_store import ABSENT, Graph


class BudgetExhausted(RuntimeError):
    """Raised when a charged query would push past the configured budget."""


@dataclass
class QueryStats:
    """Distinct-query counters plus the vertex-sample call count."""

    degree: int = 0
    neighbor: int = 0
    pair: int = 0
    vertex_samples: int = 0

    @property
    def total(self) -> int:
        """Distinct graph queries (degree + neighbor + pair)."""
        return self.degree + self.neighbor + self.pair

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "neighbor": self.neighbor,
            "pair": self.pair,
            "vertex_samples": self.vertex_samples,
            "total": self.total,
        }


class QueryOracle:
    """Query-counting, memoizing wrapper around a Graph.

    Answers never change (the graph is static), so the oracle keeps a record
    of what has been revealed and never charges twice for the same fact. A
    neighbor answer also reveals adjacency, so it seeds the pair memo.
    """

    def __init__(self, graph: Graph, seed: int | None = None, budget: int | None = None):
        self.graph = graph
        self.n = graph.n
        ss = np.random.SeedSequence(seed)
        scalar_ss, batch_ss = ss.spawn(2)
        self._rng = random.Random(int(scalar_ss.generate_state(2, np.uint64)[0]))
        self._np_rng = np.random.default_rng(batch_ss)
        self._deg_seen = np.zeros(graph.n, dtype=bool)
        self._deg_count = 0
        self._nbr_seen: set[int] = set()
        self._absent_seen: set[tuple[int, int]] = set()
        self._pair_cache: dict[int, bool] = {}
        self._pair_count = 0
        self._vertex_samples = 0
        self._charged = 0
        self._cap = budget

    # -- budget -----------------------------------------------------------

    def set_budget(self, cap: int | None) -> None:
        self._cap = cap

    @property
    def budget_cap(self) -> int | None:
        return self._cap

    @property
    def budget_charged(self) -> int:
        return self._charged

    def _charge(self) -> None:
        if self._cap is not None and self._charged >= self._cap:
            raise BudgetExhausted(f"query budget of {self._cap} exhausted")
        self._charged += 1

    # -- queries ----------------------------------------------------------

    def q_degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range")
        if not self._deg_seen[v]:
            self._deg_seen[v] = True
            self._deg_count += 1
        return int(self.graph.degrees[v])

    def q_degree_batch(self, vs: np.ndarray) -> np.ndarray:
        """Degree-query many vertices at once; counts each distinct vertex once."""
        vs = np.asarray(vs, dtype=np.int64)
        if vs.size:
            if vs.min() < 0 or vs.max() >= self.n:
                raise IndexError("vertex out of range")
            uniq = np.unique(vs)
            fresh = uniq[~self._deg_seen[uniq]]
            self._deg_seen[fresh] = True
            self._deg_count += len(fresh)
        return self.graph.degrees[vs]

    def q_neighbor(self, v: int, i: int):
        """The i-th neighbor of v (1-indexed), or ABSENT when i exceeds the degree."""
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range")
        if i < 1:
            raise ValueError("neighbor index is 1-based")
        g = self.graph
        if i > g.degrees[v]:
            key = (v, i)
            if key not in self._absent_seen:
                self._charge()
                self._absent_seen.add(key)
            return ABSENT
        slot = int(g._off[v]) + i - 1
        if slot not in self._nbr_seen:
            self._charge()
            self._nbr_seen.add(slot)
        w = int(g._nbrs[slot])
        # Adjacency of (v, w) is now known for free.
        pk = v * self.n + w if v < w else w * self.n + v
        if pk not in self._pair_cache:
            self._pair_cache[pk] = True
        return w

    def q_pair(self, u: int, v: int) -> bool:
        """Whether the edge (u, v) exists."""
        if u == v:
            raise ValueError("pair query needs two distinct vertices")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError("vertex out of range")
        pk = u * self.n + v if u < v else v * self.n + u
        cached = self._pair_cache.get(pk)
        if cached is not None:
            return cached
        self._charge()
        self._pair_count += 1
        ans = self.graph.has_edge(u, v)
        self._pair_cache[pk] = ans
        return ans

    def sample_vertex(self, rng: random.Random | None = None) -> int:
        """One uniform vertex id. Counted per call, never budget-charged."""
        self._vertex_samples += 1
        return (rng or self._rng).randrange(self.n)

    def sample_vertices(self, k: int, rng: np.random.Generator | None = None) -> np.ndarray:
        """k uniform vertex ids with replacement, as a batch."""
        self._vertex_samples += k
        return (rng or self._np_rng).integers(0, self.n, size=k, dtype=np.int64)

    def q_random_edge_at(self, v: int, rng: random.Random | None = None) -> tuple[int, int]:
        """A uniform random edge (v, x) incident to v.

        Costs one degree query (first time) plus one neighbor query. Raises
        ValueError when v is isolated; callers must rule that out first.
        """
        d = self.q_degree(v)
        if d == 0:
            raise ValueError(f"vertex {v} is isolated; it has no incident edge")
        i = (rng or self._rng).randrange(d) + 1
        return v, self.q_neighbor(v, i)

    def precedes_queried(self, u: int, v: int) -> bool:
        """Vertex-order comparison through metered degree queries."""
        du = self.q_degree(u)
        dv = self.q_degree(v)
        return du < dv or (du == dv and u < v)

    @property
    def stats(self) -> QueryStats:
        return QueryStats(
            degree=self._deg_count,
            neighbor=len(self._nbr_seen) + len(self._absent_seen),
            pair=self._pair_count,
            vertex_samples=self._vertex_samples,
        )
