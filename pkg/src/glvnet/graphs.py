"""Simple undirected graphs: validation, generators, and edge-list I/O.

Graphs are immutable values: a vertex count plus a canonical tuple of
edges (u, v) with u < v. Every random generator takes an explicit numpy
``Generator``, so the same seed always reproduces the same graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "GenerationError",
    "UndirectedGraph",
    "is_graphical",
    "sample_binomial_degrees",
    "configuration_model",
    "complete_bipartite",
    "star",
    "cycle",
    "random_regular",
    "make_named",
    "write_graph",
    "read_graph",
]

DEFAULT_MAX_ATTEMPTS = 10_000


class GenerationError(RuntimeError):
    """Rejection sampling ran out of attempts."""

    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} after {attempts} attempts")
        self.attempts = attempts


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph on vertices 0..n-1 (no loops, no multi-edges).

    ``edges`` is normalised on construction to a sorted tuple of (u, v)
    pairs with u < v, so two graphs compare equal iff they have the same
    vertex count and edge set.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("vertex count must be positive")
        canon = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        seen = set()
        for u, v in canon:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not 0 <= u < self.n or not 0 <= v < self.n:
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "edges", canon)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        flat = np.array([v for e in self.edges for v in e], dtype=int)
        deg = np.bincount(flat, minlength=self.n)
        deg.setflags(write=False)
        return deg

    @property
    def d_min(self) -> int:
        return int(self.degrees.min())

    @property
    def d_max(self) -> int:
        return int(self.degrees.max())

    @property
    def alpha(self) -> float:
        """Degree ratio d_min / d_max."""
        if self.d_max == 0:
            raise ValueError("alpha is undefined for an edgeless graph")
        return self.d_min / self.d_max

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense symmetric binary adjacency matrix with zero diagonal."""
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        a.setflags(write=False)
        return a

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = np.zeros(self.n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in self.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return bool(seen.all())

    def without_edge(self, u: int, v: int) -> "UndirectedGraph":
        e = (min(u, v), max(u, v))
        if e not in self.edges:
            raise ValueError(f"edge {e} not present")
        return UndirectedGraph(self.n, tuple(x for x in self.edges if x != e))


def is_graphical(seq) -> bool:
    """Erdos-Gallai test: True iff seq is the degree sequence of a simple graph.

    The sum must be even and, with degrees sorted non-increasingly,
    sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k) must hold for all k.
    """
    d = np.asarray(seq, dtype=int)
    if d.ndim != 1 or d.size == 0:
        raise ValueError("degree sequence must be a non-empty 1-d sequence")
    if (d < 0).any():
        raise ValueError("degrees must be non-negative")
    if int(d.sum()) % 2 != 0:
        return False
    ds = np.sort(d)[::-1]
    prefix = np.cumsum(ds)
    n = ds.size
    for k in range(1, n + 1):
        rhs = k * (k - 1) + int(np.minimum(ds[k:], k).sum())
        if int(prefix[k - 1]) > rhs:
            return False
    return True


def sample_binomial_degrees(
    n: int,
    d_max: int,
    p: float,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> np.ndarray:
    """Draw a graphical degree sequence with Binomial(d_max, p) entries.

    Zero entries are redrawn until positive (isolated vertices can never
    sit in a connected graph), then the whole sequence is redrawn until
    its sum is even and it passes the Erdos-Gallai test.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    if d_max < 1 or n < 1:
        raise ValueError("d_max and n must be positive")
    for _ in range(max_attempts):
        deg = rng.binomial(d_max, p, size=n).astype(int)
        for _ in range(max_attempts):
            zero = deg == 0
            if not zero.any():
                break
            deg[zero] = rng.binomial(d_max, p, size=int(zero.sum()))
        else:
            raise GenerationError("zero-degree resampling stalled", max_attempts)
        if int(deg.sum()) % 2 == 0 and is_graphical(deg):
            return deg
    raise GenerationError(
        f"no even graphical Binomial({d_max}, {p}) sequence of length {n} found",
        max_attempts,
    )


def _has_admissible_pair(stubs: list[int], edges: set[tuple[int, int]]) -> bool:
    nodes = sorted(set(stubs))
    for i, u in enumerate(nodes):
        for v in nodes[i + 1 :]:
            if (u, v) not in edges:
                return True
    return False


def _stub_matching(degrees: np.ndarray, rng: np.random.Generator):
    """One uniform stub matching attempt; returns an edge set or None.

    Collided pairs (self-loops or repeats) put their stubs back into the
    pool and the pool is reshuffled, so the degree sequence is realised
    exactly. Returns None when the leftover stubs admit no simple edge.
    """
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(degrees.size), degrees)
    while stubs.size:
        rng.shuffle(stubs)
        leftover: list[int] = []
        for i in range(0, stubs.size - 1, 2):
            u, v = int(stubs[i]), int(stubs[i + 1])
            if u > v:
                u, v = v, u
            if u == v or (u, v) in edges:
                leftover.append(u)
                leftover.append(v)
            else:
                edges.add((u, v))
        if leftover and not _has_admissible_pair(leftover, edges):
            return None
        stubs = np.array(leftover, dtype=int)
    return edges


def configuration_model(
    seq,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> UndirectedGraph:
    """Uniform-ish simple connected graph with exactly the given degrees.

    Stub matching realises the sequence exactly; disconnected outcomes
    are rejected and resampled wholesale, which preserves the matching
    distribution conditioned on connectivity.
    """
    deg = np.asarray(seq, dtype=int)
    if not is_graphical(deg):
        raise ValueError("degree sequence is not graphical")
    for _ in range(max_attempts):
        edges = _stub_matching(deg, rng)
        if edges is None:
            continue
        g = UndirectedGraph(deg.size, tuple(edges))
        if g.is_connected():
            return g
    raise GenerationError(
        "configuration model produced no simple connected realisation",
        max_attempts,
    )


def complete_bipartite(m: int, n: int) -> UndirectedGraph:
    """K_{m,n}: parts {0..m-1} and {m..m+n-1}, every cross pair joined."""
    if m < 1 or n < 1:
        raise ValueError("both parts must be non-empty")
    edges = tuple((i, m + j) for i in range(m) for j in range(n))
    return UndirectedGraph(m + n, edges)


def star(k: int) -> UndirectedGraph:
    """Star on k vertices: hub 0 of degree k-1, leaves of degree 1."""
    if k < 2:
        raise ValueError("a star needs at least 2 vertices")
    return UndirectedGraph(k, tuple((0, i) for i in range(1, k)))


def cycle(n: int) -> UndirectedGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return UndirectedGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def random_regular(
    d: int,
    n: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> UndirectedGraph:
    """Random connected d-regular simple graph on n vertices."""
    if d < 1 or d >= n:
        raise ValueError("need 1 <= d < n")
    if (d * n) % 2 != 0:
        raise ValueError("d * n must be even")
    return configuration_model(np.full(n, d, dtype=int), rng, max_attempts)


def make_named(kind: str, rng: np.random.Generator | None = None, **params) -> UndirectedGraph:
    """Dispatch table for the canonical constructions, keyed by name."""
    try:
        if kind == "complete_bipartite":
            return complete_bipartite(params["m"], params["n"])
        if kind == "star":
            return star(params["k"])
        if kind == "cycle":
            return cycle(params["n"])
        if kind == "random_regular":
            if rng is None:
                raise ValueError("random_regular requires an rng")
            return random_regular(params["d"], params["n"], rng)
    except KeyError as e:
        raise ValueError(f"missing parameter {e} for graph kind {kind!r}") from None
    raise ValueError(f"unknown graph kind {kind!r}")


def write_graph(graph: UndirectedGraph, path) -> None:
    """Write an edge list with a JSON header line.

    Format: first line is '# ' + JSON ({"n": ..., plus graph.meta}),
    then one '<u> <v>' pair per line, 0-indexed.
    """
    header = {"n": graph.n, **graph.meta}
    lines = ["# " + json.dumps(header, sort_keys=True)]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    Path(path).write_text("\n".join(lines) + "\n")


def read_graph(path) -> UndirectedGraph:
    """Read a graph written by ``write_graph``."""
    text = Path(path).read_text().strip().splitlines()
    if not text or not text[0].startswith("#"):
        raise ValueError(f"{path}: missing '# {{json}}' header line")
    header = json.loads(text[0][1:].strip())
    if "n" not in header:
        raise ValueError(f"{path}: header lacks vertex count 'n'")
    n = int(header.pop("n"))
    edges = []
    for line in text[1:]:
        line = line.strip()
        if not line:
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    return UndirectedGraph(n, tuple(edges), meta=header)
