"""Shared fixtures and independent brute-force oracles.

The recompute helpers here derive gains and objectives straight from the
definitions over the edge list, independent of the incremental engine they
are used to check.
"""

from __future__ import annotations

import os
import random
from pathlib import Path

import pytest

from maxkcut.buckets import NIL, SearchState
from maxkcut.graph import Graph


def random_graph(
    rng: random.Random,
    n: int,
    density: float,
    wmin: int = -10,
    wmax: int = 10,
) -> Graph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges.append((u, v, rng.randint(wmin, wmax)))
    return Graph.from_edges(n, edges)


def brute_objective(g: Graph, assign) -> int:
    return sum(w for u, v, w in g.edges if assign[u] != assign[v])


def brute_gain_table(g: Graph, k: int, assign) -> dict[tuple[int, int], int]:
    """delta[(v, x)] for every x != assign[v], from the definition."""
    table = {}
    for v in range(g.n):
        internal = sum(w for nb, w in g.adjacency[v] if assign[nb] == assign[v])
        for x in range(k):
            if x == assign[v]:
                continue
            external = sum(w for nb, w in g.adjacency[v] if assign[nb] == x)
            table[(v, x)] = internal - external
    return table


def bucket_snapshot(s: SearchState) -> dict[tuple[int, int], int]:
    """Map of (vertex, array) -> gain read off the linked lists, with
    structural checks (back links, no duplicates)."""
    snapshot = {}
    k = s.partition.k
    for i in range(k):
        for idx in range(len(s.heads[i])):
            v = s.heads[i][idx]
            prev = NIL
            while v != NIL:
                assert s.prv[i][v] == prev, f"broken back link at array {i} cell {idx}"
                assert (v, i) not in snapshot, f"vertex {v} duplicated in array {i}"
                snapshot[(v, i)] = idx - s.offset
                prev = v
                v = s.nxt[i][v]
    return snapshot


def assert_coherent(g: Graph, s: SearchState) -> None:
    """Full from-scratch check of f, the gain table, and bucket placement."""
    assign = s.partition.assign
    k = s.partition.k
    assert s.f == brute_objective(g, assign)
    expected = brute_gain_table(g, k, assign)
    for (v, x), gain in expected.items():
        assert s.delta[v][x] == gain, f"delta[{v}][{x}]"
    assert bucket_snapshot(s) == expected
    sizes = [0] * k
    for a in assign:
        sizes[a] += 1
    assert list(s.partition.sizes) == sizes


@pytest.fixture
def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1, 1), (0, 2, 2), (1, 2, 3)])


@pytest.fixture
def square4() -> Graph:
    # 4-vertex graph where the best k=2 cut needs a swap: edges
    # (0,1):3, (2,3):3, (0,2):2, (1,3):2
    return Graph.from_edges(4, [(0, 1, 3), (2, 3, 3), (0, 2, 2), (1, 3, 2)])


def gset_dir() -> Path | None:
    path = os.environ.get("MAXKCUT_GSET_DIR")
    if not path:
        return None
    p = Path(path)
    return p if p.is_dir() else None


def require_gset(*names: str) -> Path:
    d = gset_dir()
    if d is None:
        pytest.skip("MAXKCUT_GSET_DIR not set; G-set benchmark files unavailable")
    for name in names:
        if not (d / name).exists():
            pytest.skip(f"G-set instance {name} not present in {d}")
    return d
