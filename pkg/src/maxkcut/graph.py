"""Weighted undirected graphs in the G-set edge-list text format.

The format is a header line ``n m`` followed by ``m`` lines ``u v w`` with
1-indexed vertex ids and integer (possibly negative) weights.  Vertices are
stored 0-indexed internally.
"""

from __future__ import annotations

from dataclasses import dataclass


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Immutable weighted undirected graph.

    adjacency[v] lists (neighbor, weight) pairs, symmetric by construction.
    max_abs_incident_weight is the largest sum of |w| over the edges incident
    to any single vertex; it bounds every single-transfer move gain.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    max_degree: int
    max_abs_incident_weight: int
    max_abs_weight: int

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        edges = tuple((int(u), int(v), int(w)) for u, v, w in edges)
        seen: set[tuple[int, int]] = set()
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex id out of range: ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            adj[u].append((v, w))
            adj[v].append((u, w))
        max_degree = max((len(a) for a in adj), default=0)
        big_w = max((sum(abs(w) for _, w in a) for a in adj), default=0)
        return cls(
            n=n,
            edges=edges,
            adjacency=tuple(tuple(a) for a in adj),
            max_degree=max_degree,
            max_abs_incident_weight=big_w,
            max_abs_weight=max((abs(w) for _, _, w in edges), default=0),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbor_sets(self) -> list[set[int]]:
        return [set(nb for nb, _ in a) for a in self.adjacency]


def parse_instance(text: str) -> Graph:
    """Parse G-set edge-list text into a Graph.

    Blank lines are ignored.  Malformed headers, out-of-range or duplicate
    edges, self-loops, and edge-count mismatches raise GraphFormatError with
    the 1-based line number.
    """
    lines = text.splitlines()
    header_line = None
    n = m = 0
    body_start = 0
    for idx, raw in enumerate(lines):
        if raw.strip():
            header_line = idx
            break
    if header_line is None:
        raise GraphFormatError("empty input, expected 'n m' header")
    parts = lines[header_line].split()
    if len(parts) != 2:
        raise GraphFormatError("malformed header, expected 'n m'", header_line + 1)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError("malformed header, expected 'n m'", header_line + 1) from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", header_line + 1)
    body_start = header_line + 1

    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for idx in range(body_start, len(lines)):
        raw = lines[idx].strip()
        if not raw:
            continue
        lineno = idx + 1
        parts = raw.split()
        if len(parts) != 3:
            raise GraphFormatError("malformed edge, expected 'u v w'", lineno)
        try:
            u, v, w = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError("malformed edge, expected integers 'u v w'", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError("vertex id out of range", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}", lineno)
        u -= 1
        v -= 1
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u + 1}, {v + 1})", lineno)
        seen.add(key)
        edges.append((u, v, w))
    if len(edges) != m:
        raise GraphFormatError(f"header promised {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def write_instance(g: Graph) -> str:
    """Serialize a Graph back to G-set edge-list text (1-indexed)."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u + 1} {v + 1} {w}" for u, v, w in g.edges)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    density: float
    min_weight: int | None
    max_weight: int | None
    max_degree: int
    max_abs_incident_weight: int


def graph_stats(g: Graph) -> GraphStats:
    """Recompute summary statistics straight from the edge list."""
    density = 2.0 * g.m / (g.n * (g.n - 1)) if g.n >= 2 else 0.0
    weights = [w for _, _, w in g.edges]
    return GraphStats(
        n=g.n,
        m=g.m,
        density=density,
        min_weight=min(weights) if weights else None,
        max_weight=max(weights) if weights else None,
        max_degree=max((len(a) for a in g.adjacency), default=0),
        max_abs_incident_weight=max(
            (sum(abs(w) for _, w in a) for a in g.adjacency), default=0
        ),
    )
