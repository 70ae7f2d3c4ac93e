"""The five search operators over a SearchState.

O1: best single transfer (descent, positive gains only).
O2: best double transfer over edge-adjacent pairs, optionally edge-sampled.
O3: best single transfer under the tabu list with aspiration.
O4: best double transfer into two randomly drawn distinct target subsets.
O5: one uniformly random single transfer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .buckets import NIL, SearchState, apply_single_transfer, best_single_transfer
from .tabu import TabuList


@dataclass(frozen=True)
class Transfer:
    vertex: int
    origin: int
    target: int


@dataclass(frozen=True)
class Move:
    gain: int
    first: Transfer
    second: Transfer | None = None


def psi(c_u: int, c_v: int, t_u: int, t_v: int) -> int:
    """Interaction coefficient of a double transfer sharing an edge.

    Indicator form -[c_u=c_v] + [t_u=c_v] - [t_u=t_v] + [c_u=t_v]; equal to
    the seven-case definition on every admissible input.
    """
    if t_u == c_u or t_v == c_v:
        raise ValueError("double-transfer targets must differ from current subsets")
    return (
        -(1 if c_u == c_v else 0)
        + (1 if t_u == c_v else 0)
        - (1 if t_u == t_v else 0)
        + (1 if c_u == t_v else 0)
    )


def combined_gain(s: SearchState, u: int, t_u: int, v: int, t_v: int) -> int:
    """Gain of jointly moving u -> t_u and v -> t_v (u != v).

    Sum of the two single gains plus psi * w_uv; the correction vanishes for
    non-adjacent pairs.
    """
    if u == v:
        raise ValueError("double transfer needs two distinct vertices")
    c_u = s.partition.assign[u]
    c_v = s.partition.assign[v]
    w_uv = 0
    for nb, w in s.graph.adjacency[u]:
        if nb == v:
            w_uv = w
            break
    return s.delta[u][t_u] + s.delta[v][t_v] + psi(c_u, c_v, t_u, t_v) * w_uv


def apply_move(s: SearchState, move: Move) -> None:
    apply_single_transfer(s, move.first.vertex, move.first.target)
    if move.second is not None:
        apply_single_transfer(s, move.second.vertex, move.second.target)


def op1_select(s: SearchState, rng: random.Random) -> Move | None:
    """Best single transfer if it improves f, else None."""
    v, t, gain = best_single_transfer(s, rng)
    if gain <= 0:
        return None
    return Move(gain=gain, first=Transfer(v, s.partition.assign[v], t))


def op2_select(
    s: SearchState, rng: random.Random, max_edges: int | None = None
) -> Move | None:
    """Best improving double transfer among edge-adjacent pairs.

    Candidates are the nonzero-weight edges, each expanded over all (k-1)^2
    target pairs; when max_edges is given and smaller than the candidate
    count, a uniform edge sample of that size is scanned instead.
    """
    assign = s.partition.assign
    delta = s.delta
    k = s.partition.k
    candidates = [e for e in s.graph.edges if e[2] != 0]
    if not candidates:
        return None
    if max_edges is not None and max_edges < len(candidates):
        candidates = rng.sample(candidates, max_edges)
    best_gain = 0
    ties: list[tuple[int, int, int, int]] = []
    for u, v, w in candidates:
        cu, cv = assign[u], assign[v]
        urow, vrow = delta[u], delta[v]
        for tu in range(k):
            if tu == cu:
                continue
            du = urow[tu]
            for tv in range(k):
                if tv == cv:
                    continue
                coef = (
                    -(1 if cu == cv else 0)
                    + (1 if tu == cv else 0)
                    - (1 if tu == tv else 0)
                    + (1 if cu == tv else 0)
                )
                gain = du + vrow[tv] + coef * w
                if gain > best_gain:
                    best_gain = gain
                    ties = [(u, tu, v, tv)]
                elif gain == best_gain and best_gain > 0:
                    ties.append((u, tu, v, tv))
    if not ties:
        return None
    u, tu, v, tv = rng.choice(ties)
    return Move(
        gain=best_gain,
        first=Transfer(u, assign[u], tu),
        second=Transfer(v, assign[v], tv),
    )


def op3_select(
    s: SearchState, tabu: TabuList, f_best: int, rng: random.Random
) -> Move:
    """Best single transfer among moves that are not tabu or that aspirate
    (would strictly beat f_best).  Falls back to the unrestricted best move
    when every candidate is tabu and none aspirates."""
    k = s.partition.k
    offset = s.offset
    best_idx = None
    per_array: dict[int, list[int]] = {}
    for i in range(k):
        idx = s._true_gmax(i)
        while idx >= 0:
            if s.heads[i][idx] != NIL:
                gain = idx - offset
                admissible = [
                    v
                    for v in s.cell_members(i, idx)
                    if not tabu.is_forbidden(v, i, s.iter) or s.f + gain > f_best
                ]
                if admissible:
                    if best_idx is None or idx > best_idx:
                        best_idx = idx
                        per_array = {i: admissible}
                    elif idx == best_idx:
                        per_array[i] = admissible
                    break
                if best_idx is not None and idx - 1 < best_idx:
                    break
            idx -= 1
    if best_idx is None:
        v, t, gain = best_single_transfer(s, rng)
        return Move(gain=gain, first=Transfer(v, s.partition.assign[v], t))
    i = rng.choice(sorted(per_array))
    v = rng.choice(per_array[i])
    return Move(gain=best_idx - offset, first=Transfer(v, s.partition.assign[v], i))


class _DescendingScan:
    """Lazy view of one bucket array in non-increasing gain order, with a
    cached prefix for repeated partial scans."""

    __slots__ = ("s", "i", "items", "_idx", "_cursor", "_done")

    def __init__(self, s: SearchState, i: int):
        self.s = s
        self.i = i
        self.items: list[tuple[int, int]] = []
        self._idx = s._true_gmax(i)
        self._cursor = s.heads[i][self._idx] if self._idx >= 0 else NIL
        self._done = self._idx < 0

    def get(self, pos: int) -> tuple[int, int] | None:
        items = self.items
        while len(items) <= pos and not self._done:
            if self._cursor != NIL:
                items.append((self._cursor, self._idx - self.s.offset))
                self._cursor = self.s.nxt[self.i][self._cursor]
                continue
            self._idx -= 1
            heads = self.s.heads[self.i]
            while self._idx >= 0 and heads[self._idx] == NIL:
                self._idx -= 1
            if self._idx < 0:
                self._done = True
            else:
                self._cursor = heads[self._idx]
        return items[pos] if pos < len(items) else None


# After this many tied-gain candidate pairs, O4 stops widening the tie pool
# (the maximum is already exact; only the tie-break distribution narrows).
_O4_TIE_BUDGET = 256


def op4_select(s: SearchState, rng: random.Random) -> Move | None:
    """Best double transfer (u -> S_p, v -> S_q) for a randomly drawn ordered
    pair of distinct subsets; gain may be <= 0.

    Bucket-ordered scans of arrays p and q, pruned by the bound
    gain(u) + gain(v) + 2*max|w| on any pair's combined gain; ties are
    resolved by reservoir sampling over the scanned candidates.
    """
    assign = s.partition.assign
    delta = s.delta
    k = s.partition.k
    p, q = rng.sample(range(k), 2)

    best: int | None = None
    choice: tuple[int, int] | None = None
    tie_count = 0
    tie_budget = _O4_TIE_BUDGET
    adjacency = s.graph.adjacency

    scan_p = _DescendingScan(s, p)
    scan_q = _DescendingScan(s, q)
    top_q = scan_q.get(0)

    # Non-adjacent pairs: for each u from the top of p, partners from the top
    # of q; sums only decrease, so each inner scan stops at the incumbent.
    if top_q is not None:
        gq_top = top_q[1]
        pos_u = 0
        while (entry := scan_p.get(pos_u)) is not None:
            pos_u += 1
            u, gu = entry
            if best is not None:
                if gu + gq_top < best:
                    break
                if gu + gq_top == best and tie_budget <= 0:
                    break
            nu = None
            pos_v = 0
            while (ev := scan_q.get(pos_v)) is not None:
                pos_v += 1
                v, gv = ev
                gain = gu + gv
                if best is not None and gain < best:
                    break
                if v == u:
                    continue
                if nu is None:
                    nu = set(nb for nb, _ in adjacency[u])
                if v in nu:
                    continue
                if best is None or gain > best:
                    best = gain
                    choice = (u, v)
                    tie_count = 1
                else:
                    tie_budget -= 1
                    if tie_budget < 0:
                        break
                    tie_count += 1
                    if rng.random() * tie_count < 1.0:
                        choice = (u, v)

    # Adjacent pairs: a pair (u, v) has gain at most
    # delta[u][p] + delta[v][q] + 2*max|w|, which bounds both the u-side
    # depth and, per u, the admissible delta[v][q].
    if top_q is not None:
        gq_top = top_q[1]
        two_w = 2 * s.graph.max_abs_weight
        pos_u = 0
        while (entry := scan_p.get(pos_u)) is not None:
            pos_u += 1
            u, gu = entry
            if best is not None and gu + gq_top + two_w < best:
                break
            cu = assign[u]
            v_floor = None if best is None else best - gu - two_w
            for v, w in adjacency[u]:
                cv = assign[v]
                if cv == q:
                    continue
                dvq = delta[v][q]
                if v_floor is not None and dvq < v_floor:
                    continue
                coef = (
                    -(1 if cu == cv else 0)
                    + (1 if p == cv else 0)
                    + (1 if cu == q else 0)
                )
                gain = gu + dvq + coef * w
                if best is None or gain > best:
                    best = gain
                    choice = (u, v)
                    tie_count = 1
                    v_floor = best - gu - two_w
                elif gain == best:
                    tie_count += 1
                    if rng.random() * tie_count < 1.0:
                        choice = (u, v)

    if choice is None:
        return None
    u, v = choice
    return Move(
        gain=best,
        first=Transfer(u, assign[u], p),
        second=Transfer(v, assign[v], q),
    )


def op5_apply(s: SearchState, rng: random.Random) -> Transfer:
    """Apply one uniformly random single transfer and return it."""
    v = rng.randrange(s.graph.n)
    c = s.partition.assign[v]
    t = rng.randrange(s.partition.k - 1)
    if t >= c:
        t += 1
    apply_single_transfer(s, v, t)
    return Transfer(v, c, t)
