"""Exact 1-Wasserstein transport between persistence measures.

The ground cost of moving mass between diagram points x and y is

    cost(x, y) = (x2-x1)^2/2 + (y2-y1)^2/2 - max(min(x2,y2) - max(x1,y1), 0)^2,

the area of the symmetric difference of the right triangles the points span
with the diagonal; the diagonal itself acts as a sink/source at cost
(x2-x1)^2/2.  The optimal coupling is a balanced transportation problem
(each side padded with a diagonal node carrying the other side's mass),
solved by successive shortest paths with node potentials over integers
obtained by clearing denominators, so the optimum is exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Union

from .landscape import compute_landscape, l1_distance
from .measures import PersistenceMeasure, Point

__all__ = [
    "DIAGONAL",
    "Diagonal",
    "ground_cost",
    "TransportPlan",
    "wasserstein_distance",
    "wasserstein_bruteforce",
    "check_stability",
    "StabilityReport",
]


class Diagonal:
    """Sentinel for the diagonal class; all diagonal points are identified."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DIAGONAL"


DIAGONAL = Diagonal()
Site = Union[Point, Diagonal]


def ground_cost(x: Site, y: Site) -> Fraction:
    """Symmetric-difference area cost between two sites."""
    x_diag = isinstance(x, Diagonal)
    y_diag = isinstance(y, Diagonal)
    if x_diag and y_diag:
        return Fraction(0)
    if y_diag:
        return x.persistence**2 / 2
    if x_diag:
        return y.persistence**2 / 2
    overlap = max(min(x.death, y.death) - max(x.birth, y.birth), Fraction(0))
    return x.persistence**2 / 2 + y.persistence**2 / 2 - overlap**2


@dataclass(frozen=True)
class TransportPlan:
    """An optimal coupling; flows are (source, target, mass) with mass > 0.

    Flows between the diagonal and itself are omitted: they cost nothing and
    do not affect the off-diagonal marginals.
    """

    flows: tuple[tuple[Site, Site, Fraction], ...]
    total_cost: Fraction

    def source_marginal(self) -> PersistenceMeasure:
        atoms: dict[Point, Fraction] = {}
        for src, _, mass in self.flows:
            if not isinstance(src, Diagonal):
                atoms[src] = atoms.get(src, Fraction(0)) + mass
        return PersistenceMeasure(atoms)

    def target_marginal(self) -> PersistenceMeasure:
        atoms: dict[Point, Fraction] = {}
        for _, dst, mass in self.flows:
            if not isinstance(dst, Diagonal):
                atoms[dst] = atoms.get(dst, Fraction(0)) + mass
        return PersistenceMeasure(atoms)

    def matches(self, source: PersistenceMeasure, target: PersistenceMeasure) -> bool:
        return self.source_marginal() == source and self.target_marginal() == target


class _MinCostFlow:
    """Successive shortest paths with potentials; integer capacities and costs."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.graph: list[list[list[int]]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int, cost: int) -> None:
        self.graph[u].append([v, cap, cost, len(self.graph[v])])
        self.graph[v].append([u, 0, -cost, len(self.graph[u]) - 1])

    def solve(self, source: int, sink: int, required: int) -> int:
        total_cost = 0
        potential = [0] * self.n
        remaining = required
        while remaining > 0:
            dist = [None] * self.n
            dist[source] = 0
            parent: list[tuple[int, int] | None] = [None] * self.n
            heap = [(0, source)]
            while heap:
                d, u = heapq.heappop(heap)
                if dist[u] is None or d > dist[u]:
                    continue
                for idx, edge in enumerate(self.graph[u]):
                    v, cap, cost, _ = edge
                    if cap <= 0:
                        continue
                    nd = d + cost + potential[u] - potential[v]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        parent[v] = (u, idx)
                        heapq.heappush(heap, (nd, v))
            if dist[sink] is None:
                raise RuntimeError("transport network disconnected before demand met")
            for v in range(self.n):
                if dist[v] is not None:
                    potential[v] += dist[v]
            bottleneck = remaining
            v = sink
            while v != source:
                u, idx = parent[v]
                bottleneck = min(bottleneck, self.graph[u][idx][1])
                v = u
            v = sink
            while v != source:
                u, idx = parent[v]
                edge = self.graph[u][idx]
                edge[1] -= bottleneck
                self.graph[v][edge[3]][1] += bottleneck
                total_cost += bottleneck * edge[2]
                v = u
            remaining -= bottleneck
        return total_cost


def wasserstein_distance(
    first: PersistenceMeasure, second: PersistenceMeasure
) -> tuple[Fraction, TransportPlan]:
    """Exact 1-Wasserstein distance and an optimal plan.

    Balanced formulation: sources are the atoms of ``first`` plus a diagonal
    node of mass equal to ``second``'s total, targets symmetrically, so the
    optimum over couplings that may create or absorb mass at the diagonal is
    a plain transportation optimum.
    """
    sources: list[tuple[Site, Fraction]] = list(first.atoms.items())
    targets: list[tuple[Site, Fraction]] = list(second.atoms.items())
    if second.total_mass > 0:
        sources.append((DIAGONAL, second.total_mass))
    if first.total_mass > 0:
        targets.append((DIAGONAL, first.total_mass))
    if not sources or not targets:
        return Fraction(0), TransportPlan((), Fraction(0))

    mass_scale = lcm(
        1, *(m.denominator for _, m in sources), *(m.denominator for _, m in targets)
    )
    cost_matrix = [[ground_cost(s, t) for t, _ in targets] for s, _ in sources]
    cost_scale = lcm(1, *(c.denominator for row in cost_matrix for c in row))

    n_src, n_tgt = len(sources), len(targets)
    node_src = 0
    node_left = 1
    node_right = node_left + n_src
    node_sink = node_right + n_tgt
    flow = _MinCostFlow(node_sink + 1)
    total = 0
    for i, (_, mass) in enumerate(sources):
        supply = int(mass * mass_scale)
        flow.add_edge(node_src, node_left + i, supply, 0)
        total += supply
    for j, (_, mass) in enumerate(targets):
        flow.add_edge(node_right + j, node_sink, int(mass * mass_scale), 0)
    arc_ids: dict[tuple[int, int], int] = {}
    for i in range(n_src):
        for j in range(n_tgt):
            arc_ids[(i, j)] = len(flow.graph[node_left + i])
            flow.add_edge(
                node_left + i, node_right + j, total, int(cost_matrix[i][j] * cost_scale)
            )

    scaled_cost = flow.solve(node_src, node_sink, total)

    flows = []
    plan_cost = Fraction(0)
    for (i, j), idx in arc_ids.items():
        src_site, dst_site = sources[i][0], targets[j][0]
        if isinstance(src_site, Diagonal) and isinstance(dst_site, Diagonal):
            continue
        used = total - flow.graph[node_left + i][idx][1]
        if used > 0:
            mass = Fraction(used, mass_scale)
            flows.append((src_site, dst_site, mass))
            plan_cost += mass * cost_matrix[i][j]
    if __debug__:
        assert plan_cost == Fraction(scaled_cost, cost_scale * mass_scale)
    plan = TransportPlan(tuple(flows), plan_cost)
    if __debug__:
        assert plan.matches(first, second)
    return plan_cost, plan


def _expand_units(m: PersistenceMeasure, scale: int) -> list[Point]:
    units = []
    for p, w in m.atoms.items():
        units.extend([p] * int(w * scale))
    return units


def wasserstein_bruteforce(
    first: PersistenceMeasure, second: PersistenceMeasure, max_units: int = 7
) -> Fraction:
    """Exhaustive optimum over partial matchings of unit atoms.

    Weights are cleared to integers and atoms expanded into units; every
    injective partial matching is tried, unmatched units paying the diagonal
    cost.  Exponential, bounded to ``max_units`` per side: a test oracle.
    """
    scale = lcm(first.common_denominator(), second.common_denominator())
    left = _expand_units(first, scale)
    right = _expand_units(second, scale)
    if len(left) > max_units or len(right) > max_units:
        raise ValueError(
            f"brute force limited to {max_units} units per side, "
            f"got {len(left)} and {len(right)}"
        )
    diag_left = [ground_cost(p, DIAGONAL) for p in left]
    diag_right = [ground_cost(p, DIAGONAL) for p in right]
    pair = [[ground_cost(p, q) for q in right] for p in left]

    best_cache: dict[tuple[int, int], Fraction] = {}

    def best(i: int, used: int) -> Fraction:
        if i == len(left):
            return sum(
                (diag_right[j] for j in range(len(right)) if not used >> j & 1),
                Fraction(0),
            )
        key = (i, used)
        if key in best_cache:
            return best_cache[key]
        value = diag_left[i] + best(i + 1, used)
        for j in range(len(right)):
            if not used >> j & 1:
                value = min(value, pair[i][j] + best(i + 1, used | 1 << j))
        best_cache[key] = value
        return value

    return best(0, 0) / scale


@dataclass(frozen=True)
class StabilityReport:
    """L1 landscape distance against half the transport distance."""

    l1: Fraction
    transport: Fraction
    bound: Fraction
    holds: bool


def check_stability(
    first: PersistenceMeasure, second: PersistenceMeasure
) -> StabilityReport:
    """Exact check that the L1 landscape distance is at most half the
    transport distance; no tolerance is involved."""
    lhs = l1_distance(compute_landscape(first), compute_landscape(second))
    cost, _ = wasserstein_distance(first, second)
    bound = cost / 2
    return StabilityReport(l1=lhs, transport=cost, bound=bound, holds=lhs <= bound)
