r"""Dual graphs of stable curves and their finite-order automorphisms.

The dual graph of a stable curve has one vertex per irreducible component
(weighted by the genus of its normalization) and one edge per node.  A
self-intersecting component yields a loop.  An automorphism of the curve
induces a graph map: a permutation of vertices together with a permutation
of edges that may reverse edge orientations; orientation bookkeeping is
explicit because loops and parallel edges make endpoint matching ambiguous.

For an edge e of an automorphism phibar of order n, let k be the first
return time of the underlying unoriented edge and eps the orientation sign
accumulated around that cycle.  If eps = +1 the edge is *non-amphidrome*
and the oriented return time is m(e) = k; if eps = -1 it is *amphidrome*,
phibar^k flips e end for end, and m(e) = 2k (automatically even).

The quotient graph has a vertex per vertex orbit, an ordinary edge per
non-amphidrome orbit, and an *open edge* (an edge with a single endpoint)
per amphidrome orbit, attached at the common image of the two flipped
endpoints.  The compact quotient discards the open edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

Bank = tuple[int, int]  # (edge id, end), end in {1, 2}


@dataclass(frozen=True)
class GraphVertex:
    id: int
    genus_weight: int


@dataclass(frozen=True)
class OrdinaryEdge:
    """An edge with two (possibly equal) endpoints; head/tail fix an orientation."""

    id: int
    head: int
    tail: int

    kind = "ordinary"

    @property
    def is_loop(self) -> bool:
        return self.head == self.tail


@dataclass(frozen=True)
class OpenEdge:
    """An edge with a single endpoint, the other end left free."""

    id: int
    base: int

    kind = "open"


Edge = Union[OrdinaryEdge, OpenEdge]


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[GraphVertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        vids = [v.id for v in self.vertices]
        if len(set(vids)) != len(vids):
            raise ValueError("duplicate vertex ids")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise ValueError("duplicate edge ids")
        vset = set(vids)
        for e in self.edges:
            ends = (e.head, e.tail) if isinstance(e, OrdinaryEdge) else (e.base,)
            for w in ends:
                if w not in vset:
                    raise ValueError(f"edge {e.id} touches unknown vertex {w}")

    def vertex(self, vid: int) -> GraphVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def ordinary_edges(self) -> tuple[OrdinaryEdge, ...]:
        return tuple(e for e in self.edges if isinstance(e, OrdinaryEdge))

    def open_edges(self) -> tuple[OpenEdge, ...]:
        return tuple(e for e in self.edges if isinstance(e, OpenEdge))

    @property
    def is_compact(self) -> bool:
        return not self.open_edges()

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[int, set[int]] = {v.id: set() for v in self.vertices}
        for e in self.ordinary_edges():
            adj[e.head].add(e.tail)
            adj[e.tail].add(e.head)
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class GraphAutomorphism:
    """A finite-order automorphism: vertex permutation plus signed edge permutation.

    ``edge_map`` sends an edge id to ``(image id, sign)``; sign -1 means the
    image is traversed against its stored orientation.  ``order`` must be the
    exact order of the map acting on oriented edges.
    """

    vertex_map: dict[int, int]
    edge_map: dict[int, tuple[int, int]]
    order: int


def validate_automorphism(graph: DualGraph, phi: GraphAutomorphism) -> None:
    """Raise ValueError unless ``phi`` is a structure-preserving automorphism
    of the compact graph ``graph`` with exactly the stated order."""
    if not graph.is_compact:
        raise ValueError("automorphisms act on compact graphs only")
    vids = {v.id for v in graph.vertices}
    if set(phi.vertex_map) != vids or set(phi.vertex_map.values()) != vids:
        raise ValueError("vertex_map is not a permutation of the vertex ids")
    eids = {e.id for e in graph.edges}
    if set(phi.edge_map) != eids:
        raise ValueError("edge_map does not cover the edge ids")
    images = [t[0] for t in phi.edge_map.values()]
    if set(images) != eids or len(images) != len(eids):
        raise ValueError("edge_map is not a permutation of the edge ids")
    for eid, (img, sign) in phi.edge_map.items():
        if sign not in (1, -1):
            raise ValueError(f"edge {eid}: sign must be +1 or -1, got {sign}")
        e = graph.edge(eid)
        f = graph.edge(img)
        mapped = (phi.vertex_map[e.head], phi.vertex_map[e.tail])
        expected = (f.head, f.tail) if sign == 1 else (f.tail, f.head)
        if mapped != expected:
            raise ValueError(
                f"edge {eid} -> {img} (sign {sign}) does not respect endpoints"
            )
    for v in graph.vertices:
        if graph.vertex(phi.vertex_map[v.id]).genus_weight != v.genus_weight:
            raise ValueError(f"vertex {v.id}: genus weight not preserved")
    if phi.order < 1:
        raise ValueError("order must be positive")
    periods = [len(o) for o in _cycles(phi.vertex_map)]
    for orbit_ids, _k, m, _amph in _edge_orbits_raw(phi):
        periods.append(m)
    if math.lcm(*periods) != phi.order:
        raise ValueError(
            f"stated order {phi.order} differs from the actual order "
            f"{math.lcm(*periods)} on oriented edges"
        )


def _cycles(perm: dict[int, int]) -> list[list[int]]:
    """Cycles of a permutation, each starting at its minimal element,
    listed in increasing order of that element."""
    seen: set[int] = set()
    cycles = []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = perm[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = perm[cur]
        cycles.append(cyc)
    return cycles


def _edge_orbits_raw(phi: GraphAutomorphism):
    """Yield (ids, k, m, amphidrome) per unoriented edge orbit, rep-first."""
    seen: set[int] = set()
    for start in sorted(phi.edge_map):
        if start in seen:
            continue
        ids = [start]
        seen.add(start)
        acc = 1
        cur = start
        while True:
            cur, sign = phi.edge_map[cur]
            acc *= sign
            if cur == start:
                break
            ids.append(cur)
            seen.add(cur)
        k = len(ids)
        amph = acc == -1
        yield ids, k, (2 * k if amph else k), amph


@dataclass(frozen=True)
class VertexOrbit:
    rep: int                  # minimal vertex id in the orbit
    ids: tuple[int, ...]      # the orbit, traversed from the representative
    m: int                    # orbit length = first return time

@dataclass(frozen=True)
class EdgeOrbit:
    rep: int                  # minimal edge id in the orbit
    ids: tuple[int, ...]      # unoriented orbit, traversed from the representative
    k: int                    # number of edges in the orbit
    m: int                    # first return time of the oriented edge (2k if amphidrome)
    amphidrome: bool


@dataclass(frozen=True)
class OrbitReport:
    vertex_orbits: tuple[VertexOrbit, ...]
    edge_orbits: tuple[EdgeOrbit, ...]

    def vertex_orbit_of(self, vid: int) -> VertexOrbit:
        for o in self.vertex_orbits:
            if vid in o.ids:
                return o
        raise KeyError(vid)

    def edge_orbit_of(self, eid: int) -> EdgeOrbit:
        for o in self.edge_orbits:
            if eid in o.ids:
                return o
        raise KeyError(eid)

    def vertex_rep(self, vid: int) -> int:
        return self.vertex_orbit_of(vid).rep


def orbit_data(graph: DualGraph, phi: GraphAutomorphism) -> OrbitReport:
    """Orbit decomposition of vertices and edges under ``phi``.

    Representatives are the minimal ids, orbits are listed by representative,
    and each edge orbit carries its oriented return time m and the
    amphidrome flag (accumulated orientation sign -1 around the orbit).
    """
    validate_automorphism(graph, phi)
    vorbits = tuple(
        VertexOrbit(cyc[0], tuple(cyc), len(cyc)) for cyc in _cycles(phi.vertex_map)
    )
    eorbits = tuple(
        EdgeOrbit(ids[0], tuple(ids), k, m, amph)
        for ids, k, m, amph in _edge_orbits_raw(phi)
    )
    return OrbitReport(vorbits, eorbits)


def apply_bank(phi: GraphAutomorphism, bank: Bank) -> Bank:
    """Image of a bank (edge end) under ``phi``: sign -1 swaps the two ends."""
    eid, end = bank
    img, sign = phi.edge_map[eid]
    return (img, end if sign == 1 else 3 - end)


def bank_orbits(graph: DualGraph, phi: GraphAutomorphism) -> list[tuple[Bank, ...]]:
    """Orbits of ``phi`` on the 2#E banks, each starting at its minimal
    (edge id, end) pair, sorted by that representative.

    The orbit through either bank of an edge e has length m(e), the oriented
    return time; an amphidrome orbit contains both banks of each of its edges.
    """
    validate_automorphism(graph, phi)
    banks = [(e.id, end) for e in graph.ordinary_edges() for end in (1, 2)]
    seen: set[Bank] = set()
    orbits = []
    for start in sorted(banks):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        cur = apply_bank(phi, start)
        while cur != start:
            orbit.append(cur)
            seen.add(cur)
            cur = apply_bank(phi, cur)
        orbits.append(tuple(orbit))
    return orbits


def quotient_graph(graph: DualGraph, phi: GraphAutomorphism) -> DualGraph:
    """The quotient by the action: one vertex per vertex orbit, an ordinary
    edge per non-amphidrome edge orbit, an open edge per amphidrome orbit
    (based at the common vertex class of both endpoints).  Ids are the
    orbit representatives."""
    report = orbit_data(graph, phi)
    cls = {vid: o.rep for o in report.vertex_orbits for vid in o.ids}
    vertices = tuple(
        GraphVertex(o.rep, graph.vertex(o.rep).genus_weight)
        for o in report.vertex_orbits
    )
    edges: list[Edge] = []
    for o in report.edge_orbits:
        e = graph.edge(o.rep)
        if o.amphidrome:
            # phibar^k swaps head and tail, so both lie in one vertex class
            edges.append(OpenEdge(o.rep, cls[e.head]))
        else:
            edges.append(OrdinaryEdge(o.rep, cls[e.head], cls[e.tail]))
    return DualGraph(vertices, tuple(edges))


def compact_quotient(graph: DualGraph, phi: GraphAutomorphism) -> DualGraph:
    """The quotient with every open edge contracted to its base vertex."""
    q = quotient_graph(graph, phi)
    return DualGraph(q.vertices, q.ordinary_edges())


def first_betti(graph: DualGraph) -> int:
    """#edges - #vertices + 1 for a compact connected graph."""
    if not graph.is_compact:
        raise ValueError("first Betti number is defined for compact graphs")
    if not graph.is_connected():
        raise ValueError("graph is not connected")
    return len(graph.edges) - len(graph.vertices) + 1
