"""Geometric graph model of a pipe network and per-edge uniform meshes.

A network is a finite, directed, connected graph. Vertices are the
integers ``0 .. n_vertices-1``. Each edge carries a pipe identified with
the interval ``[0, length]``; the edge direction fixes the coordinate,
x = 0 at the tail vertex and x = length at the head vertex. The oriented
endpoint sign of an edge e at a vertex v is -1 at the tail, +1 at the
head and 0 if v is not an endpoint of e.

Vertices of degree >= 2 are junctions (interior vertices); vertices of
degree 1 are ports (boundary vertices).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Edge:
    """One pipe of the network.

    Attributes:
        id: index of the edge, 0-based and equal to its position in the
            graph's edge list.
        v_from: tail vertex (x = 0).
        v_to: head vertex (x = length).
        length: pipe length, > 0.
        visc_a: viscous regularization coefficient, >= 0.
        fric_b: wall friction coefficient, >= 0.
        eos_c: pressure-law prefactor, > 0 (may differ per edge to model
            different cross sections).
        x_start: physical coordinate of the tail end; presentation only,
            used for initial data given in physical coordinates and for
            output files.
    """

    id: int
    v_from: int
    v_to: int
    length: float
    visc_a: float = 0.0
    fric_b: float = 0.0
    eos_c: float = 1.0
    x_start: float = 0.0

    def __post_init__(self):
        if self.v_from == self.v_to:
            raise ValueError(f"edge {self.id}: self-loops are not allowed")
        if not self.length > 0:
            raise ValueError(f"edge {self.id}: length must be positive")
        if self.visc_a < 0 or self.fric_b < 0:
            raise ValueError(f"edge {self.id}: visc_a and fric_b must be >= 0")
        if not self.eos_c > 0:
            raise ValueError(f"edge {self.id}: eos_c must be positive")


@dataclass(frozen=True)
class NetworkGraph:
    """Directed connected graph with pipe data on the edges."""

    n_vertices: int
    edges: tuple[Edge, ...]
    _incident: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_vertices < 2:
            raise ValueError("a network needs at least two vertices")
        if not self.edges:
            raise ValueError("a network needs at least one edge")
        object.__setattr__(self, "edges", tuple(self.edges))
        incident: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for pos, e in enumerate(self.edges):
            if e.id != pos:
                raise ValueError(f"edge ids must be 0..{len(self.edges) - 1} in order")
            for v in (e.v_from, e.v_to):
                if not 0 <= v < self.n_vertices:
                    raise ValueError(f"edge {e.id}: vertex {v} out of range")
            incident[e.v_from].append(e.id)
            incident[e.v_to].append(e.id)
        if any(len(ids) == 0 for ids in incident):
            raise ValueError("every vertex must be an endpoint of at least one edge")
        object.__setattr__(self, "_incident", tuple(tuple(ids) for ids in incident))
        if not self._is_connected():
            raise ValueError("the network graph must be connected")

    def _is_connected(self) -> bool:
        seen = [False] * self.n_vertices
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            for eid in self._incident[v]:
                e = self.edges[eid]
                w = e.v_to if e.v_from == v else e.v_from
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return all(seen)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edges_at(self, vertex: int) -> tuple[int, ...]:
        """Ids of the edges incident on ``vertex`` (both orientations)."""
        return self._incident[vertex]

    def degree(self, vertex: int) -> int:
        return len(self._incident[vertex])

    @property
    def lengths(self) -> np.ndarray:
        return np.array([e.length for e in self.edges])


def incidence_sign(graph: NetworkGraph, edge: int, vertex: int) -> int:
    """Oriented endpoint sign of ``edge`` at ``vertex``: -1 tail, +1 head, 0 else."""
    e = graph.edges[edge]
    if vertex == e.v_from:
        return -1
    if vertex == e.v_to:
        return 1
    return 0


def incidence_matrix(graph: NetworkGraph) -> np.ndarray:
    """Dense (n_vertices, n_edges) matrix of oriented endpoint signs."""
    n = np.zeros((graph.n_vertices, graph.n_edges), dtype=np.int8)
    for e in graph.edges:
        n[e.v_from, e.id] = -1
        n[e.v_to, e.id] = 1
    return n


def classify_vertices(graph: NetworkGraph) -> tuple[set[int], set[int]]:
    """Split vertices into (interior junctions, boundary ports) by degree."""
    interior = {v for v in range(graph.n_vertices) if graph.degree(v) >= 2}
    boundary = set(range(graph.n_vertices)) - interior
    return interior, boundary


class Mesh:
    """Uniform per-edge meshes with global element and node numbering.

    Elements and nodes are numbered edge by edge: edge e contributes
    ``n_elems[e]`` elements and ``n_elems[e] + 1`` continuous piecewise
    linear nodes. Nodes are private to an edge; junction coupling is a
    property of the flux space, not of the mesh.
    """

    def __init__(self, graph: NetworkGraph, n_elems):
        self.graph = graph
        self.n_elems = np.asarray(n_elems, dtype=np.int64)
        if self.n_elems.shape != (graph.n_edges,) or np.any(self.n_elems < 1):
            raise ValueError("need a positive element count per edge")
        lengths = graph.lengths
        self.h = lengths / self.n_elems

        self.elem_offset = np.zeros(graph.n_edges + 1, dtype=np.int64)
        np.cumsum(self.n_elems, out=self.elem_offset[1:])
        self.node_offset = np.zeros(graph.n_edges + 1, dtype=np.int64)
        np.cumsum(self.n_elems + 1, out=self.node_offset[1:])
        self.n_elems_total = int(self.elem_offset[-1])
        self.n_nodes_total = int(self.node_offset[-1])

        # Flat per-element arrays (edge id, size, endpoint node ids).
        self.elem_edge = np.repeat(np.arange(graph.n_edges), self.n_elems)
        self.elem_h = self.h[self.elem_edge]
        local = np.concatenate([np.arange(n) for n in self.n_elems])
        self.elem_node_l = self.node_offset[self.elem_edge] + local
        self.elem_node_r = self.elem_node_l + 1
        self.elem_mid_x = (local + 0.5) * self.elem_h  # edge-local coordinates
        self.node_x = np.concatenate(
            [np.arange(n + 1) * self.h[e] for e, n in enumerate(self.n_elems)]
        )

    def edge_elems(self, edge: int) -> slice:
        return slice(int(self.elem_offset[edge]), int(self.elem_offset[edge + 1]))

    def edge_nodes(self, edge: int) -> slice:
        return slice(int(self.node_offset[edge]), int(self.node_offset[edge + 1]))

    def endpoint_node(self, edge: int, vertex: int) -> int:
        """Global node id of the endpoint of ``edge`` touching ``vertex``."""
        e = self.graph.edges[edge]
        if vertex == e.v_from:
            return int(self.node_offset[edge])
        if vertex == e.v_to:
            return int(self.node_offset[edge] + self.n_elems[edge])
        raise ValueError(f"vertex {vertex} is not an endpoint of edge {edge}")


def build_mesh(graph: NetworkGraph, target_h: float) -> Mesh:
    """Mesh every edge with elements of size as close to ``target_h`` as possible.

    The element count per edge is round(length / target_h) with a floor of
    one element, so the realized size h = length / n differs from the
    request only through the rounding.
    """
    if not target_h > 0:
        raise ValueError("target_h must be positive")
    n = np.floor(graph.lengths / target_h + 0.5).astype(np.int64)
    return Mesh(graph, np.maximum(n, 1))
