"""Discrete spaces for density and mass flux on the edge meshes.

The density is approximated by piecewise constants (one value per mesh
element). The mass flux is approximated by functions that are continuous
piecewise linear along every edge and satisfy, in addition,

* a flux balance at every junction: the oriented endpoint values of all
  incident edges sum to zero, and
* a pinned value at every port: zero for a closed port, or a prescribed
  (possibly time-dependent) inflow value.

The constrained flux space is realized by elimination rather than by
Lagrange multipliers: at a junction the endpoint unknown of the
lowest-numbered incident edge is expressed through the other incident
endpoint unknowns, and port endpoints are pinned. All remaining nodal
values are free unknowns. ``DofMap.expansion`` is the sparse matrix R
with full nodal values = R @ free + lift(t), where lift(t) carries the
prescribed port values.

Junction sums in :func:`expand_flux` and :func:`kirchhoff_residuals` use
the same term order, so the reported junction residual of an expanded
flux field is exactly zero, not merely zero up to roundoff.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from .network import Mesh, classify_vertices, incidence_sign

# Node classification in the flux space.
NODE_FREE = 0
NODE_FIXED = 1
NODE_DEPENDENT = 2

# 2-point Gauss rule on [0, 1]: exact for polynomials of degree <= 3,
# which covers every integrand assembled in this package.
GAUSS2_POINTS = (0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0))
GAUSS2_WEIGHTS = (0.5, 0.5)

BoundaryValue = Optional[Callable[[float], float]]  # None = closed port


class JunctionConstraint:
    """Elimination data for one junction vertex.

    The dependent endpoint value is
        m[dep_node] = -dep_sign * sum_j partner_signs[j] * m[partner_nodes[j]]
    with partners listed in ascending node order.
    """

    def __init__(self, vertex, dep_node, dep_sign, partner_nodes, partner_signs):
        self.vertex = vertex
        self.dep_node = dep_node
        self.dep_sign = dep_sign
        order = np.argsort(partner_nodes)
        self.partner_nodes = np.asarray(partner_nodes, dtype=np.int64)[order]
        self.partner_signs = np.asarray(partner_signs, dtype=float)[order]


class DofMap:
    """Global numbering of the density and constrained flux unknowns."""

    def __init__(self, mesh: Mesh, boundary: dict[int, BoundaryValue]):
        self.mesh = mesh
        graph = mesh.graph
        interior, ports = classify_vertices(graph)
        for v, bc in boundary.items():
            if v in interior and bc is not None:
                raise ValueError(f"vertex {v} is interior; flux can only be prescribed at ports")
            if v not in interior and v not in ports:
                raise ValueError(f"boundary spec references unknown vertex {v}")

        n_nodes = mesh.n_nodes_total
        self.n_nodes = n_nodes
        self.node_kind = np.full(n_nodes, NODE_FREE, dtype=np.int8)

        self.fixed_nodes: list[int] = []
        self.fixed_values: list[Callable[[float], float]] = []
        self.fixed_vertex: list[int] = []
        for v in sorted(ports):
            (eid,) = graph.edges_at(v)
            node = mesh.endpoint_node(eid, v)
            self.node_kind[node] = NODE_FIXED
            self.fixed_nodes.append(node)
            self.fixed_vertex.append(v)
            bc = boundary.get(v)
            self.fixed_values.append(bc if bc is not None else (lambda t: 0.0))
        self.fixed_nodes = np.asarray(self.fixed_nodes, dtype=np.int64)

        self.junctions: list[JunctionConstraint] = []
        for v in sorted(interior):
            incident = sorted(graph.edges_at(v))
            dep_edge = incident[0]
            dep_node = mesh.endpoint_node(dep_edge, v)
            dep_sign = incidence_sign(graph, dep_edge, v)
            partners = [mesh.endpoint_node(e, v) for e in incident[1:]]
            signs = [incidence_sign(graph, e, v) for e in incident[1:]]
            self.node_kind[dep_node] = NODE_DEPENDENT
            self.junctions.append(JunctionConstraint(v, dep_node, dep_sign, partners, signs))

        self.free_nodes = np.flatnonzero(self.node_kind == NODE_FREE)
        self.n_free = len(self.free_nodes)
        self.free_index = np.full(n_nodes, -1, dtype=np.int64)
        self.free_index[self.free_nodes] = np.arange(self.n_free)

        expected = n_nodes - len(self.junctions) - len(self.fixed_nodes)
        assert self.n_free == expected

        self.expansion = self._build_expansion()
        self.expansion_t = self.expansion.T.tocsr()

    def _build_expansion(self) -> sp.csr_matrix:
        rows, cols, vals = [], [], []
        rows.extend(self.free_nodes.tolist())
        cols.extend(range(self.n_free))
        vals.extend([1.0] * self.n_free)
        for jc in self.junctions:
            for node, sign in zip(jc.partner_nodes, jc.partner_signs):
                rows.append(jc.dep_node)
                cols.append(int(self.free_index[node]))
                vals.append(-jc.dep_sign * sign)
        R = sp.coo_matrix(
            (vals, (rows, cols)), shape=(self.n_nodes, self.n_free)
        ).tocsr()
        R.sort_indices()
        return R

    def lift(self, t: float) -> np.ndarray:
        """Nodal vector holding the prescribed port values at time t, zero elsewhere."""
        s = np.zeros(self.n_nodes)
        for node, func in zip(self.fixed_nodes, self.fixed_values):
            s[node] = func(t)
        return s


def build_dofmap(mesh: Mesh, boundary: dict[int, BoundaryValue]) -> DofMap:
    """Build the flux-space numbering for ``mesh``.

    ``boundary`` maps port vertices to either None (closed, flux 0) or a
    callable of time giving the prescribed flux value in edge
    orientation. Ports not mentioned are closed. Prescribing a flux at an
    interior vertex is an error.
    """
    return DofMap(mesh, boundary)


def expand_flux(dofmap: DofMap, free: np.ndarray, t: float) -> np.ndarray:
    """Full nodal flux values from the free unknowns and port data at time t.

    Junction constraints hold exactly by construction; see module note on
    the summation order.
    """
    free = np.asarray(free, dtype=float)
    if free.shape != (dofmap.n_free,):
        raise ValueError(f"expected {dofmap.n_free} free values, got {free.shape}")
    m = np.zeros(dofmap.n_nodes)
    m[dofmap.free_nodes] = free
    for node, func in zip(dofmap.fixed_nodes, dofmap.fixed_values):
        m[node] = func(t)
    for jc in dofmap.junctions:
        s = 0.0
        for node, sign in zip(jc.partner_nodes, jc.partner_signs):
            s += sign * m[node]
        m[jc.dep_node] = -jc.dep_sign * s
    return m


def restrict_flux(dofmap: DofMap, m_full: np.ndarray) -> np.ndarray:
    """Drop dependent and pinned values, keeping the free unknowns."""
    return np.asarray(m_full, dtype=float)[dofmap.free_nodes]


def repair_constraints(dofmap: DofMap, m_full: np.ndarray) -> np.ndarray:
    """Recompute dependent endpoint values from their junction partners.

    Port values are left untouched; used when projecting initial data
    that need not balance at junctions.
    """
    m = np.array(m_full, dtype=float)
    for jc in dofmap.junctions:
        s = 0.0
        for node, sign in zip(jc.partner_nodes, jc.partner_signs):
            s += sign * m[node]
        m[jc.dep_node] = -jc.dep_sign * s
    return m


def kirchhoff_residuals(dofmap: DofMap, m_full: np.ndarray) -> np.ndarray:
    """Oriented endpoint sums of ``m_full`` at the junctions, one per junction.

    Computed with the same term order as :func:`expand_flux`, so the
    result is exactly 0.0 for any expanded or repaired flux field.
    """
    out = np.zeros(len(dofmap.junctions))
    for i, jc in enumerate(dofmap.junctions):
        s = 0.0
        for node, sign in zip(jc.partner_nodes, jc.partner_signs):
            s += sign * m_full[node]
        out[i] = jc.dep_sign * (m_full[jc.dep_node] - (-jc.dep_sign * s))
    return out


def eval_rho(mesh: Mesh, rho: np.ndarray, edge: int, x: float) -> float:
    """Piecewise-constant density at edge-local coordinate x in [0, length]."""
    idx = _element_index(mesh, edge, x)
    return float(rho[mesh.elem_offset[edge] + idx])


def eval_m(mesh: Mesh, m_full: np.ndarray, edge: int, x: float) -> float:
    """Piecewise-linear flux at edge-local coordinate x in [0, length]."""
    idx = _element_index(mesh, edge, x)
    h = mesh.h[edge]
    xi = x / h - idx
    n0 = mesh.node_offset[edge] + idx
    return float((1.0 - xi) * m_full[n0] + xi * m_full[n0 + 1])


def _element_index(mesh: Mesh, edge: int, x: float) -> int:
    length = mesh.graph.edges[edge].length
    if not 0.0 <= x <= length:
        raise ValueError(f"x = {x} outside [0, {length}] on edge {edge}")
    return min(int(x / mesh.h[edge]), int(mesh.n_elems[edge]) - 1)


def element_integrate(f, x_left: float, h: float) -> float:
    """Integral of ``f`` over [x_left, x_left + h] by 2-point Gauss.

    Exact for polynomials of degree <= 3 on the element.
    """
    acc = 0.0
    for xi, w in zip(GAUSS2_POINTS, GAUSS2_WEIGHTS):
        acc += w * f(x_left + xi * h)
    return acc * h
