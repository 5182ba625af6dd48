"""Implicit time stepping for compressible network flow.

Each time step solves the coupled density/flux system of the backward
difference scheme by a small number of linearized sweeps. One sweep
freezes the convective, elastic and friction coefficients at the current
linearization state, substitutes the elementwise density update

    rho_K = rho_K_prev - (tau / h_K) * (m(right node) - m(left node))

into the momentum equation (static condensation of the density), and
solves the resulting square sparse system over the free flux unknowns.
Re-linearizing at the sweep's solution and repeating converges to the
solution of the nonlinear step; by default two sweeps are taken and the
remaining defect is recorded as the nonlinear residual.

The condensation makes the discrete mass balance exact by construction:
on a closed network the total mass never changes; with prescribed port
fluxes it changes by exactly tau times the net inflow per step.

Prescribed port values are imposed strongly at the new time level. The
boundary work reported alongside each step is the momentum-form residual
evaluated at the port hat functions weighted by the prescribed values,
which is exactly the term that closes the discrete energy ledger in the
inhomogeneous case (see :mod:`pipeflow.diagnostics`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from . import diagnostics
from .eos import GasLaw
from .femspace import DofMap, expand_flux, kirchhoff_residuals, repair_constraints, restrict_flux
from .linalg import ResidualTooLargeError, SingularSystemError, SparseSystem


class PositivityLostError(RuntimeError):
    """A density value dropped to zero or below."""


@dataclass(frozen=True)
class State:
    """Discrete state at one time level.

    ``rho`` holds one value per element, ``m_free`` the free flux
    unknowns and ``m_full`` the expanded nodal flux including junction
    and port values that were in effect when the state was produced.
    """

    t: float
    rho: np.ndarray
    m_free: np.ndarray
    m_full: np.ndarray


@dataclass
class StepConfig:
    """Time step size and fixed-point controls.

    ``fixpoint_iters`` is the sweep count (and cap when a tolerance is
    set); ``fixpoint_tol`` enables early stopping on the relative
    nonlinear residual; ``rho_floor`` > 0 floors the linearization
    density in coefficient denominators.
    """

    tau: float
    fixpoint_iters: int = 2
    fixpoint_tol: Optional[float] = None
    rho_floor: float = 0.0

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.fixpoint_iters < 1:
            raise ValueError("fixpoint_iters must be >= 1")
        if self.rho_floor < 0:
            raise ValueError("rho_floor must be >= 0")


def project_initial(rho0, m0, dofmap: DofMap) -> State:
    """Project initial data onto the discrete spaces.

    ``rho0`` and ``m0`` are callables (edge_id, x_local_array) -> array.
    The density takes the element midpoint value; the flux is nodal
    interpolation followed by recomputing the dependent junction values,
    so the junction balance holds exactly from the start.
    """
    mesh = dofmap.mesh
    rho = np.empty(mesh.n_elems_total)
    m_full = np.empty(mesh.n_nodes_total)
    for e in range(mesh.graph.n_edges):
        sl = mesh.edge_elems(e)
        rho[sl] = rho0(e, mesh.elem_mid_x[sl])
        nl = mesh.edge_nodes(e)
        m_full[nl] = m0(e, mesh.node_x[nl])
    if np.any(rho <= 0):
        raise ValueError("initial density must be positive on every element")
    m_full = repair_constraints(dofmap, m_full)
    return State(0.0, rho, restrict_flux(dofmap, m_full), m_full)


def condensed_density(dofmap: DofMap, rho_prev: np.ndarray, m_full: np.ndarray,
                      tau: float) -> np.ndarray:
    """Elementwise density update for a given nodal flux field."""
    mesh = dofmap.mesh
    return rho_prev - (tau / mesh.elem_h) * (m_full[mesh.elem_node_r] - m_full[mesh.elem_node_l])


@dataclass
class AssembledSweep:
    """One sweep's linear system plus the unreduced assembly.

    ``matrix``/``rhs`` are the system over the free flux unknowns.
    ``full_matrix``/``full_rhs`` are the same forms assembled for every
    nodal test function (used for residual and boundary-work
    evaluation), and ``lift`` is the nodal vector of prescribed port
    values entering the reduction.
    """

    matrix: sp.csr_matrix
    rhs: np.ndarray
    full_matrix: sp.csr_matrix
    full_rhs: np.ndarray
    lift: np.ndarray


class SweepAssembler:
    """Precomputed mesh/constraint structure for fast per-sweep assembly."""

    def __init__(self, dofmap: DofMap, law: GasLaw):
        self.dofmap = dofmap
        self.law = law
        mesh = dofmap.mesh
        self.mesh = mesh
        graph = mesh.graph
        self.visc_a = np.array([e.visc_a for e in graph.edges])[mesh.elem_edge]
        self.fric_b = np.array([e.fric_b for e in graph.edges])[mesh.elem_edge]
        l, r = mesh.elem_node_l, mesh.elem_node_r
        self._rows = np.column_stack([l, l, r, r]).ravel()
        self._cols = np.column_stack([l, r, l, r]).ravel()
        self._bidx = np.concatenate([l, r])

    def assemble(self, rho_prev: np.ndarray, m_prev_full: np.ndarray,
                 tilde_rho: np.ndarray, tilde_m_full: np.ndarray,
                 tau: float, t_new: float, rho_floor: float = 0.0) -> AssembledSweep:
        from . import _kernels

        mesh, dofmap = self.mesh, self.dofmap
        rho_eff = np.maximum(tilde_rho, rho_floor) if rho_floor > 0 else tilde_rho
        if np.any(rho_eff <= 0) or np.any(rho_prev <= 0):
            raise PositivityLostError("nonpositive density in sweep coefficients")
        w = self.law.potential_prime(mesh.elem_edge, rho_eff) / rho_eff

        l, r = mesh.elem_node_l, mesh.elem_node_r
        A_loc, b_loc = _kernels.sweep_blocks(
            mesh.elem_h, rho_prev, tilde_rho, rho_eff, w, self.visc_a, self.fric_b,
            tilde_m_full[l], tilde_m_full[r], m_prev_full[l], m_prev_full[r], tau,
        )
        n = mesh.n_nodes_total
        full_matrix = sp.coo_matrix(
            (A_loc.ravel(), (self._rows, self._cols)), shape=(n, n)
        ).tocsr()
        full_rhs = np.bincount(self._bidx, weights=b_loc.ravel(order="F"), minlength=n)

        lift = dofmap.lift(t_new)
        R, Rt = dofmap.expansion, dofmap.expansion_t
        matrix = (Rt @ full_matrix) @ R
        rhs = Rt @ (full_rhs - full_matrix @ lift)
        return AssembledSweep(matrix, rhs, full_matrix, full_rhs, lift)


def assemble_sweep(dofmap: DofMap, law: GasLaw, state_prev: State,
                   tilde_rho: np.ndarray, tilde_m_full: np.ndarray,
                   tau: float, t_new: float, rho_floor: float = 0.0) -> SparseSystem:
    """One-off assembly of a sweep system over the free flux unknowns."""
    asm = SweepAssembler(dofmap, law).assemble(
        state_prev.rho, state_prev.m_full, tilde_rho, tilde_m_full, tau, t_new, rho_floor
    )
    return SparseSystem.from_csr(asm.matrix, asm.rhs)


@dataclass
class StepInfo:
    sweeps: int
    residual: float
    boundary_work: float


def fixed_point_step(assembler: SweepAssembler, state_prev: State,
                     config: StepConfig, t_new: float) -> tuple[State, StepInfo]:
    """Advance one time step by linearized sweeps.

    Runs ``config.fixpoint_iters`` sweeps, stopping early once the
    relative nonlinear residual falls below ``config.fixpoint_tol`` when
    that is set. The returned residual and boundary work are evaluated
    at the accepted state.
    """
    dofmap = assembler.dofmap
    tau = config.tau
    tilde_rho, tilde_m = state_prev.rho, state_prev.m_full
    x = None
    m_cur = None
    sweeps = 0
    while True:
        asm = assembler.assemble(
            state_prev.rho, state_prev.m_full, tilde_rho, tilde_m, tau, t_new,
            config.rho_floor,
        )
        if x is not None:
            r_full = asm.full_matrix @ m_cur - asm.full_rhs
            denom = max(float(np.linalg.norm(asm.rhs)), 1e-30)
            residual = float(np.linalg.norm(dofmap.expansion_t @ r_full)) / denom
            done = sweeps >= config.fixpoint_iters
            if config.fixpoint_tol is not None and residual <= config.fixpoint_tol:
                done = True
            if done:
                boundary_work = float(np.dot(asm.lift, r_full))
                break
        if dofmap.n_free > 0:
            x = SparseSystem.from_csr(asm.matrix, asm.rhs).solve()
        else:
            x = np.zeros(0)
        sweeps += 1
        m_cur = expand_flux(dofmap, x, t_new)
        tilde_rho = condensed_density(dofmap, state_prev.rho, m_cur, tau)
        tilde_m = m_cur

    state = State(t_new, tilde_rho, x, m_cur)
    if np.any(state.rho <= 0):
        raise PositivityLostError(
            f"density lost positivity at t = {t_new:g} (min = {state.rho.min():.3e})"
        )
    return state, StepInfo(sweeps, residual, boundary_work)


def step_count(t_end: float, tau: float) -> int:
    """Number of steps of size tau covering [0, t_end].

    Near-integer ratios snap to the integer; otherwise the count rounds
    up, so the final time is n * tau, within one step of t_end.
    """
    ratio = t_end / tau
    n = int(np.floor(ratio + 0.5))
    if abs(n - ratio) > 1e-9 * max(1.0, ratio):
        n = int(np.ceil(ratio - 1e-12))
    return max(n, 0)


@dataclass
class SteadyStop:
    """Stop the time loop early once the configured norms are small.

    Conditions that are None are ignored; at least one must be set. The
    run stops when every configured condition has held over the last
    ``window`` consecutive steps; a window longer than the slowest
    oscillation period avoids stopping at a turning instant where the
    flux momentarily vanishes.
    """

    rho_change_tol: Optional[float] = None
    m_inf_tol: Optional[float] = None
    window: int = 1

    def __post_init__(self):
        if self.rho_change_tol is None and self.m_inf_tol is None:
            raise ValueError("steady stop needs at least one tolerance")
        if self.window < 1:
            raise ValueError("window must be >= 1")

    def satisfied(self, rho_change: float, m_inf: float) -> bool:
        if self.rho_change_tol is not None and rho_change > self.rho_change_tol:
            return False
        if self.m_inf_tol is not None and m_inf > self.m_inf_tol:
            return False
        return True


@dataclass
class Snapshot:
    step: int
    t: float
    rho: np.ndarray
    m_full: np.ndarray


@dataclass
class Problem:
    """Everything :func:`run` needs for one simulation."""

    mesh: object
    law: GasLaw
    dofmap: DofMap
    config: StepConfig
    initial: State
    t_end: float
    snapshot_steps: frozenset[int] = frozenset()
    steady: Optional[SteadyStop] = None
    name: str = ""

    @property
    def n_steps(self) -> int:
        return step_count(self.t_end, self.config.tau)


@dataclass
class Trajectory:
    """Result of a run: per-step diagnostics, snapshots and the outcome."""

    records: list
    snapshots: list
    status: str  # completed | steady | positivity_lost | singular
    failure: Optional[str]
    final_state: State
    steps_done: int
    n_steps_planned: int

    @property
    def ok(self) -> bool:
        return self.status in ("completed", "steady")


def _make_record(step, state, mesh, law, dofmap, dissip, budget, residual,
                 boundary_work, sweeps) -> diagnostics.DiagnosticsRecord:
    kirch = kirchhoff_residuals(dofmap, state.m_full)
    return diagnostics.DiagnosticsRecord(
        step=step,
        t=state.t,
        mass=diagnostics.total_mass(mesh, state.rho),
        energy=diagnostics.total_energy(mesh, law, state.rho, state.m_full),
        dissipation=dissip,
        cumulative_budget=budget,
        nonlinear_residual=residual,
        min_rho=float(state.rho.min()),
        boundary_work=boundary_work,
        sweeps=sweeps,
        kirchhoff_max=float(np.max(np.abs(kirch))) if kirch.size else 0.0,
    )


def run(problem: Problem) -> Trajectory:
    """Step from t = 0 to t_end, collecting diagnostics and snapshots.

    Solver failures (positivity loss, singular or inaccurate linear
    systems) end the run early; the partial trajectory and a failure
    message are returned rather than raised.
    """
    mesh, law, dofmap = problem.mesh, problem.law, problem.dofmap
    config = problem.config
    assembler = SweepAssembler(dofmap, law)
    state = problem.initial

    dissip0 = diagnostics.dissipation(mesh, state.rho, state.m_full)
    records = [_make_record(0, state, mesh, law, dofmap, dissip0, 0.0, 0.0, 0.0, 0)]
    e0 = records[0].energy
    snapshots = []
    if 0 in problem.snapshot_steps:
        snapshots.append(Snapshot(0, 0.0, state.rho, state.m_full))

    acc = 0.0
    status, failure = "completed", None
    n_steps = problem.n_steps
    steps_done = 0
    steady_streak = 0
    for n in range(1, n_steps + 1):
        t_new = n * config.tau
        rho_prev = state.rho
        try:
            state, info = fixed_point_step(assembler, state, config, t_new)
        except (PositivityLostError, SingularSystemError, ResidualTooLargeError) as err:
            status = ("positivity_lost" if isinstance(err, PositivityLostError) else "singular")
            failure = f"step {n} (t = {t_new:g}): {err}"
            break
        steps_done = n
        dissip = diagnostics.dissipation(mesh, state.rho, state.m_full)
        acc += config.tau * (dissip - info.boundary_work)
        record = _make_record(
            n, state, mesh, law, dofmap, dissip,
            0.0, info.residual, info.boundary_work, info.sweeps,
        )
        record.cumulative_budget = record.energy + acc - e0
        records.append(record)
        if n in problem.snapshot_steps:
            snapshots.append(Snapshot(n, t_new, state.rho, state.m_full))
        if problem.steady is not None:
            rho_change = float(np.max(np.abs(state.rho - rho_prev)))
            m_inf = float(np.max(np.abs(state.m_full)))
            steady_streak = steady_streak + 1 if problem.steady.satisfied(rho_change, m_inf) else 0
            if steady_streak >= problem.steady.window:
                status = "steady"
                break

    return Trajectory(records, snapshots, status, failure, state, steps_done, n_steps)
