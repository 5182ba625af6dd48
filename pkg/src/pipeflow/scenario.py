"""Scenario files: schema, strict validation, presets, problem building.

A scenario is a JSON object that fully determines one simulation. The
schema is strict: unknown keys are rejected anywhere, so a typo cannot
silently fall back to a default physics parameter. Validation collects
every problem as "path: reason" before failing.

Top-level keys (optional ones shown with their defaults):

    name        string, default ""
    gamma       pressure-law exponent, > 1
    graph       {"n_vertices": int, "edges": [edge, ...]}
    mesh        {"target_h": positive number}
    time        {"tau": positive number, "t_end": number >= 0}
    fixpoint    {"sweeps": 2, "tol": null, "rho_floor": 0.0}
    initial     see below
    boundary    {"<port vertex id>": condition, ...}; missing ports are closed
    snapshots   [] list of times within [0, t_end]
    stop        {"type": "time"} (default) or
                {"type": "steady", "rho_change_tol": x|null,
                 "m_inf_tol": y|null, "window": 1}
    oracle      null (default), {"type": "dam_break"},
                {"type": "steady_pipe", "grid_n": 100001},
                or {"type": "junction_steady"}
    output_dir  null or string

Edges: {"from": v, "to": v, "length": L, "eos_c": c} plus optional
"visc_a" (0.0), "fric_b" (0.0) and "x_start" (0.0); the edge id is its
position in the list. Initial conditions:

    {"type": "constant", "rho": r, "m": m}
    {"type": "per_edge", "rho": [r_e, ...], "m": m or [m_e, ...]}
    {"type": "two_state", "split_x": x, "rho_left": rl, "rho_right": rr, "m": m}
    {"type": "tabulated", "x": [...], "rho": [...], "m": [...]}

Positions (split_x, tabulated x, output coordinates) are physical:
x_start of the edge plus the position along it. Boundary conditions:

    {"type": "closed"}
    {"type": "constant_flux", "value": g}
    {"type": "flux_table", "t": [...], "value": [...]}   (linear in t,
        clamped outside the table)
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass

import numpy as np

from .eos import GasLaw
from .network import Edge, NetworkGraph, build_mesh, classify_vertices
from .scheme import Problem, State, StepConfig, SteadyStop, project_initial, step_count
from .femspace import build_dofmap

PRESET_NAMES = ("shock_tube", "friction_pipe", "junction")


class ScenarioError(ValueError):
    """Schema validation failed; ``errors`` lists every path with a reason."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid scenario:\n" + "\n".join(f"  {e}" for e in self.errors))


@dataclass(frozen=True)
class Scenario:
    """A validated scenario; ``data`` is the canonical fully-defaulted dict."""

    data: dict

    def to_dict(self) -> dict:
        return copy.deepcopy(self.data)

    def serialize(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True)

    @property
    def name(self) -> str:
        return self.data["name"]

    @property
    def gamma(self) -> float:
        return self.data["gamma"]

    @property
    def edges(self) -> list:
        return self.data["graph"]["edges"]

    @property
    def tau(self) -> float:
        return self.data["time"]["tau"]

    @property
    def t_end(self) -> float:
        return self.data["time"]["t_end"]

    @property
    def oracle(self):
        return self.data["oracle"]

    @property
    def output_dir(self):
        return self.data["output_dir"]


class _Check:
    """Error accumulator with typed accessors for one nesting level."""

    def __init__(self, obj, path, errors):
        self.obj = obj
        self.path = path
        self.errors = errors

    def fail(self, key, reason):
        where = f"{self.path}.{key}" if key else self.path
        self.errors.append(f"{where}: {reason}")

    def allow_keys(self, *keys):
        for k in self.obj:
            if k not in keys:
                self.fail(k, "unknown key")

    def require(self, key):
        if key not in self.obj:
            self.fail(key, "missing required key")
            return None
        return self.obj[key]

    def number(self, key, default=None, *, positive=False, nonneg=False, required=False):
        if key not in self.obj:
            if required:
                self.fail(key, "missing required key")
                return None
            return default
        v = self.obj[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.fail(key, "must be a number")
            return None
        v = float(v)
        if positive and not v > 0:
            self.fail(key, "must be > 0")
            return None
        if nonneg and v < 0:
            self.fail(key, "must be >= 0")
            return None
        return v

    def integer(self, key, default=None, *, minimum=None, required=False):
        if key not in self.obj:
            if required:
                self.fail(key, "missing required key")
                return None
            return default
        v = self.obj[key]
        if isinstance(v, bool) or not isinstance(v, int):
            self.fail(key, "must be an integer")
            return None
        if minimum is not None and v < minimum:
            self.fail(key, f"must be >= {minimum}")
            return None
        return v

    def string(self, key, default=None, required=False):
        if key not in self.obj:
            if required:
                self.fail(key, "missing required key")
            return default
        v = self.obj[key]
        if not isinstance(v, str):
            self.fail(key, "must be a string")
            return default
        return v

    def number_list(self, key, *, required=False):
        if key not in self.obj:
            if required:
                self.fail(key, "missing required key")
            return None
        v = self.obj[key]
        if not isinstance(v, list) or any(
            isinstance(x, bool) or not isinstance(x, (int, float)) for x in v
        ):
            self.fail(key, "must be a list of numbers")
            return None
        return [float(x) for x in v]


def _validate_edge(raw, path, errors):
    if not isinstance(raw, dict):
        errors.append(f"{path}: must be an object")
        return None
    ck = _Check(raw, path, errors)
    ck.allow_keys("from", "to", "length", "x_start", "visc_a", "fric_b", "eos_c")
    return {
        "from": ck.integer("from", minimum=0, required=True),
        "to": ck.integer("to", minimum=0, required=True),
        "length": ck.number("length", positive=True, required=True),
        "x_start": ck.number("x_start", 0.0),
        "visc_a": ck.number("visc_a", 0.0, nonneg=True),
        "fric_b": ck.number("fric_b", 0.0, nonneg=True),
        "eos_c": ck.number("eos_c", positive=True, required=True),
    }


def _validate_initial(raw, path, errors, n_edges):
    if not isinstance(raw, dict):
        errors.append(f"{path}: must be an object")
        return None
    ck = _Check(raw, path, errors)
    kind = ck.string("type", required=True)
    if kind == "constant":
        ck.allow_keys("type", "rho", "m")
        return {
            "type": "constant",
            "rho": ck.number("rho", positive=True, required=True),
            "m": ck.number("m", required=True),
        }
    if kind == "per_edge":
        ck.allow_keys("type", "rho", "m")
        rho = ck.number_list("rho", required=True)
        if rho is not None:
            if len(rho) != n_edges:
                ck.fail("rho", f"needs one value per edge ({n_edges})")
            elif any(r <= 0 for r in rho):
                ck.fail("rho", "all densities must be > 0")
        m = raw.get("m", 0.0)
        if isinstance(m, list):
            m = ck.number_list("m")
            if m is not None and len(m) != n_edges:
                ck.fail("m", f"needs one value per edge ({n_edges})")
        else:
            m = ck.number("m", 0.0)
            m = [m] * n_edges if m is not None else None
        return {"type": "per_edge", "rho": rho, "m": m}
    if kind == "two_state":
        ck.allow_keys("type", "split_x", "rho_left", "rho_right", "m")
        return {
            "type": "two_state",
            "split_x": ck.number("split_x", required=True),
            "rho_left": ck.number("rho_left", positive=True, required=True),
            "rho_right": ck.number("rho_right", positive=True, required=True),
            "m": ck.number("m", 0.0),
        }
    if kind == "tabulated":
        ck.allow_keys("type", "x", "rho", "m")
        xs = ck.number_list("x", required=True)
        rho = ck.number_list("rho", required=True)
        m = ck.number_list("m", required=True)
        if xs is not None:
            if len(xs) < 2 or any(b <= a for a, b in zip(xs, xs[1:])):
                ck.fail("x", "must be strictly increasing with at least 2 points")
            for key, vals in (("rho", rho), ("m", m)):
                if vals is not None and len(vals) != len(xs):
                    ck.fail(key, "must have the same length as x")
            if rho is not None and any(r <= 0 for r in rho):
                ck.fail("rho", "all densities must be > 0")
        return {"type": "tabulated", "x": xs, "rho": rho, "m": m}
    ck.fail("type", "must be one of constant, per_edge, two_state, tabulated")
    return None


def _validate_boundary_condition(raw, path, errors):
    if not isinstance(raw, dict):
        errors.append(f"{path}: must be an object")
        return None
    ck = _Check(raw, path, errors)
    kind = ck.string("type", required=True)
    if kind == "closed":
        ck.allow_keys("type")
        return {"type": "closed"}
    if kind == "constant_flux":
        ck.allow_keys("type", "value")
        return {"type": "constant_flux", "value": ck.number("value", required=True)}
    if kind == "flux_table":
        ck.allow_keys("type", "t", "value")
        ts = ck.number_list("t", required=True)
        vs = ck.number_list("value", required=True)
        if ts is not None:
            if len(ts) < 1 or any(b <= a for a, b in zip(ts, ts[1:])):
                ck.fail("t", "must be strictly increasing and non-empty")
            if vs is not None and len(vs) != len(ts):
                ck.fail("value", "must have the same length as t")
        return {"type": "flux_table", "t": ts, "value": vs}
    ck.fail("type", "must be one of closed, constant_flux, flux_table")
    return None


def parse_scenario_dict(raw: dict) -> Scenario:
    """Validate a scenario given as a dict; raises ScenarioError on problems."""
    errors: list[str] = []
    if not isinstance(raw, dict):
        raise ScenarioError(["$: scenario must be a JSON object"])
    top = _Check(raw, "$", errors)
    top.allow_keys(
        "name", "gamma", "graph", "mesh", "time", "fixpoint", "initial",
        "boundary", "snapshots", "stop", "oracle", "output_dir",
    )
    name = top.string("name", "")
    gamma = top.number("gamma", required=True)
    if gamma is not None and gamma <= 1:
        top.fail("gamma", "must be > 1")

    # graph
    graph_raw = top.require("graph")
    n_vertices, edges = 0, []
    if isinstance(graph_raw, dict):
        gck = _Check(graph_raw, "$.graph", errors)
        gck.allow_keys("n_vertices", "edges")
        n_vertices = gck.integer("n_vertices", minimum=2, required=True) or 0
        raw_edges = graph_raw.get("edges")
        if not isinstance(raw_edges, list) or not raw_edges:
            gck.fail("edges", "must be a non-empty list")
        else:
            edges = [
                _validate_edge(e, f"$.graph.edges[{i}]", errors)
                for i, e in enumerate(raw_edges)
            ]
    elif graph_raw is not None:
        errors.append("$.graph: must be an object")
    edges = [e for e in edges if e is not None]
    for i, e in enumerate(edges):
        for end in ("from", "to"):
            if e[end] is not None and n_vertices and e[end] >= n_vertices:
                errors.append(f"$.graph.edges[{i}].{end}: vertex out of range")

    # mesh / time / fixpoint
    target_h = tau = t_end = None
    mesh_raw = top.require("mesh")
    if isinstance(mesh_raw, dict):
        mck = _Check(mesh_raw, "$.mesh", errors)
        mck.allow_keys("target_h")
        target_h = mck.number("target_h", positive=True, required=True)
    elif mesh_raw is not None:
        errors.append("$.mesh: must be an object")
    time_raw = top.require("time")
    if isinstance(time_raw, dict):
        tck = _Check(time_raw, "$.time", errors)
        tck.allow_keys("tau", "t_end")
        tau = tck.number("tau", positive=True, required=True)
        t_end = tck.number("t_end", nonneg=True, required=True)
    elif time_raw is not None:
        errors.append("$.time: must be an object")
    fix_raw = raw.get("fixpoint", {})
    sweeps, tol, rho_floor = 2, None, 0.0
    if isinstance(fix_raw, dict):
        fck = _Check(fix_raw, "$.fixpoint", errors)
        fck.allow_keys("sweeps", "tol", "rho_floor")
        sweeps = fck.integer("sweeps", 2, minimum=1)
        tol = fix_raw.get("tol")
        if tol is not None:
            tol = fck.number("tol", positive=True)
        rho_floor = fck.number("rho_floor", 0.0, nonneg=True)
    else:
        errors.append("$.fixpoint: must be an object")

    # initial
    initial = None
    init_raw = top.require("initial")
    if init_raw is not None:
        initial = _validate_initial(init_raw, "$.initial", errors, len(edges))

    # boundary: ports only; missing ports default to closed
    boundary = {}
    bnd_raw = raw.get("boundary", {})
    if not isinstance(bnd_raw, dict):
        errors.append("$.boundary: must be an object keyed by vertex id")
        bnd_raw = {}
    graph_obj = None
    if not errors:
        try:
            graph_obj = _graph_from(n_vertices, edges)
        except ValueError as err:
            errors.append(f"$.graph: {err}")
    for key, cond in bnd_raw.items():
        path = f"$.boundary.{key}"
        try:
            vid = int(key)
        except ValueError:
            errors.append(f"{path}: key must be a vertex id")
            continue
        parsed = _validate_boundary_condition(cond, path, errors)
        if parsed is None:
            continue
        if graph_obj is not None:
            if not 0 <= vid < graph_obj.n_vertices:
                errors.append(f"{path}: vertex out of range")
                continue
            interior, _ = classify_vertices(graph_obj)
            if vid in interior:
                errors.append(f"{path}: vertex is interior; only ports take boundary conditions")
                continue
        boundary[vid] = parsed
    boundary = {k: boundary[k] for k in sorted(boundary)}
    if graph_obj is not None:
        _, ports = classify_vertices(graph_obj)
        for v in sorted(ports):
            boundary.setdefault(v, {"type": "closed"})

    # snapshots
    snapshots = []
    if "snapshots" in raw:
        snaps = top.number_list("snapshots")
        if snaps is not None:
            for i, t in enumerate(snaps):
                if t_end is not None and not -1e-9 <= t <= t_end + 1e-9:
                    errors.append(f"$.snapshots[{i}]: outside [0, t_end]")
            snapshots = snaps

    # stop
    stop = {"type": "time"}
    stop_raw = raw.get("stop")
    if stop_raw is not None:
        if not isinstance(stop_raw, dict):
            errors.append("$.stop: must be an object")
        else:
            sck = _Check(stop_raw, "$.stop", errors)
            kind = sck.string("type", required=True)
            if kind == "time":
                sck.allow_keys("type")
            elif kind == "steady":
                sck.allow_keys("type", "rho_change_tol", "m_inf_tol", "window")
                rct = stop_raw.get("rho_change_tol")
                mit = stop_raw.get("m_inf_tol")
                if rct is not None:
                    rct = sck.number("rho_change_tol", positive=True)
                if mit is not None:
                    mit = sck.number("m_inf_tol", positive=True)
                if rct is None and mit is None:
                    sck.fail("", "steady stop needs rho_change_tol and/or m_inf_tol")
                stop = {
                    "type": "steady",
                    "rho_change_tol": rct,
                    "m_inf_tol": mit,
                    "window": sck.integer("window", 1, minimum=1),
                }
            elif kind is not None:
                sck.fail("type", "must be 'time' or 'steady'")

    # oracle
    oracle = None
    oracle_raw = raw.get("oracle")
    if oracle_raw is not None:
        if not isinstance(oracle_raw, dict):
            errors.append("$.oracle: must be an object or null")
        else:
            ock = _Check(oracle_raw, "$.oracle", errors)
            kind = ock.string("type", required=True)
            if kind == "dam_break":
                ock.allow_keys("type")
                oracle = {"type": "dam_break"}
            elif kind == "steady_pipe":
                ock.allow_keys("type", "grid_n")
                oracle = {"type": "steady_pipe", "grid_n": ock.integer("grid_n", 100001, minimum=3)}
            elif kind == "junction_steady":
                ock.allow_keys("type")
                oracle = {"type": "junction_steady"}
            elif kind is not None:
                ock.fail("type", "must be one of dam_break, steady_pipe, junction_steady")

    output_dir = raw.get("output_dir")
    if output_dir is not None and not isinstance(output_dir, str):
        errors.append("$.output_dir: must be a string or null")
        output_dir = None

    if errors:
        raise ScenarioError(errors)

    data = {
        "name": name,
        "gamma": gamma,
        "graph": {"n_vertices": n_vertices, "edges": edges},
        "mesh": {"target_h": target_h},
        "time": {"tau": tau, "t_end": t_end},
        "fixpoint": {"sweeps": sweeps, "tol": tol, "rho_floor": rho_floor},
        "initial": initial,
        "boundary": {str(k): v for k, v in boundary.items()},
        "snapshots": snapshots,
        "stop": stop,
        "oracle": oracle,
        "output_dir": output_dir,
    }
    return Scenario(data)


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario JSON text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ScenarioError([f"$: not valid JSON ({err})"]) from err
    return parse_scenario_dict(raw)


def _graph_from(n_vertices, edges) -> NetworkGraph:
    return NetworkGraph(
        n_vertices,
        tuple(
            Edge(
                id=i, v_from=e["from"], v_to=e["to"], length=e["length"],
                visc_a=e["visc_a"], fric_b=e["fric_b"], eos_c=e["eos_c"],
                x_start=e["x_start"],
            )
            for i, e in enumerate(edges)
        ),
    )


def build_graph(scenario: Scenario) -> NetworkGraph:
    return _graph_from(scenario.data["graph"]["n_vertices"], scenario.edges)


def build_law(scenario: Scenario) -> GasLaw:
    return GasLaw(scenario.gamma, [e["eos_c"] for e in scenario.edges])


def _initial_functions(scenario: Scenario, graph: NetworkGraph):
    spec = scenario.data["initial"]
    x0 = np.array([e.x_start for e in graph.edges])
    kind = spec["type"]
    if kind == "constant":
        rho0 = lambda e, x: np.full_like(x, spec["rho"], dtype=float)
        m0 = lambda e, x: np.full_like(x, spec["m"], dtype=float)
    elif kind == "per_edge":
        rho_v, m_v = spec["rho"], spec["m"]
        rho0 = lambda e, x: np.full_like(x, rho_v[e], dtype=float)
        m0 = lambda e, x: np.full_like(x, m_v[e], dtype=float)
    elif kind == "two_state":
        split, left, right = spec["split_x"], spec["rho_left"], spec["rho_right"]
        rho0 = lambda e, x: np.where(x0[e] + x < split, left, right)
        m0 = lambda e, x: np.full_like(x, spec["m"], dtype=float)
    else:  # tabulated
        xs = np.array(spec["x"])
        rho_t, m_t = np.array(spec["rho"]), np.array(spec["m"])
        rho0 = lambda e, x: np.interp(x0[e] + x, xs, rho_t)
        m0 = lambda e, x: np.interp(x0[e] + x, xs, m_t)
    return rho0, m0


def _boundary_functions(scenario: Scenario):
    out = {}
    for key, cond in scenario.data["boundary"].items():
        vid = int(key)
        if cond["type"] == "closed":
            out[vid] = None
        elif cond["type"] == "constant_flux":
            value = cond["value"]
            out[vid] = (lambda v: lambda t: v)(value)
        else:
            ts, vs = np.array(cond["t"]), np.array(cond["value"])
            out[vid] = (lambda ts, vs: lambda t: float(np.interp(t, ts, vs)))(ts, vs)
    return out


def build_problem(scenario: Scenario) -> Problem:
    """Materialize a validated scenario into a runnable problem."""
    graph = build_graph(scenario)
    law = build_law(scenario)
    mesh = build_mesh(graph, scenario.data["mesh"]["target_h"])
    dofmap = build_dofmap(mesh, _boundary_functions(scenario))
    config = StepConfig(
        tau=scenario.tau,
        fixpoint_iters=scenario.data["fixpoint"]["sweeps"],
        fixpoint_tol=scenario.data["fixpoint"]["tol"],
        rho_floor=scenario.data["fixpoint"]["rho_floor"],
    )
    rho0, m0 = _initial_functions(scenario, graph)
    initial = project_initial(rho0, m0, dofmap)

    n_steps = step_count(scenario.t_end, scenario.tau)
    snap_steps = frozenset(
        min(max(int(np.floor(t / scenario.tau + 0.5)), 0), n_steps)
        for t in scenario.data["snapshots"]
    )
    steady = None
    if scenario.data["stop"]["type"] == "steady":
        st = scenario.data["stop"]
        steady = SteadyStop(st["rho_change_tol"], st["m_inf_tol"], st["window"])
    return Problem(
        mesh=mesh, law=law, dofmap=dofmap, config=config, initial=initial,
        t_end=scenario.t_end, snapshot_steps=snap_steps, steady=steady,
        name=scenario.name,
    )


def apply_overrides(scenario: Scenario, *, tau=None, target_h=None, sweeps=None,
                    rho_floor=None, fixpoint_tol="keep", snapshots=None,
                    output_dir=None) -> Scenario:
    """Return a new validated scenario with selected settings replaced."""
    d = scenario.to_dict()
    if tau is not None:
        d["time"]["tau"] = tau
    if target_h is not None:
        d["mesh"]["target_h"] = target_h
    if sweeps is not None:
        d["fixpoint"]["sweeps"] = sweeps
    if rho_floor is not None:
        d["fixpoint"]["rho_floor"] = rho_floor
    if fixpoint_tol != "keep":
        d["fixpoint"]["tol"] = fixpoint_tol
    if snapshots is not None:
        d["snapshots"] = list(snapshots)
    if output_dir is not None:
        d["output_dir"] = output_dir
    return parse_scenario_dict(d)


def preset(name: str) -> Scenario:
    """One of the built-in scenarios; see PRESET_NAMES."""
    if name not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return parse_scenario_dict(copy.deepcopy(_PRESETS[name]))


_PRESETS = {
    # Single pipe, no damping: a right-moving shock and a left-moving
    # rarefaction emerge from a density jump at x = 0.
    "shock_tube": {
        "name": "shock_tube",
        "gamma": 2.0,
        "graph": {
            "n_vertices": 2,
            "edges": [
                {"from": 0, "to": 1, "length": 10.0, "x_start": -5.0,
                 "visc_a": 0.0, "fric_b": 0.0, "eos_c": 0.5},
            ],
        },
        "mesh": {"target_h": 0.01},
        "time": {"tau": 0.005, "t_end": 2.0},
        "fixpoint": {"sweeps": 2, "tol": None, "rho_floor": 0.0},
        "initial": {"type": "two_state", "split_x": 0.0,
                    "rho_left": 3.0, "rho_right": 1.0, "m": 0.0},
        "boundary": {"0": {"type": "closed"}, "1": {"type": "closed"}},
        "snapshots": [0.0, 0.5, 1.0, 1.5, 2.0],
        "stop": {"type": "time"},
        "oracle": {"type": "dam_break"},
    },
    # Single pipe with strong wall friction; gas is pushed through at
    # unit rate and the state relaxes to a steady profile with the
    # initial total mass.
    "friction_pipe": {
        "name": "friction_pipe",
        "gamma": 2.0,
        "graph": {
            "n_vertices": 2,
            "edges": [
                {"from": 0, "to": 1, "length": 10.0, "x_start": -5.0,
                 "visc_a": 0.0, "fric_b": 100.0, "eos_c": 0.5},
            ],
        },
        "mesh": {"target_h": 0.01},
        "time": {"tau": 0.005, "t_end": 40.0},
        "fixpoint": {"sweeps": 2, "tol": None, "rho_floor": 0.0},
        "initial": {"type": "constant", "rho": 11.0, "m": 0.0},
        "boundary": {
            "0": {"type": "constant_flux", "value": 1.0},
            "1": {"type": "constant_flux", "value": 1.0},
        },
        "snapshots": [0.0, 0.5, 1.0, 2.0, 5.0, 10.0],
        "stop": {"type": "steady", "rho_change_tol": 1e-8, "m_inf_tol": None, "window": 1},
        "oracle": {"type": "steady_pipe", "grid_n": 20001},
    },
    # Three unit pipes meeting at one junction, closed ports, strong
    # friction; the flow settles to zero flux and uniform density.
    "junction": {
        "name": "junction",
        "gamma": 2.0,
        "graph": {
            "n_vertices": 4,
            "edges": [
                {"from": 0, "to": 1, "length": 1.0, "x_start": 0.0,
                 "visc_a": 0.0, "fric_b": 100.0, "eos_c": 0.5},
                {"from": 1, "to": 2, "length": 1.0, "x_start": 1.0,
                 "visc_a": 0.0, "fric_b": 100.0, "eos_c": 0.5},
                {"from": 1, "to": 3, "length": 1.0, "x_start": 1.0,
                 "visc_a": 0.0, "fric_b": 100.0, "eos_c": 0.5},
            ],
        },
        "mesh": {"target_h": 0.02},
        "time": {"tau": 0.02, "t_end": 400.0},
        "fixpoint": {"sweeps": 2, "tol": None, "rho_floor": 0.0},
        "initial": {"type": "per_edge", "rho": [5.0, 3.0, 1.0], "m": 0.0},
        "boundary": {
            "0": {"type": "closed"}, "2": {"type": "closed"}, "3": {"type": "closed"},
        },
        "snapshots": [0.0, 0.1, 0.5, 1.0, 5.0, 20.0],
        "stop": {"type": "steady", "rho_change_tol": None, "m_inf_tol": 5e-7, "window": 200},
        "oracle": {"type": "junction_steady"},
    },
}
