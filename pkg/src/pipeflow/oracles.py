"""Independent reference solutions used to validate simulations.

Three oracles, each computed by classic methods that share no code with
the simulator:

* the self-similar solution of the dam-break problem (high density left,
  low density right) for the pressure law p = rho^2 / 2, consisting of a
  left rarefaction and a right shock joined by a constant intermediate
  state found by root-finding on the two-wave matching condition;
* the steady profile of a friction-dominated pipe with fixed throughflow
  and fixed total mass, integrated as an ODE with Heun's method and
  shot by bisection on the upstream density;
* the rest state of a closed network with friction, which is uniform
  density (total mass over total length) and zero flux.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eos import GasLaw
from .network import NetworkGraph


class BracketFailureError(RuntimeError):
    """No sign change could be bracketed for the shooting bisection."""


class NonMonotoneError(RuntimeError):
    """The mass-vs-upstream-density map is not monotone on the bracket."""


@dataclass(frozen=True)
class RiemannSolution:
    """Wave structure of a left-high dam break for p = rho^2 / 2."""

    rho_left: float
    rho_right: float
    rho_star: float
    u_star: float
    m_star: float
    head_speed: float  # left edge of the rarefaction fan
    tail_speed: float  # right edge of the rarefaction fan
    shock_speed: float


def solve_dam_break(rho_left: float, rho_right: float) -> RiemannSolution:
    """Intermediate state and wave speeds of the dam-break problem.

    Both initial velocities are zero and rho_left > rho_right > 0, so the
    solution is a left rarefaction plus a right shock. Across the
    rarefaction u + 2*sqrt(rho) is constant; across the shock the jump
    conditions give u = (rho - rho_r) * sqrt((rho + rho_r) / (2 rho rho_r)).
    The intermediate density equates the two, found by bisection.
    """
    if not (rho_left > rho_right > 0):
        raise ValueError("need rho_left > rho_right > 0 (left-high dam break)")

    sqrt_l = math.sqrt(rho_left)

    def match(rho):
        rare = 2.0 * (sqrt_l - math.sqrt(rho))
        shock = (rho - rho_right) * math.sqrt((rho + rho_right) / (2.0 * rho * rho_right))
        return rare - shock

    lo, hi = rho_right, rho_left  # match(lo) > 0 > match(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if match(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * rho_left:
            break
    rho_star = 0.5 * (lo + hi)
    u_star = 2.0 * (sqrt_l - math.sqrt(rho_star))
    m_star = rho_star * u_star
    return RiemannSolution(
        rho_left=rho_left,
        rho_right=rho_right,
        rho_star=rho_star,
        u_star=u_star,
        m_star=m_star,
        head_speed=-sqrt_l,
        tail_speed=u_star - math.sqrt(rho_star),
        shock_speed=m_star / (rho_star - rho_right),
    )


def dam_break_exact(rho_left: float, rho_right: float, x, t: float):
    """Exact (rho, m) of the dam break at positions ``x`` and time t > 0.

    The jump sits at x = 0 initially. Inside the rarefaction fan the
    characteristic relation u - sqrt(rho) = x/t together with the
    constant left invariant gives sqrt(rho) = (2 sqrt(rho_l) - x/t) / 3.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    sol = solve_dam_break(rho_left, rho_right)
    xi = np.asarray(x, dtype=float) / t

    sqrt_rho_fan = (2.0 * math.sqrt(rho_left) - xi) / 3.0
    rho_fan = sqrt_rho_fan**2
    u_fan = xi + sqrt_rho_fan

    rho = np.where(
        xi < sol.head_speed,
        rho_left,
        np.where(
            xi < sol.tail_speed,
            rho_fan,
            np.where(xi < sol.shock_speed, sol.rho_star, rho_right),
        ),
    )
    m = np.where(
        xi < sol.head_speed,
        0.0,
        np.where(
            xi < sol.tail_speed,
            rho_fan * u_fan,
            np.where(xi < sol.shock_speed, sol.m_star, 0.0),
        ),
    )
    return rho, m


def _steady_profile(fric_b, law, edge, mbar, rho_start, x0, x1, grid_n):
    """Heun integration of the steady momentum balance from the left end.

    d/dx (mbar^2/rho + p(rho)) = -b |mbar| mbar / rho, solved for
    d rho/dx. Returns (profile, trapezoid mass, ok); ok is False when the
    density leaves the subsonic positive regime along the way. The loop
    runs on plain floats: it is called dozens of times by the bisection.
    """
    dx = (x1 - x0) / (grid_n - 1)
    rho = np.empty(grid_n)
    rho[0] = rho_start
    m2 = mbar * mbar
    drag = -fric_b * abs(mbar) * mbar
    cg = float(law.c[edge]) * law.gamma  # p'(r) = cg * r**(gamma - 1)
    gm1 = law.gamma - 1.0

    def slope(r):
        return (drag / r) / (cg * math.pow(r, gm1) - m2 / (r * r))

    r = rho_start
    for i in range(1, grid_n):
        if not r > 0 or cg * math.pow(r, gm1) * r * r <= m2:
            return rho, -np.inf, False
        k1 = slope(r)
        r_pred = r + dx * k1
        if not r_pred > 0 or cg * math.pow(r_pred, gm1) * r_pred * r_pred <= m2:
            return rho, -np.inf, False
        k2 = slope(r_pred)
        r = r + 0.5 * dx * (k1 + k2)
        rho[i] = r
    if not np.all(rho > 0):
        return rho, -np.inf, False
    mass = dx * (float(rho.sum()) - 0.5 * (rho[0] + rho[-1]))
    return rho, mass, True


def steady_pipe_shooting(fric_b: float, law: GasLaw, mbar: float, target_mass: float,
                         interval: tuple[float, float], grid_n: int = 100001,
                         edge: int = 0):
    """Steady density profile with throughflow ``mbar`` and given total mass.

    Integrates the steady momentum balance from the left endpoint with
    Heun's method on ``grid_n`` points and bisects on the upstream
    density until the trapezoid mass matches ``target_mass`` to a
    relative 1e-8. Returns (x, rho) arrays.
    """
    if fric_b < 0:
        raise ValueError("fric_b must be >= 0")
    if not target_mass > 0:
        raise ValueError("target_mass must be positive")
    x0, x1 = interval
    if not x1 > x0:
        raise ValueError("interval must have positive length")
    length = x1 - x0
    x = np.linspace(x0, x1, grid_n)

    def mass_of(rho_start):
        _, mass, ok = _steady_profile(fric_b, law, edge, mbar, rho_start, x0, x1, grid_n)
        return mass

    mean = target_mass / length
    lo, hi = mean, 2.0 * mean
    for _ in range(40):
        if mass_of(lo) < target_mass:
            break
        lo *= 0.5
    else:
        raise BracketFailureError("no lower bracket for the upstream density")
    for _ in range(40):
        if mass_of(hi) > target_mass:
            break
        hi *= 2.0
    else:
        raise BracketFailureError("no upper bracket for the upstream density")

    m_lo, m_hi, m_mid = mass_of(lo), mass_of(hi), mass_of(0.5 * (lo + hi))
    if not (m_lo < m_mid < m_hi):
        raise NonMonotoneError("mass is not monotone in the upstream density on the bracket")

    tol = 1e-8 * target_mass
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        mass = mass_of(mid)
        if abs(mass - target_mass) <= tol:
            break
        if mass < target_mass:
            lo = mid
        else:
            hi = mid
    else:
        raise BracketFailureError("bisection did not reach the mass tolerance")

    rho, _, ok = _steady_profile(fric_b, law, edge, mbar, mid, x0, x1, grid_n)
    assert ok
    return x, rho


def junction_steady(graph: NetworkGraph, edge_masses) -> tuple[float, float]:
    """Rest state of a closed network with friction: zero flux, uniform density.

    ``edge_masses`` holds the initial mass per edge; the steady density is
    total mass over total length. Requires friction on every edge
    (otherwise the flow keeps oscillating instead of settling).
    """
    if any(e.fric_b <= 0 for e in graph.edges):
        raise ValueError("junction_steady assumes friction on every edge")
    masses = np.asarray(edge_masses, dtype=float)
    if masses.shape != (graph.n_edges,):
        raise ValueError("need one initial mass per edge")
    return 0.0, float(masses.sum() / graph.lengths.sum())
