"""NumPy implementation of the per-element assembly kernel.

One call produces, for every mesh element, the local 2x2 flux-flux block
and local right-hand side of the linearized sweep system, with the
elementwise density update already substituted (so the per-sweep system
couples flux unknowns only). The compiled backend in ``_fast.pyx``
produces the same numbers; this module is the fallback and the reference.

Local matrices on an element [0, h] with hat functions (phi_l, phi_r),
endpoint derivative signs (s_l, s_r) = (-1, +1):

    (1/h) * int phi_a phi_b           = [[1/3, 1/6], [1/6, 1/3]]
    (1/h) * int phi_l phi_a phi_b     = [[1/4, 1/12], [1/12, 1/12]]
    (1/h) * int phi_r phi_a phi_b     = [[1/12, 1/12], [1/12, 1/4]]

The friction weight |m~| is only piecewise linear when m~ changes sign
inside an element; such elements are split at the zero crossing and each
piece is integrated by 2-point Gauss, which keeps every integral exact.
"""

import numpy as np

_GAUSS = (0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0))


def abs_weighted_mass(h, u, v):
    """J[a, b] = int_K |m~| phi_a phi_b dx for linear m~ with endpoints (u, v)."""
    n = h.shape[0]
    J = np.empty((n, 2, 2))
    au, av = np.abs(u), np.abs(v)
    J[:, 0, 0] = h * (au / 4 + av / 12)
    J[:, 0, 1] = h * (au + av) / 12
    J[:, 1, 0] = J[:, 0, 1]
    J[:, 1, 1] = h * (au / 12 + av / 4)

    crossing = np.flatnonzero(u * v < 0.0)
    if crossing.size:
        hs, us, vs = h[crossing], u[crossing], v[crossing]
        xi0 = us / (us - vs)
        Js = np.zeros((crossing.size, 2, 2))
        for start, width in ((np.zeros_like(xi0), xi0), (xi0, 1.0 - xi0)):
            for gp in _GAUSS:
                xi = start + width * gp
                wq = 0.5 * width * np.abs(us * (1.0 - xi) + vs * xi) * hs
                pl, pr = 1.0 - xi, xi
                Js[:, 0, 0] += wq * pl * pl
                Js[:, 0, 1] += wq * pl * pr
                Js[:, 1, 1] += wq * pr * pr
        Js[:, 1, 0] = Js[:, 0, 1]
        J[crossing] = Js
    return J


def sweep_blocks(h, rho_prev, rho_tilde, rho_eff, w, visc_a, fric_b,
                 mt_l, mt_r, mp_l, mp_r, tau):
    """Element blocks and right-hand sides of one linearized sweep.

    Arguments are per-element arrays: element size ``h``, previous-step
    density ``rho_prev``, current linearization density ``rho_tilde``
    (raw) and ``rho_eff`` (floored, used in denominators), elastic weight
    ``w`` = P'(rho_eff)/rho_eff, coefficients ``visc_a``/``fric_b``, and
    the endpoint values of the linearization flux ``mt_*`` and of the
    previous-step flux ``mp_*``. Returns (A, b) with shapes (n, 2, 2) and
    (n, 2).
    """
    n = h.shape[0]
    A = np.zeros((n, 2, 2))
    b = np.zeros((n, 2))

    inv2r2 = 0.5 / (rho_eff * rho_eff)
    g_l = mt_l / 3 + mt_r / 6  # (1/h) int m~ phi_a
    g_r = mt_l / 6 + mt_r / 3

    # Flux mass term (1/tau)(m / rho_prev, v).
    ct = h / (tau * rho_prev)
    A[:, 0, 0] += ct / 3
    A[:, 0, 1] += ct / 6
    A[:, 1, 0] += ct / 6
    A[:, 1, 1] += ct / 3

    # Convective pair: A[a, b] += inv2r2 * (s_b g_a - s_a g_b); the diagonal
    # cancels. Antisymmetric, so it never feeds the energy balance.
    conv = inv2r2 * (g_l + g_r)
    A[:, 0, 1] += conv
    A[:, 1, 0] -= conv

    # Elastic (density-update) stiffness plus viscous stiffness.
    k = tau * w / h + visc_a / (rho_eff * rho_eff * h)
    A[:, 0, 0] += k
    A[:, 0, 1] -= k
    A[:, 1, 0] -= k
    A[:, 1, 1] += k

    # Friction (b |m~| / rho_eff^2) m, with exact zero-crossing splitting.
    has_friction = np.any(fric_b != 0.0)
    if has_friction:
        A += (fric_b / (rho_eff * rho_eff))[:, None, None] * abs_weighted_mass(h, mt_l, mt_r)

    # Right-hand side: previous momentum plus the linearization correction,
    # plus the known part of the substituted density update.
    gp_l = mp_l / 3 + mp_r / 6
    gp_r = mp_l / 6 + mp_r / 3
    coef = (rho_tilde - rho_prev) * inv2r2
    b[:, 0] += (h / tau) * (gp_l / rho_prev + coef * g_l)
    b[:, 1] += (h / tau) * (gp_r / rho_prev + coef * g_r)
    b[:, 0] -= w * rho_prev
    b[:, 1] += w * rho_prev
    return A, b
