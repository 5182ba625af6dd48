# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of ``pure.sweep_blocks``; same formulas, single C loop."""

from libc.math cimport fabs, sqrt

import numpy as np


def sweep_blocks(double[::1] h, double[::1] rho_prev, double[::1] rho_tilde,
                 double[::1] rho_eff, double[::1] w, double[::1] visc_a,
                 double[::1] fric_b, double[::1] mt_l, double[::1] mt_r,
                 double[::1] mp_l, double[::1] mp_r, double tau):
    cdef Py_ssize_t n = h.shape[0]
    A_arr = np.zeros((n, 2, 2))
    b_arr = np.zeros((n, 2))
    cdef double[:, :, ::1] A = A_arr
    cdef double[:, ::1] b = b_arr

    cdef double gq_lo = 0.5 - 0.5 / sqrt(3.0)
    cdef double gq_hi = 0.5 + 0.5 / sqrt(3.0)

    cdef Py_ssize_t i
    cdef double hi, rp, re, inv2r2, u, v, g_l, g_r, ct, conv, k
    cdef double j00, j01, j11, au, av, xi0, start, width, xi, wq, pl, pr, bf
    cdef double gp_l, gp_r, coef
    cdef int piece, gp

    for i in range(n):
        hi = h[i]
        rp = rho_prev[i]
        re = rho_eff[i]
        inv2r2 = 0.5 / (re * re)
        u = mt_l[i]
        v = mt_r[i]
        g_l = u / 3.0 + v / 6.0
        g_r = u / 6.0 + v / 3.0

        ct = hi / (tau * rp)
        A[i, 0, 0] = ct / 3.0
        A[i, 0, 1] = ct / 6.0
        A[i, 1, 0] = ct / 6.0
        A[i, 1, 1] = ct / 3.0

        conv = inv2r2 * (g_l + g_r)
        A[i, 0, 1] += conv
        A[i, 1, 0] -= conv

        k = tau * w[i] / hi + visc_a[i] / (re * re * hi)
        A[i, 0, 0] += k
        A[i, 0, 1] -= k
        A[i, 1, 0] -= k
        A[i, 1, 1] += k

        if fric_b[i] != 0.0:
            if u * v < 0.0:
                j00 = 0.0
                j01 = 0.0
                j11 = 0.0
                xi0 = u / (u - v)
                for piece in range(2):
                    if piece == 0:
                        start = 0.0
                        width = xi0
                    else:
                        start = xi0
                        width = 1.0 - xi0
                    for gp in range(2):
                        xi = start + width * (gq_lo if gp == 0 else gq_hi)
                        wq = 0.5 * width * fabs(u * (1.0 - xi) + v * xi) * hi
                        pl = 1.0 - xi
                        pr = xi
                        j00 += wq * pl * pl
                        j01 += wq * pl * pr
                        j11 += wq * pr * pr
            else:
                au = fabs(u)
                av = fabs(v)
                j00 = hi * (au / 4.0 + av / 12.0)
                j01 = hi * (au + av) / 12.0
                j11 = hi * (au / 12.0 + av / 4.0)
            bf = fric_b[i] / (re * re)
            A[i, 0, 0] += bf * j00
            A[i, 0, 1] += bf * j01
            A[i, 1, 0] += bf * j01
            A[i, 1, 1] += bf * j11

        gp_l = mp_l[i] / 3.0 + mp_r[i] / 6.0
        gp_r = mp_l[i] / 6.0 + mp_r[i] / 3.0
        coef = (rho_tilde[i] - rp) * inv2r2
        b[i, 0] = (hi / tau) * (gp_l / rp + coef * g_l) - w[i] * rp
        b[i, 1] = (hi / tau) * (gp_r / rp + coef * g_r) + w[i] * rp

    return A_arr, b_arr
