"""Equation of state: pressure and potential-energy density.

The pressure law is a power law p(rho) = c * rho**gamma with gamma > 1
and a per-edge prefactor c > 0. The matching potential-energy density is
P(rho) = c / (gamma - 1) * rho**gamma; it satisfies the identity

    rho * P'(rho) - P(rho) = p(rho),

which is the only property the discrete energy bookkeeping relies on, so
a different state law satisfying the same identity could be dropped in
behind this interface.
"""

from __future__ import annotations

import numpy as np


class GasLaw:
    """Power pressure law with one exponent and per-edge prefactors.

    The ``edge`` argument of the evaluation methods may be an int or an
    integer array; together with an array ``rho`` this vectorizes over
    elements.
    """

    def __init__(self, gamma: float, c):
        self.gamma = float(gamma)
        self.c = np.atleast_1d(np.asarray(c, dtype=float))
        if not self.gamma > 1:
            raise ValueError("gamma must be > 1")
        if np.any(self.c <= 0):
            raise ValueError("every eos_c must be positive")

    def _checked(self, rho):
        rho = np.asarray(rho, dtype=float)
        if np.any(rho <= 0):
            raise ValueError("density must be positive")
        return rho

    def pressure(self, edge, rho):
        """p(rho) = c * rho**gamma."""
        rho = self._checked(rho)
        return self.c[edge] * rho**self.gamma

    def pressure_prime(self, edge, rho):
        """p'(rho) = c * gamma * rho**(gamma - 1) (squared sound speed)."""
        rho = self._checked(rho)
        return self.c[edge] * self.gamma * rho ** (self.gamma - 1.0)

    def potential(self, edge, rho):
        """P(rho) = c / (gamma - 1) * rho**gamma."""
        rho = self._checked(rho)
        return self.c[edge] / (self.gamma - 1.0) * rho**self.gamma

    def potential_prime(self, edge, rho):
        """P'(rho) = c * gamma / (gamma - 1) * rho**(gamma - 1)."""
        rho = self._checked(rho)
        return self.c[edge] * self.gamma / (self.gamma - 1.0) * rho ** (self.gamma - 1.0)
