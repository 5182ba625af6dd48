"""Assembly and direct solution of the per-sweep sparse linear systems.

Systems are small (up to ~1e4 unknowns) and nearly banded: tridiagonal
blocks per edge plus a little junction fill. A direct sparse LU with
partial pivoting, one step of iterative refinement and a residual check
is robust and fast at this scale.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

# Relative residual the solver guarantees, and the relative pivot size
# below which a factorization is treated as singular.
RESIDUAL_TOL = 1e-10
PIVOT_TOL = 1e-14


class SingularSystemError(RuntimeError):
    """The matrix is singular (or a pivot fell below tolerance)."""


class ResidualTooLargeError(RuntimeError):
    """The solution failed the residual check even after refinement."""


class SparseSystem:
    """Square sparse matrix plus dense right-hand side.

    Entries may be accumulated in any order; duplicates at the same
    (i, j) are summed when :meth:`finalize` merges them. ``rhs`` is a
    plain NumPy vector and can be written directly.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("system dimension must be >= 1")
        self.n = n
        self.rhs = np.zeros(n)
        self._rows: list[np.ndarray] = []
        self._cols: list[np.ndarray] = []
        self._vals: list[np.ndarray] = []
        self.matrix: sp.csr_matrix | None = None

    @classmethod
    def from_csr(cls, matrix: sp.csr_matrix, rhs: np.ndarray) -> "SparseSystem":
        """Wrap an already-assembled matrix; the system is final."""
        n = matrix.shape[0]
        if matrix.shape != (n, n):
            raise ValueError("matrix must be square")
        system = cls(n)
        system.matrix = matrix.tocsr()
        system.rhs = np.asarray(rhs, dtype=float).copy()
        return system

    def accumulate(self, i, j, value) -> None:
        """Add ``value`` at (i, j); array arguments add many entries at once."""
        if self.matrix is not None:
            raise RuntimeError("system already finalized")
        i = np.atleast_1d(np.asarray(i, dtype=np.int64))
        j = np.atleast_1d(np.asarray(j, dtype=np.int64))
        value = np.broadcast_to(np.asarray(value, dtype=float), i.shape)
        if np.any(i < 0) or np.any(i >= self.n) or np.any(j < 0) or np.any(j >= self.n):
            raise IndexError("matrix index out of range")
        self._rows.append(i)
        self._cols.append(j)
        self._vals.append(np.array(value))

    def finalize(self) -> None:
        """Merge duplicate entries and freeze the sparsity pattern."""
        if self.matrix is not None:
            return
        if self._rows:
            rows = np.concatenate(self._rows)
            cols = np.concatenate(self._cols)
            vals = np.concatenate(self._vals)
        else:
            rows = cols = np.zeros(0, dtype=np.int64)
            vals = np.zeros(0)
        matrix = sp.coo_matrix((vals, (rows, cols)), shape=(self.n, self.n)).tocsr()
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        matrix.sort_indices()
        self.matrix = matrix
        self._rows = self._cols = self._vals = []

    def solve(self) -> np.ndarray:
        """Direct LU solve with one refinement step and a residual check."""
        if self.matrix is None:
            self.finalize()
        A = self.matrix.tocsc()
        try:
            lu = splu(A)
        except RuntimeError as err:  # SuperLU reports exact singularity this way
            raise SingularSystemError(str(err)) from err

        # Pivot check: |U_jj| relative to the magnitude of the matching column.
        u_diag = np.abs(lu.U.diagonal())
        col_max = np.maximum(np.abs(A).max(axis=0).toarray().ravel(), np.abs(A).max() * 1e-300)
        if np.any(u_diag <= PIVOT_TOL * col_max[lu.perm_c]):
            raise SingularSystemError("pivot below tolerance; system is numerically singular")

        b = self.rhs
        x = lu.solve(b)
        r = b - A @ x
        x = x + lu.solve(r)  # one step of iterative refinement
        r = b - A @ x
        denom = max(float(np.linalg.norm(b)), 1e-300)
        rel = float(np.linalg.norm(r)) / denom
        if not np.all(np.isfinite(x)):
            raise SingularSystemError("solver produced non-finite values")
        if rel > RESIDUAL_TOL:
            raise ResidualTooLargeError(f"relative residual {rel:.3e} after refinement")
        return x
