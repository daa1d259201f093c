"""Dense exact linear algebra over F_p on int64 numpy arrays.

Everything downstream (syzygy kernels, ideal membership, certificate
re-verification) reduces to the two primitives here: reduced row echelon
form and the canonical kernel basis derived from it.  Results are exact
and deterministic -- no tolerances anywhere.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .field import PrimeField

_I64 = np.int64


def _as_matrix(data, p: int) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(data, dtype=_I64) % p)
    if a.ndim != 2:
        raise ValueError("expected a 2-dimensional array")
    return a


def rref(a: np.ndarray, p: int):
    """In-place RREF; returns (rank, pivot_cols).  ``a`` must be int64 C-order."""
    if a.size == 0:
        return 0, []
    return _kernels.rref_mod_p(a, p)


def kernel_from_rref(a: np.ndarray, rank: int, pivots, p: int) -> np.ndarray:
    """Raw kernel basis (one row per free column) of an RREF matrix."""
    cols = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    k = np.zeros((len(free), cols), dtype=_I64)
    for row, f in enumerate(free):
        k[row, f] = 1
        if rank:
            k[row, pivots] = (-a[:rank, f]) % p
    return k


class MatrixModP:
    """A rows x cols matrix over F_p, stored as reduced int64 residues."""

    __slots__ = ("array", "p")

    def __init__(self, data, p):
        if isinstance(p, PrimeField):
            p = p.p
        self.p = p
        self.array = _as_matrix(data, p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p) -> "MatrixModP":
        if isinstance(p, PrimeField):
            p = p.p
        m = cls.__new__(cls)
        m.p = p
        m.array = np.zeros((rows, cols), dtype=_I64)
        return m

    @classmethod
    def identity(cls, n: int, p) -> "MatrixModP":
        m = cls.zeros(n, n, p)
        np.fill_diagonal(m.array, 1)
        return m

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def copy(self) -> "MatrixModP":
        m = MatrixModP.__new__(MatrixModP)
        m.p = self.p
        m.array = self.array.copy()
        return m

    def __eq__(self, other):
        return (
            isinstance(other, MatrixModP)
            and self.p == other.p
            and self.array.shape == other.array.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __repr__(self):
        return f"MatrixModP({self.rows}x{self.cols} over F_{self.p})"

    # -- products (test plumbing; chunked so int64 sums cannot overflow) ----

    def matmul(self, other: "MatrixModP") -> "MatrixModP":
        if self.p != other.p or self.cols != other.rows:
            raise ValueError("incompatible matrices")
        p = self.p
        # sum of `step` products of size < p^2 stays below 2^63
        step = max(1, (2**62) // max(1, (p - 1) ** 2))
        acc = np.zeros((self.rows, other.cols), dtype=_I64)
        for lo in range(0, self.cols, step):
            hi = min(self.cols, lo + step)
            acc = (acc + self.array[:, lo:hi] @ other.array[lo:hi, :]) % p
        return MatrixModP(acc, p)

    def mul_vector(self, v) -> np.ndarray:
        return self.matmul(MatrixModP(np.asarray(v).reshape(-1, 1), self.p)).array[:, 0]

    # -- elimination ---------------------------------------------------------

    def rref(self):
        """Return (R, rank, pivot_cols) with R the reduced echelon form."""
        m = self.copy()
        rank, pivots = rref(m.array, self.p)
        return m, rank, pivots

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis(self) -> np.ndarray:
        """Canonical basis of {v : Mv = 0}: rows, in reduced echelon form."""
        r, rank, pivots = self.rref()
        k = kernel_from_rref(r.array, rank, pivots, self.p)
        rref(k, self.p)
        return k


def kernel_basis(m: MatrixModP) -> list:
    """Kernel basis as a list of int64 vectors (deterministic order)."""
    return list(m.kernel_basis())
