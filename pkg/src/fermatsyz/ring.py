"""Degree-wise model of R = F_p[X,Y,Z]/(X^d + Y^d + Z^d).

Each graded piece R_n gets a deterministic monomial basis (X-exponent < d,
exponent triples in ascending lexicographic order), which turns every
question about multiplication maps into exact linear algebra over F_p.

d = 0 is accepted as the ambient-plane sentinel: no relation, every
monomial is a basis monomial, and the Hilbert function is the full
binomial count.  That keeps one code path for the curve and for P^2.
"""

from __future__ import annotations

import numpy as np

from .errors import SmoothnessError
from .field import PrimeField
from .linalg import MatrixModP
from .poly import FermatRelation, GradedPoly, Monomial, normal_form, reduce_monomial


def _choose2(m: int) -> int:
    return m * (m - 1) // 2 if m >= 2 else 0


class FermatRing:
    """F_p[X,Y,Z]/(X^d+Y^d+Z^d), or the plain polynomial ring when d = 0."""

    __slots__ = ("field", "d", "relation", "_bases", "_indexes")

    def __init__(self, field, d: int):
        if isinstance(field, int):
            field = PrimeField(field)
        if d < 0:
            raise ValueError("degree d must be >= 0 (0 = no relation)")
        self.field = field
        self.d = d
        self.relation = FermatRelation(d, field) if d > 0 else None
        self._bases: dict = {}
        self._indexes: dict = {}

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def is_plane(self) -> bool:
        return self.d == 0

    @property
    def smooth(self) -> bool:
        """The Fermat curve is smooth iff p does not divide d (P^2 always)."""
        return self.d == 0 or self.d % self.p != 0

    def require_smooth(self):
        if not self.smooth:
            raise SmoothnessError(
                f"p = {self.p} divides d = {self.d}: the Fermat curve is not smooth"
            )

    def __eq__(self, other):
        return isinstance(other, FermatRing) and self.field == other.field and self.d == other.d

    def __hash__(self):
        return hash((self.field, self.d))

    def __repr__(self):
        if self.is_plane:
            return f"F_{self.p}[X,Y,Z]"
        return f"F_{self.p}[X,Y,Z]/(X^{self.d}+Y^{self.d}+Z^{self.d})"

    # -- dimensions and bases ------------------------------------------------

    def hilbert(self, n: int) -> int:
        """dim R_n = C(n+2,2) - C(n-d+2,2) (second term absent for d = 0)."""
        if n < 0:
            return 0
        full = _choose2(n + 2)
        if self.d == 0:
            return full
        return full - _choose2(n - self.d + 2)

    def basis(self, n: int) -> tuple:
        """Monomial basis of R_n: X-exponent < d, ascending lex on (i, j, l)."""
        cached = self._bases.get(n)
        if cached is not None:
            return cached
        if n < 0:
            monos: tuple = ()
        else:
            top = n if self.d == 0 else min(n, self.d - 1)
            monos = tuple(
                Monomial(i, j, n - i - j) for i in range(top + 1) for j in range(n - i + 1)
            )
        self._bases[n] = monos
        return monos

    def basis_index(self, n: int) -> dict:
        cached = self._indexes.get(n)
        if cached is None:
            cached = {m: k for k, m in enumerate(self.basis(n))}
            self._indexes[n] = cached
        return cached

    # -- normal form and multiplication ---------------------------------------

    def normal_form(self, f: GradedPoly) -> GradedPoly:
        if self.relation is None:
            return f
        return normal_form(f, self.relation)

    def coords(self, f: GradedPoly) -> np.ndarray:
        """Coordinates of a normal-form element of R_n in the basis of R_n."""
        index = self.basis_index(f.degree)
        v = np.zeros(len(index), dtype=np.int64)
        for mono, c in f.terms.items():
            v[index[mono]] = c
        return v

    def from_coords(self, v, n: int) -> GradedPoly:
        basis = self.basis(n)
        terms = {basis[k]: int(c) for k, c in enumerate(v) if c}
        return GradedPoly(self.field, n, terms)

    def multiplication_matrix(self, g: GradedPoly, n: int) -> MatrixModP:
        """Matrix of (.g): R_n -> R_{n+deg g} in the monomial bases."""
        if g.field != self.field:
            raise ValueError("polynomial lives over a different field")
        src = self.basis(n)
        target_index = self.basis_index(n + g.degree)
        p = self.p
        d = self.d
        m = np.zeros((len(target_index), len(src)), dtype=np.int64)
        for col, mono in enumerate(src):
            for gm, gc in g.terms.items():
                prod = mono.mul(gm)
                if d == 0:
                    m[target_index[prod], col] = (m[target_index[prod], col] + gc) % p
                else:
                    for m2, c2 in reduce_monomial(prod, gc, d, p):
                        row = target_index[m2]
                        m[row, col] = (m[row, col] + c2) % p
        return MatrixModP(m, p)
