"""Syzygy bundles Syz(X^a1, Y^a2, Z^a3)(m) on P^2 and on Fermat curves.

Global sections in a given twist n are computed as module syzygies: the
kernel of

    [ .X^a1 | .Y^a2 | .Z^a3 ] : R_{n-a1} (+) R_{n-a2} (+) R_{n-a3} -> R_n

over the Fermat ring (or the polynomial ring for the plane, d = 0).  Two
elimination paths are provided:

* ``dense``      -- assemble the full block matrix and take its kernel;
* ``structured`` -- exploit that multiplying a basis monomial by Y^a2 or
  Z^a3 never needs reduction, so the degree-n piece of (Y^a2, Z^a3)R is
  spanned exactly by the basis monomials with Y-exponent >= a2 or
  Z-exponent >= a3.  A section is therefore determined by its first
  component s1, constrained by  s1 * X^a1 in (Y^a2, Z^a3)R, and that
  constraint splits into independent small banded binomial blocks indexed
  by the exponent residues mod d (the rewrite X^d -> -(Y^d + Z^d) moves
  exponents only in steps of d).

Both paths canonicalize through a final reduced-echelon pass, so they
return identical bases; tests enforce this.

Dimension reports carry ``lower_bound: True`` semantics: sections are
produced from module syzygies, which always give genuine sheaf sections
but are not claimed here to exhaust them in every degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ExponentOverflowError, InternalCheckError
from .field import PrimeField, binom_uint
from .linalg import MatrixModP, kernel_from_rref, rref
from .poly import EXP_LIMIT, GradedPoly, Monomial
from .ring import FermatRing

#: reports of section-space dimensions are lower bounds (module syzygies)
SECTION_DIMS_ARE_LOWER_BOUNDS = True

_RING_CACHE: dict = {}


def _ring(p: int, d: int) -> FermatRing:
    ring = _RING_CACHE.get((p, d))
    if ring is None:
        ring = FermatRing(p, d)
        _RING_CACHE[(p, d)] = ring
    return ring


@dataclass(frozen=True)
class SyzygySpec:
    """Syz(X^a1, Y^a2, Z^a3)(m) over F_p on the degree-d Fermat curve.

    d = 0 encodes the ambient projective plane.  The three generators
    never vanish simultaneously on a Fermat curve (no coordinate point
    satisfies X^d + Y^d + Z^d = 0), so the syzygy sheaf is locally free of
    rank 2; the constructor asserts this rather than assuming it silently.
    """

    p: int
    d: int
    exponents: tuple
    twist: int = 0

    def __post_init__(self):
        PrimeField(self.p)  # validates primality
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))
        if self.d < 0:
            raise ValueError("curve degree must be >= 0 (0 = projective plane)")
        if len(self.exponents) != 3 or min(self.exponents) < 1:
            raise ValueError("need three generator exponents >= 1")
        # the coordinate points (1:0:0), (0:1:0), (0:0:1) satisfy
        # X^d + Y^d + Z^d = 1 != 0, so the generators share no zero on the curve
        if 1 % self.p == 0:
            raise InternalCheckError("impossible: 1 = 0 in a prime field")

    @property
    def rank(self) -> int:
        return 2  # three generators, one relation sheaf

    @property
    def ring(self) -> FermatRing:
        return _ring(self.p, self.d)

    @property
    def smooth(self) -> bool:
        return self.ring.smooth

    def frobenius_pullback(self, e: int) -> "SyzygySpec":
        """Pull back along the e-th Frobenius: exponents and twist scale by p^e."""
        if e < 0:
            raise ValueError("Frobenius level must be >= 0")
        q = self.p**e
        if q >= EXP_LIMIT or max(self.exponents) * q >= EXP_LIMIT:
            raise ExponentOverflowError("p^e scaled exponents exceed the 64-bit range")
        a1, a2, a3 = self.exponents
        return SyzygySpec(self.p, self.d, (a1 * q, a2 * q, a3 * q), self.twist * q)

    def degree_and_slope(self):
        """(degree, slope) of the bundle; on the curve degrees carry a factor d."""
        plane_degree = 2 * self.twist - sum(self.exponents)
        degree = plane_degree if self.d == 0 else plane_degree * self.d
        return degree, Fraction(degree, 2)


class SectionVector:
    """A verified syzygy (s1, s2, s3): sum s_i * gen_i = 0 in the ring.

    Components are normal-form polynomials with deg s_i = twist - a_i
    (zero components allowed, including in negative degrees).
    """

    __slots__ = ("spec", "twist", "components")

    def __init__(self, spec: SyzygySpec, twist: int, components):
        s1, s2, s3 = components
        ring = spec.ring
        acc = None
        for var, (s, a) in enumerate(zip((s1, s2, s3), spec.exponents)):
            if s.field.p != spec.p:
                raise ValueError("component over the wrong field")
            if s.is_zero():
                continue
            if s.degree != twist - a:
                raise ValueError(
                    f"component degree {s.degree} != twist - exponent = {twist - a}"
                )
            exps = [0, 0, 0]
            exps[var] = a
            term = s * GradedPoly.monomial(s.field, 1, tuple(exps))
            acc = term if acc is None else acc + term
        if acc is not None and not ring.normal_form(acc).is_zero():
            raise ValueError("components do not satisfy the syzygy relation")
        self.spec = spec
        self.twist = twist
        self.components = (s1, s2, s3)

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.components)

    def serialize(self) -> list:
        return [s.to_string() for s in self.components]

    def __eq__(self, other):
        return (
            isinstance(other, SectionVector)
            and self.spec == other.spec
            and self.twist == other.twist
            and self.components == other.components
        )

    def __repr__(self):
        return f"SectionVector(twist={self.twist}, {self.serialize()})"


# -- dense path --------------------------------------------------------------


def syzygy_matrix(spec: SyzygySpec, n: int) -> MatrixModP:
    """Block matrix [ .X^a1 | .Y^a2 | .Z^a3 ] into R_n (dense reference path)."""
    ring = spec.ring
    blocks = []
    rows = ring.hilbert(n)
    for var, a in enumerate(spec.exponents):
        if n - a < 0:
            blocks.append(np.zeros((rows, 0), dtype=np.int64))
            continue
        exps = [0, 0, 0]
        exps[var] = a
        g = GradedPoly.monomial(ring.field, 1, tuple(exps))
        blocks.append(ring.multiplication_matrix(g, n - a).array)
    return MatrixModP(np.hstack(blocks), spec.p)


def _dense_kernel(spec: SyzygySpec, n: int) -> np.ndarray:
    return syzygy_matrix(spec, n).kernel_basis()


# -- structured path ----------------------------------------------------------
#
# Write A1, A2, A3 for the generator exponents.  For a basis monomial
# X^i Y^j Z^l (i < d), the product with X^A1 reduces in closed form to
#
#   (-1)^t * sum_v C(t, v) X^i' Y^(j + v d) Z^(l + (t - v) d),
#
# where i + A1 = i' + t d with 0 <= i' < d.  Grouping source monomials by
# (i, j mod d) makes the bad-projection (coordinates on target monomials
# with j < A2 and l < A3) block diagonal; within one class the matrix is a
# band of binomial coefficients C(t, gamma - alpha).


def _binom_row(t: int, p: int, cache: dict) -> np.ndarray:
    row = cache.get(t)
    if row is None:
        row = np.array([binom_uint(t, v, p) for v in range(t + 1)], dtype=np.int64)
        cache[t] = row
    return row


def _curve_blocks(spec: SyzygySpec, n: int):
    """Yield (i, j0, l0, N, t, block) per nonempty residue class (d > 0).

    ``block`` is the bad-projection matrix on the class coordinates
    alpha = 0..N, where the class consists of the source monomials
    X^i Y^(j0 + alpha d) Z^(l0 + beta d) with alpha + beta = N.
    """
    a1, a2, a3 = spec.exponents
    d = spec.d
    p = spec.p
    src_deg = n - a1
    cache: dict = {}
    for i in range(min(d, src_deg + 1)):
        t, _i2 = divmod(i + a1, d)
        row = _binom_row(t, p, cache)
        for j0 in range(min(d, src_deg - i + 1)):
            l0 = (src_deg - i - j0) % d
            rem = src_deg - i - j0 - l0
            if rem < 0:
                continue
            n_alpha = rem // d
            m_total = n_alpha + t
            g2 = (a2 - 1 - j0) // d if a2 - 1 - j0 >= 0 else -1
            g3 = (a3 - 1 - l0) // d if a3 - 1 - l0 >= 0 else -1
            lo = max(0, m_total - g3)
            hi = min(m_total, g2)
            if lo > hi:
                block = np.zeros((0, n_alpha + 1), dtype=np.int64)
            else:
                gammas = np.arange(lo, hi + 1)
                alphas = np.arange(n_alpha + 1)
                diff = gammas[:, None] - alphas[None, :]
                ok = (diff >= 0) & (diff <= t)
                block = np.where(ok, row[np.clip(diff, 0, t)], 0)
            yield i, j0, l0, n_alpha, t, block


def _plane_good_s1(spec: SyzygySpec, n: int):
    """On P^2 the constraint is monomial-wise: s1 monomials X^i Y^j Z^l with
    j >= a2 or l >= a3 extend to sections, the others do not."""
    _a1, a2, a3 = spec.exponents
    src_deg = n - spec.exponents[0]
    for i in range(src_deg + 1):
        for j in range(src_deg - i + 1):
            l = src_deg - i - j
            if j >= a2 or l >= a3:
                yield Monomial(i, j, l)


def _plane_good_count(spec: SyzygySpec, n: int) -> int:
    _a1, a2, a3 = spec.exponents
    src_deg = n - spec.exponents[0]
    if src_deg < 0:
        return 0
    total = (src_deg + 2) * (src_deg + 1) // 2
    bad = 0
    for j in range(min(a2 - 1, src_deg) + 1):
        bad += min(a3 - 1, src_deg - j) + 1
    return total - bad


def _structured_dim(spec: SyzygySpec, n: int, early_exit: bool = False) -> int:
    """Kernel dimension via the block decomposition.

    With early_exit=True, returns a positive value as soon as any
    contribution is found (all the destabilization search needs).
    """
    ring = spec.ring
    a1, a2, a3 = spec.exponents
    dim = ring.hilbert(n - a2 - a3)  # Koszul family
    if early_exit and dim:
        return dim
    if spec.d == 0:
        return dim + _plane_good_count(spec, n)
    p = spec.p
    for *_cls, block in _curve_blocks(spec, n):
        brows, bcols = block.shape
        if early_exit and brows < bcols:
            return dim + (bcols - brows)  # nullity is at least cols - rows
        dim += bcols - (_rank(block, p) if brows else 0)
        if early_exit and dim:
            return dim
    return dim


def _rank(block: np.ndarray, p: int) -> int:
    work = np.ascontiguousarray(block.copy())
    return rref(work, p)[0]


def _structured_kernel(spec: SyzygySpec, n: int) -> np.ndarray:
    """Full canonical kernel basis via the block decomposition."""
    ring = spec.ring
    a1, a2, a3 = spec.exponents
    p = spec.p
    src1 = ring.basis_index(n - a1)
    src2 = ring.basis_index(n - a2)
    src3 = ring.basis_index(n - a3)
    d1, d2, d3 = len(src1), len(src2), len(src3)
    total = d1 + d2 + d3
    x_a1 = GradedPoly.monomial(ring.field, 1, (a1, 0, 0))

    s1_list = []
    if spec.d == 0:
        for mono in _plane_good_s1(spec, n):
            s1_list.append(GradedPoly(ring.field, n - a1, {mono: 1}))
    else:
        d = spec.d
        for i, j0, l0, n_alpha, _t, block in _curve_blocks(spec, n):
            work = np.ascontiguousarray(block)
            rank, pivots = rref(work, p) if work.size else (0, [])
            if block.shape[1] - rank == 0:
                continue
            for kv in kernel_from_rref(work, rank, pivots, p):
                terms = {}
                for alpha, c in enumerate(kv):
                    if c:
                        beta = n_alpha - alpha
                        terms[Monomial(i, j0 + alpha * d, l0 + beta * d)] = int(c)
                s1_list.append(GradedPoly(ring.field, n - a1, terms))

    raw_rows = []
    for s1 in s1_list:
        w = ring.normal_form(s1 * x_a1)
        row = np.zeros(total, dtype=np.int64)
        for mono, c in s1.terms.items():
            row[src1[mono]] = c
        for mono, c in w.terms.items():
            c_neg = (-c) % p
            if mono.j >= a2:
                row[d1 + src2[Monomial(mono.i, mono.j - a2, mono.l)]] = c_neg
            elif mono.l >= a3:
                row[d1 + d2 + src3[Monomial(mono.i, mono.j, mono.l - a3)]] = c_neg
            else:
                raise InternalCheckError("bad-projection of a kernel element is nonzero")
        raw_rows.append(row)

    # Koszul family g * (0, Z^a3, -Y^a2); present only when n >= a2 + a3
    for g in ring.basis(n - a2 - a3):
        row = np.zeros(total, dtype=np.int64)
        row[d1 + src2[Monomial(g.i, g.j, g.l + a3)]] = 1
        row[d1 + d2 + src3[Monomial(g.i, g.j + a2, g.l)]] = p - 1
        raw_rows.append(row)

    if not raw_rows:
        return np.zeros((0, total), dtype=np.int64)
    m = np.ascontiguousarray(np.vstack(raw_rows))
    rref(m, p)
    nonzero = np.any(m, axis=1)  # rows are independent, but stay defensive
    return m[nonzero]


# -- public API ----------------------------------------------------------------

_DENSE_CUTOFF = 4000  # matrix entries; below this the dense path is just as fast


def _unpack_rows(spec: SyzygySpec, n: int, rows) -> list:
    ring = spec.ring
    a1, a2, a3 = spec.exponents
    d1 = ring.hilbert(n - a1)
    d2 = ring.hilbert(n - a2)
    sections = []
    for v in rows:
        s1 = ring.from_coords(v[:d1], n - a1)
        s2 = ring.from_coords(v[d1 : d1 + d2], n - a2)
        s3 = ring.from_coords(v[d1 + d2 :], n - a3)
        sections.append(SectionVector(spec, n, (s1, s2, s3)))
    return sections


def _section_kernel(spec: SyzygySpec, n: int, method: str = "auto") -> np.ndarray:
    if method not in ("auto", "dense", "structured"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        ring = spec.ring
        size = ring.hilbert(n) * sum(ring.hilbert(n - a) for a in spec.exponents)
        method = "dense" if size <= _DENSE_CUTOFF else "structured"
    if method == "dense":
        return _dense_kernel(spec, n)
    return _structured_kernel(spec, n)


def section_space(spec: SyzygySpec, n: int, method: str = "auto") -> list:
    """Basis of the degree-n module syzygies, as verified SectionVectors.

    ``method`` is "dense", "structured" or "auto"; the elimination paths
    return identical canonical bases, "auto" picks by problem size.
    """
    return _unpack_rows(spec, n, _section_kernel(spec, n, method))


def section_space_dim(spec: SyzygySpec, n: int, method: str = "auto") -> int:
    """Dimension of the degree-n syzygy space (a lower bound for h^0)."""
    if method == "dense":
        m = syzygy_matrix(spec, n)
        return m.cols - m.rank()
    return _structured_dim(spec, n)


def has_section(spec: SyzygySpec, n: int, method: str = "auto") -> bool:
    if method == "dense":
        return section_space_dim(spec, n, "dense") > 0
    return _structured_dim(spec, n, early_exit=True) > 0
