"""Bounded chain complexes and homology with canonical representatives.

homology(C, n) returns a HomologyData handle carrying:

* the isomorphism type (FPAbelianGroup over Z and Z/p^k, FPModule over a
  field),
* one representative cycle per generator, expressed in the complex's own
  basis, and
* a coordinates() map that reduces any cycle of degree n to canonical
  coordinates (mod the generator orders), so that distinct callers agree on
  the meaning of "the class of z".

Everything is driven by Smith normal form, so output is deterministic for
the fixed pivot rule.  Over Z/m the modulus must be a prime power; other
moduli raise UnsupportedRingError (the composite case is deliberately out
of contract even where the integer-lattice method would cope).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    DegreeOutOfRangeError,
    InternalInvariantError,
    UnsupportedRingError,
    ValidationError,
)
from .linalg import Matrix, SmithDecomposition, SparseMap, smith_normal_form
from .rings import ZZ, BaseRing

__all__ = ["FPAbelianGroup", "FPModule", "ChainComplex", "HomologyData", "homology"]


@dataclass(frozen=True)
class FPAbelianGroup:
    """Finitely generated abelian group: Z^free_rank + sum Z/d_i.

    invariant_factors is the canonical divisibility chain d_1 | d_2 | ...,
    every d_i >= 2, so equality of groups is plain equality of fields.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a divisibility chain, got {self.invariant_factors}")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FPModule:
    """Finite-dimensional vector space over an exact field."""

    field: BaseRing
    dimension: int

    def __post_init__(self) -> None:
        if not self.field.is_field:
            raise ValueError(f"{self.field} is not a field")
        if self.dimension < 0:
            raise ValueError("dimension must be >= 0")

    @property
    def is_trivial(self) -> bool:
        return self.dimension == 0

    def __str__(self) -> str:
        if self.dimension == 0:
            return "0"
        if self.dimension == 1:
            return str(self.field)
        return f"{self.field}^{self.dimension}"


class ChainComplex:
    """Chain complex concentrated in degrees 0..top_degree.

    differentials[n] is the boundary C_n -> C_{n-1} for 1 <= n <= top_degree;
    the composite of consecutive differentials is checked to vanish at
    construction time.
    """

    def __init__(self, ring: BaseRing, ranks: list[int], differentials: dict[int, SparseMap]):
        self.ring = ring
        self.ranks = tuple(ranks)
        self.differentials = dict(differentials)
        for n, d in self.differentials.items():
            if n < 1 or n > self.top_degree:
                raise ValueError(f"differential in degree {n} outside 1..{self.top_degree}")
            if (d.nrows, d.ncols) != (self.ranks[n - 1], self.ranks[n]):
                raise ValueError(
                    f"differential {n} has shape {d.nrows}x{d.ncols}, expected "
                    f"{self.ranks[n - 1]}x{self.ranks[n]}"
                )
        for n in range(1, self.top_degree):
            if n in self.differentials and n + 1 in self.differentials:
                if not self.differentials[n].compose(self.differentials[n + 1]).is_zero_map():
                    raise ValidationError(f"boundary of boundary is nonzero in degree {n + 1}")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, n: int) -> int:
        if 0 <= n <= self.top_degree:
            return self.ranks[n]
        return 0

    def differential(self, n: int) -> SparseMap:
        """Boundary C_n -> C_{n-1}; the zero map in degrees 0 and out of range."""
        if n in self.differentials:
            return self.differentials[n]
        return SparseMap.zero(self.ring, self.rank(n - 1), self.rank(n))


def _ints(vec) -> list[int]:
    return [int(x) for x in vec]


@dataclass
class HomologyData:
    """Homology group in one degree plus canonical reduction machinery."""

    ring: BaseRing
    degree: int
    group: FPAbelianGroup | FPModule
    generators: tuple[tuple, ...]
    orders: tuple[int, ...]  # order of each generator; 0 means infinite/free
    _reduce: object = field(repr=False, default=None)
    _cycle_test: object = field(repr=False, default=None)

    def is_cycle(self, vec) -> bool:
        return self._cycle_test(tuple(self.ring.normalize(x) for x in vec))

    def coordinates(self, vec) -> tuple:
        """Canonical coordinates of the class of a cycle.

        Torsion coordinates are reduced into [0, order); free coordinates are
        exact.  Raises ValidationError when vec is not a cycle.
        """
        vec = tuple(self.ring.normalize(x) for x in vec)
        if not self._cycle_test(vec):
            raise ValidationError(f"vector is not a cycle in degree {self.degree}")
        return self._reduce(vec)

    def is_boundary(self, vec) -> bool:
        return all(c == 0 for c in self.coordinates(vec))

    def classes_equal(self, u, v) -> bool:
        return self.coordinates(u) == self.coordinates(v)


def _homology_pid(ring: BaseRing, d_n: Matrix, d_np1: Matrix, degree: int) -> HomologyData:
    """Z and field case: kernel is free, quotient read off one more SNF."""
    dec1 = smith_normal_form(d_n)
    rank1 = dec1.rank
    r_n = d_n.ncols
    k = r_n - rank1  # nullity
    kernel_cols = [dec1.V.col(j) for j in range(rank1, r_n)]

    # express boundaries in the kernel basis: rows rank1.. of V^-1 * d_{n+1}
    Y = dec1.Vinv.mul(d_np1)
    for i in range(rank1):
        if any(not ring.is_zero(x) for x in Y.rows[i]):
            raise InternalInvariantError("boundary column escaped the kernel lattice")
    X = Matrix(ring, Y.rows[rank1:], d_np1.ncols)
    dec2 = smith_normal_form(X)
    s = dec2.rank
    diag = [dec2.S.rows[i][i] for i in range(min(k, X.ncols))]

    gen_matrix = Matrix.from_cols(ring, kernel_cols, r_n).mul(dec2.Uinv) if k else Matrix.zeros(ring, r_n, 0)

    kept: list[int] = []
    orders: list[int] = []
    factors: list[int] = []
    for j in range(k):
        if j < s:
            d = diag[j]
            if ring.is_unit(d):
                continue  # killed generator
            kept.append(j)
            orders.append(int(d))
            factors.append(int(d))
        else:
            kept.append(j)
            orders.append(0)
    free_rank = k - s
    if ring.is_field:
        group: FPAbelianGroup | FPModule = FPModule(ring, free_rank)
    else:
        group = FPAbelianGroup(free_rank, tuple(factors))

    generators = tuple(gen_matrix.col(j) for j in kept)
    U2 = dec2.U
    V1inv = dec1.Vinv

    def cycle_test(vec, _d_n=d_n) -> bool:
        return all(ring.is_zero(x) for x in _d_n.apply(vec))

    def reduce(vec) -> tuple:
        y = V1inv.apply(vec)
        tail = y[rank1:]
        c = U2.apply(tail) if k else ()
        out = []
        for j, order in zip(kept, orders):
            if order:
                out.append(c[j] % order)
            else:
                out.append(c[j])
        return tuple(out)

    return HomologyData(ring, degree, group, generators, tuple(orders), reduce, cycle_test)


def _homology_zmod(ring: BaseRing, d_n: Matrix, d_np1: Matrix, degree: int) -> HomologyData:
    """Z/p^k case via integer lifts.

    The kernel of (x -> d_n x mod m) on Z^{r_n} is a full-rank lattice with
    basis V * diag(w_i), w_i = m / gcd(d_i, m); homology is the cokernel of
    the relation matrix [d_{n+1} | m I] rewritten in that basis.
    """
    m = ring.modulus
    r_n = d_n.ncols
    lift_n = Matrix(ZZ, [_ints(row) for row in d_n.rows], r_n)
    lift_np1 = Matrix(ZZ, [_ints(row) for row in d_np1.rows], d_np1.ncols)
    dec1 = smith_normal_form(lift_n)
    rank1 = dec1.rank
    weights = [m // math.gcd(int(dec1.S.rows[i][i]), m) if i < rank1 else 1 for i in range(r_n)]

    rel_cols = lift_np1.cols() + [tuple(m if i == j else 0 for i in range(r_n)) for j in range(r_n)]
    W = dec1.Vinv.mul(Matrix.from_cols(ZZ, rel_cols, r_n))
    rel_rows = []
    for i in range(r_n):
        w = weights[i]
        row = []
        for x in W.rows[i]:
            q, r = divmod(x, w)
            if r:
                raise InternalInvariantError("relation escaped the mod-m kernel lattice")
            row.append(q)
        rel_rows.append(row)
    Rel = Matrix(ZZ, rel_rows, len(rel_cols))
    dec2 = smith_normal_form(Rel)
    if dec2.rank != r_n:
        raise InternalInvariantError("mod-m relation matrix must have full rank")
    diag = [int(dec2.S.rows[i][i]) for i in range(r_n)]

    # generators: kernel-lattice basis twisted by U2^-1, reduced mod m
    M_ker = Matrix(ZZ, [[dec1.V.rows[i][j] * weights[j] for j in range(r_n)] for i in range(r_n)], r_n)
    gen_int = M_ker.mul(dec2.Uinv)
    kept = [j for j in range(r_n) if diag[j] != 1]
    orders = [diag[j] for j in kept]
    for d in orders:
        if m % d != 0:
            raise InternalInvariantError("generator order must divide the modulus")
    group = FPAbelianGroup(0, tuple(d for d in orders))
    generators = tuple(tuple(ring.normalize(gen_int.rows[i][j]) for i in range(r_n)) for j in kept)

    V1inv = dec1.Vinv
    U2 = dec2.U

    def cycle_test(vec, _d_n=d_n) -> bool:
        return all(ring.is_zero(x) for x in _d_n.apply(vec))

    def reduce(vec) -> tuple:
        u = V1inv.apply(_ints(vec))
        x = []
        for i in range(r_n):
            w = weights[i]
            q, r = divmod(u[i] % m, w)
            if r:
                raise InternalInvariantError("cycle escaped the mod-m kernel lattice")
            x.append(q)
        c = U2.apply(x)
        return tuple(c[j] % orders[idx] for idx, j in enumerate(kept))

    return HomologyData(ring, degree, group, generators, tuple(orders), reduce, cycle_test)


def homology(complex_: ChainComplex, n: int) -> HomologyData:
    """H_n with canonical generators; needs both boundaries in range.

    Degrees run 0..top_degree-1 so that the incoming boundary from degree
    n+1 exists; asking for the top degree raises DegreeOutOfRangeError.
    """
    if n < 0 or n >= complex_.top_degree:
        raise DegreeOutOfRangeError(
            f"degree {n} outside computable range 0..{complex_.top_degree - 1}"
        )
    ring = complex_.ring
    d_n = complex_.differential(n).to_matrix()
    d_np1 = complex_.differential(n + 1).to_matrix()
    if ring.kind in ("Z",) or ring.is_field:
        return _homology_pid(ring, d_n, d_np1, n)
    if ring.kind == "Zmod":
        if ring.prime_power() is None:
            raise UnsupportedRingError(
                f"homology over Z/{ring.modulus} is supported for prime powers only"
            )
        return _homology_zmod(ring, d_n, d_np1, n)
    raise UnsupportedRingError(f"homology over {ring} is not supported")
