"""Exact dense matrices, sparse linear maps, and Smith normal form.

All arithmetic happens in a BaseRing (Z, Q, Z/m, GF(p)); nothing here ever
touches floating point.  Two representations coexist:

* Matrix: dense row-major storage; the carrier for elimination.
* SparseMap: column-sparse storage for structured operators (face maps,
  boundary operators, induced chain maps), which are almost entirely zero.

smith_normal_form(M) returns (U, S, V) with S = U * M * V, U and V
invertible over the ring, S diagonal with the divisibility chain
d_1 | d_2 | ... | d_r.  The pivot rule is fixed for determinism: among the
nonzero entries of the working block, choose the one of smallest pivot
measure (|x| over Z, p-adic valuation over Z/p^k, any nonzero over a field),
breaking ties in row-major order.  Diagonal entries are normalized to
canonical unit multiples (positive over Z, 1 over fields, p-powers over
Z/p^k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InternalInvariantError, UnsupportedRingError
from .rings import BaseRing

__all__ = [
    "Matrix",
    "SparseMap",
    "SmithDecomposition",
    "smith_normal_form",
    "kernel_basis",
    "solve_membership",
    "MembershipResult",
    "PIVOT_RULE",
]

PIVOT_RULE = (
    "pivot of smallest measure (|x| over Z, p-adic valuation over Z/p^k, any "
    "nonzero over a field), ties broken row-major; diagonal normalized to "
    "canonical unit multiples"
)


class Matrix:
    """Immutable-by-convention dense matrix over a BaseRing."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: BaseRing, rows: Sequence[Sequence], ncols: int | None = None):
        self.ring = ring
        self.rows = [[ring.normalize(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols mismatch")
        else:
            self.ncols = 0 if ncols is None else ncols

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, ring: BaseRing, nrows: int, ncols: int) -> "Matrix":
        z = ring.zero
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring: BaseRing, n: int) -> "Matrix":
        m = cls.zeros(ring, n, n)
        one = ring.one
        for i in range(n):
            m.rows[i][i] = one
        return m

    @classmethod
    def from_cols(cls, ring: BaseRing, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls.zeros(ring, nrows or 0, 0)
        n = len(cols[0])
        return cls(ring, [[cols[j][i] for j in range(len(cols))] for i in range(n)], len(cols))

    def copy(self) -> "Matrix":
        m = Matrix.__new__(Matrix)
        m.ring = self.ring
        m.nrows, m.ncols = self.nrows, self.ncols
        m.rows = [row[:] for row in self.rows]
        return m

    # -- access ------------------------------------------------------------

    def col(self, j: int) -> tuple:
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def cols(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        zero = self.ring.is_zero
        return all(zero(x) for row in self.rows for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"Matrix({self.ring}, {self.nrows}x{self.ncols})"

    # -- arithmetic ----------------------------------------------------------

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        ring = self.ring
        out = Matrix.zeros(ring, self.nrows, other.ncols)
        is_zero = ring.is_zero
        for k in range(other.nrows):
            orow = other.rows[k]
            for i in range(self.nrows):
                a = self.rows[i][k]
                if is_zero(a):
                    continue
                trow = out.rows[i]
                for j, b in enumerate(orow):
                    if not is_zero(b):
                        trow[j] = ring.add(trow[j], ring.mul(a, b))
        return out

    def __mul__(self, other: "Matrix") -> "Matrix":
        return self.mul(other)

    def add(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        ring = self.ring
        return Matrix(
            ring,
            [[ring.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def sub(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        ring = self.ring
        return Matrix(
            ring,
            [[ring.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.ncols,
        )

    def neg(self) -> "Matrix":
        ring = self.ring
        return Matrix(ring, [[ring.neg(a) for a in row] for row in self.rows], self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [self.col(i) for i in range(self.ncols)], self.nrows)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        ring = self.ring
        is_zero = ring.is_zero
        out = [ring.zero] * self.nrows
        for j, x in enumerate(vec):
            x = ring.normalize(x)
            if is_zero(x):
                continue
            for i in range(self.nrows):
                a = self.rows[i][j]
                if not is_zero(a):
                    out[i] = ring.add(out[i], ring.mul(a, x))
        return tuple(out)


@dataclass(frozen=True)
class SparseMap:
    """Column-sparse linear map; cols[j] lists (row, coeff) with coeff != 0."""

    ring: BaseRing
    nrows: int
    ncols: int
    cols: tuple[tuple[tuple[int, object], ...], ...]

    @classmethod
    def from_col_dicts(cls, ring: BaseRing, nrows: int, col_dicts: Sequence[dict]) -> "SparseMap":
        cols = []
        for d in col_dicts:
            entries = []
            for row in sorted(d):
                c = ring.normalize(d[row])
                if not ring.is_zero(c):
                    entries.append((row, c))
            cols.append(tuple(entries))
        return cls(ring, nrows, len(col_dicts), tuple(cols))

    @classmethod
    def zero(cls, ring: BaseRing, nrows: int, ncols: int) -> "SparseMap":
        return cls(ring, nrows, ncols, tuple(() for _ in range(ncols)))

    @classmethod
    def identity(cls, ring: BaseRing, n: int) -> "SparseMap":
        one = ring.one
        return cls(ring, n, n, tuple(((i, one),) for i in range(n)))

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SparseMap":
        ring = m.ring
        cols = []
        for j in range(m.ncols):
            cols.append(tuple((i, m.rows[i][j]) for i in range(m.nrows) if not ring.is_zero(m.rows[i][j])))
        return cls(ring, m.nrows, m.ncols, tuple(cols))

    def to_matrix(self) -> Matrix:
        out = Matrix.zeros(self.ring, self.nrows, self.ncols)
        for j, col in enumerate(self.cols):
            for i, c in col:
                out.rows[i][j] = c
        return out

    def compose(self, inner: "SparseMap") -> "SparseMap":
        """self after inner (matrix product self * inner)."""
        if self.ncols != inner.nrows:
            raise ValueError("shape mismatch in compose")
        ring = self.ring
        cols = []
        for col in inner.cols:
            acc: dict[int, object] = {}
            for k, c in col:
                for i, a in self.cols[k]:
                    acc[i] = ring.add(acc.get(i, ring.zero), ring.mul(a, c))
            cols.append({i: v for i, v in acc.items() if not ring.is_zero(v)})
        return SparseMap.from_col_dicts(ring, self.nrows, cols)

    def add(self, other: "SparseMap") -> "SparseMap":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in add")
        ring = self.ring
        cols = []
        for c1, c2 in zip(self.cols, other.cols):
            acc = dict(c1)
            for i, c in c2:
                acc[i] = ring.add(acc.get(i, ring.zero), c)
            cols.append(acc)
        return SparseMap.from_col_dicts(ring, self.nrows, cols)

    def scale(self, c) -> "SparseMap":
        ring = self.ring
        c = ring.normalize(c)
        cols = [{i: ring.mul(c, v) for i, v in col} for col in self.cols]
        return SparseMap.from_col_dicts(ring, self.nrows, cols)

    def neg(self) -> "SparseMap":
        return self.scale(self.ring.neg(self.ring.one))

    def sub(self, other: "SparseMap") -> "SparseMap":
        return self.add(other.neg())

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        ring = self.ring
        out = [ring.zero] * self.nrows
        for j, x in enumerate(vec):
            if ring.is_zero(x):
                continue
            for i, c in self.cols[j]:
                out[i] = ring.add(out[i], ring.mul(c, x))
        return tuple(out)

    def is_zero_map(self) -> bool:
        return all(not col for col in self.cols)

    def nnz(self) -> int:
        return sum(len(col) for col in self.cols)


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = S with U, V invertible and S in Smith normal form."""

    U: Matrix
    S: Matrix
    V: Matrix
    Uinv: Matrix
    Vinv: Matrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.S.rows[i][i] for i in range(min(self.S.nrows, self.S.ncols)))

    @property
    def rank(self) -> int:
        ring = self.S.ring
        return sum(1 for d in self.diagonal if not ring.is_zero(d))

    @property
    def invariant_factors(self) -> tuple:
        ring = self.S.ring
        return tuple(d for d in self.diagonal if not ring.is_zero(d))


def _find_pivot(ring: BaseRing, S: list[list], t: int, nrows: int, ncols: int):
    best = None
    for i in range(t, nrows):
        row = S[i]
        for j in range(t, ncols):
            m = ring.pivot_measure(row[j])
            if m is None:
                continue
            if best is None or m < best[0]:
                best = (m, i, j)
                if ring.is_field:
                    return best
    return best


def _quotient(ring: BaseRing, a, b):
    """q with a - q*b reduced: exact where b | a, floor division over Z."""
    if ring.kind == "Z":
        return a // b
    return ring.exact_div(a, b) if ring.divides(b, a) else ring.zero


def _smith_engine(ring: BaseRing, mat: Matrix):
    """Core elimination; returns (U, Uinv, S, V, Vinv) as row lists."""
    nr, nc = mat.nrows, mat.ncols
    S = [row[:] for row in mat.rows]
    U = [[ring.one if i == j else ring.zero for j in range(nr)] for i in range(nr)]
    Uinv = [row[:] for row in U]
    V = [[ring.one if i == j else ring.zero for j in range(nc)] for i in range(nc)]
    Vinv = [row[:] for row in V]

    def row_sub(i, t, q):  # row_i -= q * row_t ; Uinv col_t += q * Uinv col_i
        if ring.is_zero(q):
            return
        for M in (S, U):
            ri, rt = M[i], M[t]
            for j in range(len(ri)):
                ri[j] = ring.sub(ri[j], ring.mul(q, rt[j]))
        for r in Uinv:
            r[t] = ring.add(r[t], ring.mul(q, r[i]))

    def col_sub(j, t, q):  # col_j -= q * col_t ; Vinv row_t += q * Vinv row_j
        if ring.is_zero(q):
            return
        for M in (S,):
            for r in M:
                r[j] = ring.sub(r[j], ring.mul(q, r[t]))
        for r in V:
            r[j] = ring.sub(r[j], ring.mul(q, r[t]))
        rt, rj = Vinv[t], Vinv[j]
        for b in range(len(rt)):
            rt[b] = ring.add(rt[b], ring.mul(q, rj[b]))

    def row_swap(i, t):
        if i == t:
            return
        S[i], S[t] = S[t], S[i]
        U[i], U[t] = U[t], U[i]
        for r in Uinv:
            r[i], r[t] = r[t], r[i]

    def col_swap(j, t):
        if j == t:
            return
        for r in S:
            r[j], r[t] = r[t], r[j]
        for r in V:
            r[j], r[t] = r[t], r[j]
        Vinv[j], Vinv[t] = Vinv[t], Vinv[j]

    def row_scale(i, u):  # row_i *= u (unit); Uinv col_i *= u^-1
        uinv = ring.inv(u)
        S[i] = [ring.mul(u, x) for x in S[i]]
        U[i] = [ring.mul(u, x) for x in U[i]]
        for r in Uinv:
            r[i] = ring.mul(uinv, r[i])

    def eliminate_at(t):
        while True:
            piv = _find_pivot(ring, S, t, nr, nc)
            if piv is None:
                return False
            _, pi, pj = piv
            row_swap(pi, t)
            col_swap(pj, t)
            clean = True
            for i in range(t + 1, nr):
                if not ring.is_zero(S[i][t]):
                    row_sub(i, t, _quotient(ring, S[i][t], S[t][t]))
                    if not ring.is_zero(S[i][t]):
                        clean = False
            for j in range(t + 1, nc):
                if not ring.is_zero(S[t][j]):
                    col_sub(j, t, _quotient(ring, S[t][j], S[t][t]))
                    if not ring.is_zero(S[t][j]):
                        clean = False
            if clean and all(ring.is_zero(S[i][t]) for i in range(t + 1, nr)) and all(
                ring.is_zero(S[t][j]) for j in range(t + 1, nc)
            ):
                return True

    def normalize_diag(t):
        d = S[t][t]
        if ring.is_zero(d):
            return
        if ring.kind == "Z":
            if d < 0:
                row_scale(t, -1)
        elif ring.is_field:
            row_scale(t, ring.inv(d))
        else:
            pk = ring.prime_power()
            if pk is None:
                raise UnsupportedRingError(
                    f"Smith normal form over Z/{ring.modulus} needs a prime power modulus"
                )
            p, _ = pk
            v, dd = 0, int(d)
            while dd % p == 0:
                dd //= p
                v += 1
            # d = unit * p^v; scale the unit away
            row_scale(t, ring.inv(ring.normalize(dd)))

    t = 0
    limit = min(nr, nc)
    while t < limit:
        if not eliminate_at(t):
            break
        normalize_diag(t)
        t += 1
    rank = t

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for t in range(rank - 1):
            a, b = S[t][t], S[t + 1][t + 1]
            if not ring.divides(a, b):
                # fold column t+1 into column t and re-eliminate
                for r in S:
                    r[t] = ring.add(r[t], r[t + 1])
                for r in V:
                    r[t] = ring.add(r[t], r[t + 1])
                row_t1 = Vinv[t + 1]
                row_t = Vinv[t]
                Vinv[t + 1] = [ring.sub(row_t1[j], row_t[j]) for j in range(nc)]
                eliminate_at(t)
                normalize_diag(t)
                eliminate_at(t + 1)
                normalize_diag(t + 1)
                changed = True
    return U, Uinv, S, V, Vinv


def smith_normal_form(mat: Matrix) -> SmithDecomposition:
    """Smith decomposition over Z, Q, GF(p), or Z/p^k.

    Deterministic: pivot of smallest measure, ties row-major.  Raises
    UnsupportedRingError over Z/m with composite non-prime-power m.
    """
    ring = mat.ring
    if ring.kind == "Zmod" and ring.prime_power() is None:
        raise UnsupportedRingError(
            f"Smith normal form over Z/{ring.modulus} needs a prime power modulus"
        )
    U, Uinv, S, V, Vinv = _smith_engine(ring, mat)
    mk = lambda rows, ncols: Matrix(ring, rows, ncols)  # noqa: E731
    dec = SmithDecomposition(
        U=mk(U, mat.nrows),
        S=mk(S, mat.ncols),
        V=mk(V, mat.ncols),
        Uinv=mk(Uinv, mat.nrows),
        Vinv=mk(Vinv, mat.ncols),
    )
    if __debug__ and mat.nrows * mat.ncols <= 2500:
        # cheap self-check on small inputs; the property suite covers the rest
        check = dec.U.mul(mat).mul(dec.V)
        if check != dec.S:
            raise InternalInvariantError("Smith decomposition failed U*M*V == S")
    return dec


def kernel_basis(mat: Matrix) -> list[tuple]:
    """Basis (lattice basis over Z) of ker(mat); list of column vectors.

    Restricted to Z and fields: over Z/p^k the free Smith columns do not
    generate the torsion part of the kernel, so this would silently lie.
    """
    if mat.ring.kind == "Zmod":
        raise UnsupportedRingError("kernel_basis is defined over Z and fields only")
    dec = smith_normal_form(mat)
    rank = dec.rank
    return [dec.V.col(j) for j in range(rank, mat.ncols)]


@dataclass(frozen=True)
class MembershipResult:
    """Witness for v in im(M) (found, x with M x = v) or a refusal reason."""

    found: bool
    witness: tuple | None = None
    reason: str = ""


def solve_membership(mat: Matrix, vec: Sequence) -> MembershipResult:
    """Decide v in column-image of M and produce an exact witness.

    Works over Z, Q, GF(p), and Z/m for arbitrary m >= 2 (via an integer
    lift augmented by m*I, which is exact for every modulus).
    """
    ring = mat.ring
    vec = tuple(ring.normalize(x) for x in vec)
    if len(vec) != mat.nrows:
        raise ValueError("vector length mismatch")
    if ring.kind == "Zmod":
        from .rings import ZZ

        m = ring.modulus
        lifted = Matrix(
            ZZ,
            [list(row) + [m if i == j else 0 for j in range(mat.nrows)] for i, row in enumerate(mat.rows)],
            mat.ncols + mat.nrows,
        )
        res = solve_membership(lifted, [int(x) for x in vec])
        if not res.found:
            return MembershipResult(False, None, res.reason)
        return MembershipResult(True, tuple(ring.normalize(x) for x in res.witness[: mat.ncols]))
    dec = smith_normal_form(mat)
    y = dec.U.apply(vec)
    rank = dec.rank
    x = [ring.zero] * mat.ncols
    for i in range(mat.nrows):
        if i < rank:
            d = dec.S.rows[i][i]
            if not ring.divides(d, y[i]):
                return MembershipResult(False, None, f"row {i}: {y[i]} not divisible by invariant {d}")
            x[i] = ring.exact_div(y[i], d)
        elif not ring.is_zero(y[i]):
            return MembershipResult(False, None, f"row {i}: residue {y[i]} outside image")
    witness = dec.V.apply(x)
    if __debug__ and mat.apply(witness) != vec:
        raise InternalInvariantError("membership witness failed M x == v")
    return MembershipResult(True, witness)
