"""Cyclic bar construction, Hochschild homology, Connes B, cyclic homology.

Conventions, fixed once and recorded in CLI output:

* level q of the cyclic bar construction of A is A^tensor(q+1), basis
  tuples (i_0, ..., i_q), indexed big-endian;
* faces d_i multiply slots i and i+1 for 0 <= i < q, and d_q multiplies the
  last slot onto the first: d_q(a_0 x ... x a_q) = a_q a_0 x a_1 ... a_{q-1};
* degeneracies s_j insert the unit after slot j; the extra degeneracy s_e
  puts the unit in front;
* the cyclic operator t moves the last slot to the front (no sign); the
  signed operator at level q is t_s = (-1)^q t;
* the Hochschild boundary is b = sum_i (-1)^i d_i;
* the Connes boundary is B = (1 - t_s) s_e N with N = sum_i t_s^i, taken on
  the normalized complex, where B^2 = 0 and bB + Bb = 0 hold exactly.

The normalized complex is realized by first moving the algebra to a
unit-first basis (unit = basis vector 0); degenerate chains are then spanned
by basis tensors with a unit in some slot >= 1, and the quotient has the
honest basis of tuples avoiding index 0 past slot 0.  Homology results are
converted back to the caller's original basis at the boundary of the API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Algebra, AlgebraHom, unit_first_presentation
from .chain import ChainComplex, FPAbelianGroup, FPModule, HomologyData, homology
from .errors import CapExceededError, DegreeOutOfRangeError, UnsupportedRingError, ValidationError
from .linalg import Matrix, SparseMap
from .rings import BaseRing
from .validation import ValidationReport

__all__ = [
    "CyclicModule",
    "cyclic_bar",
    "validate_cyclic_module",
    "hochschild_complex",
    "HochschildHomology",
    "hochschild_homology",
    "connes_b",
    "cyclic_homology",
    "induced_chain_map",
    "tensor_power_map",
    "LEVEL_CAP",
    "B_CONVENTION",
]

LEVEL_CAP = 500_000
B_CONVENTION = "B = (1 - (-1)^q t) s_e N on the normalized complex; b = sum (-1)^i d_i; d_q merges last onto first"


class CyclicModule:
    """Levels A^tensor(q+1) for q = 0..max_level with the cyclic structure.

    All operators are column-sparse maps, built lazily and cached.
    """

    def __init__(self, algebra: Algebra, max_level: int):
        self.algebra = algebra
        self.ring = algebra.ring
        self.max_level = max_level
        self._cache: dict = {}

    def level_rank(self, q: int) -> int:
        if q < 0 or q > self.max_level:
            return 0
        return self.algebra.rank ** (q + 1)

    def tuples(self, q: int):
        return itertools.product(range(self.algebra.rank), repeat=q + 1)

    def tuple_index(self, tup) -> int:
        r = self.algebra.rank
        idx = 0
        for t in tup:
            idx = idx * r + t
        return idx

    def _check_level(self, q: int, lo: int = 0) -> None:
        if q < lo or q > self.max_level:
            raise DegreeOutOfRangeError(f"level {q} outside 0..{self.max_level}")

    def face(self, q: int, i: int) -> SparseMap:
        """d_i: level q -> level q-1."""
        self._check_level(q, lo=1)
        if not 0 <= i <= q:
            raise DegreeOutOfRangeError(f"face index {i} outside 0..{q}")
        key = ("d", q, i)
        if key not in self._cache:
            A, ring = self.algebra, self.ring
            cols = []
            for tup in self.tuples(q):
                if i < q:
                    prod = A.table[tup[i]][tup[i + 1]]
                    rest_head, rest_tail = tup[:i], tup[i + 2 :]
                    col = {
                        self.tuple_index(rest_head + (k,) + rest_tail): c for k, c in prod
                    }
                else:
                    prod = A.table[tup[q]][tup[0]]
                    body = tup[1:q]
                    col = {self.tuple_index((k,) + body): c for k, c in prod}
                cols.append(col)
            self._cache[key] = SparseMap.from_col_dicts(ring, self.level_rank(q - 1), cols)
        return self._cache[key]

    def degeneracy(self, q: int, j: int) -> SparseMap:
        """s_j: level q -> level q+1, inserting the unit after slot j."""
        self._check_level(q)
        self._check_level(q + 1)
        if not 0 <= j <= q:
            raise DegreeOutOfRangeError(f"degeneracy index {j} outside 0..{q}")
        key = ("s", q, j)
        if key not in self._cache:
            A, ring = self.algebra, self.ring
            cols = []
            for tup in self.tuples(q):
                col = {}
                for k, c in enumerate(A.unit):
                    if not ring.is_zero(c):
                        col[self.tuple_index(tup[: j + 1] + (k,) + tup[j + 1 :])] = c
                cols.append(col)
            self._cache[key] = SparseMap.from_col_dicts(ring, self.level_rank(q + 1), cols)
        return self._cache[key]

    def extra_degeneracy(self, q: int) -> SparseMap:
        """s_e: level q -> level q+1, placing the unit in slot 0."""
        self._check_level(q)
        self._check_level(q + 1)
        key = ("se", q)
        if key not in self._cache:
            A, ring = self.algebra, self.ring
            cols = []
            for tup in self.tuples(q):
                col = {}
                for k, c in enumerate(A.unit):
                    if not ring.is_zero(c):
                        col[self.tuple_index((k,) + tup)] = c
                cols.append(col)
            self._cache[key] = SparseMap.from_col_dicts(ring, self.level_rank(q + 1), cols)
        return self._cache[key]

    def cyclic(self, q: int) -> SparseMap:
        """t: level q -> level q, last slot to the front, no sign."""
        self._check_level(q)
        key = ("t", q)
        if key not in self._cache:
            ring = self.ring
            cols = []
            for tup in self.tuples(q):
                cols.append({self.tuple_index((tup[q],) + tup[:q]): ring.one})
            self._cache[key] = SparseMap.from_col_dicts(ring, self.level_rank(q), cols)
        return self._cache[key]

    def boundary(self, q: int) -> SparseMap:
        """Hochschild b = sum_i (-1)^i d_i: level q -> level q-1."""
        self._check_level(q, lo=1)
        key = ("b", q)
        if key not in self._cache:
            ring = self.ring
            acc = self.face(q, 0)
            sign = ring.one
            for i in range(1, q + 1):
                sign = ring.neg(sign)
                acc = acc.add(self.face(q, i).scale(sign))
            self._cache[key] = acc
        return self._cache[key]

    def signed_cyclic(self, q: int) -> SparseMap:
        """t_s = (-1)^q t at level q."""
        t = self.cyclic(q)
        return t if q % 2 == 0 else t.neg()

    def cyclic_norm(self, q: int) -> SparseMap:
        """N = sum_{i=0}^{q} t_s^i at level q."""
        ts = self.signed_cyclic(q)
        acc = SparseMap.identity(self.ring, self.level_rank(q))
        power = acc
        for _ in range(q):
            power = ts.compose(power)
            acc = acc.add(power)
        return acc


def cyclic_bar(A: Algebra, N: int, cap: int = LEVEL_CAP) -> CyclicModule:
    """Cyclic module of A with levels 0..N+1 (enough to compute HH_0..HH_N)."""
    if N < 0:
        raise DegreeOutOfRangeError("N must be >= 0")
    top = A.rank ** (N + 2)
    if top > cap:
        raise CapExceededError(
            f"cyclic bar level {N + 1} has rank {A.rank}^{N + 2} = {top} > cap {cap}"
        )
    return CyclicModule(A, N + 1)


def validate_cyclic_module(C: CyclicModule, through_level: int | None = None) -> ValidationReport:
    """Exhaustively check the simplicial and cyclic operator identities."""
    top = C.max_level if through_level is None else min(through_level, C.max_level)
    report = ValidationReport(subject=f"cyclic module of {C.algebra.name or 'algebra'}")

    def eq(lhs: SparseMap, rhs: SparseMap, label: str) -> None:
        report.checks_run += 1
        if lhs.cols != rhs.cols:
            report.record(label)

    for q in range(2, top + 1):
        for j in range(q + 1):
            for i in range(j):
                eq(
                    C.face(q - 1, i).compose(C.face(q, j)),
                    C.face(q - 1, j - 1).compose(C.face(q, i)),
                    f"d_{i} d_{j} != d_{j - 1} d_{i} at level {q}",
                )
    for q in range(0, top - 1):
        for i in range(q + 1):
            for j in range(i, q + 1):
                eq(
                    C.degeneracy(q + 1, i).compose(C.degeneracy(q, j)),
                    C.degeneracy(q + 1, j + 1).compose(C.degeneracy(q, i)),
                    f"s_i s_j identity fails (i={i}, j={j}) at level {q}",
                )
    for q in range(0, top):
        ident = SparseMap.identity(C.ring, C.level_rank(q))
        for j in range(q + 1):
            for i in range(q + 2):
                lhs = C.face(q + 1, i).compose(C.degeneracy(q, j))
                if i < j:
                    eq(lhs, C.degeneracy(q - 1, j - 1).compose(C.face(q, i)), f"d_{i} s_{j} != s_{j-1} d_{i} at level {q}")
                elif i in (j, j + 1):
                    eq(lhs, ident, f"d_{i} s_{j} != id at level {q}")
                else:
                    eq(lhs, C.degeneracy(q - 1, j).compose(C.face(q, i - 1)), f"d_{i} s_{j} != s_{j} d_{i-1} at level {q}")
    for q in range(0, top + 1):
        t = C.cyclic(q)
        power = SparseMap.identity(C.ring, C.level_rank(q))
        for _ in range(q + 1):
            power = t.compose(power)
        eq(power, SparseMap.identity(C.ring, C.level_rank(q)), f"t^{q + 1} != id at level {q}")
    for q in range(1, top + 1):
        t = C.cyclic(q)
        eq(C.face(q, 0).compose(t), C.face(q, q), f"d_0 t != d_q at level {q}")
        for i in range(1, q + 1):
            eq(
                C.face(q, i).compose(t),
                C.cyclic(q - 1).compose(C.face(q, i - 1)),
                f"d_{i} t != t d_{i - 1} at level {q}",
            )
        if q < top:
            eq(
                C.degeneracy(q, 0).compose(t),
                C.cyclic(q + 1).compose(C.cyclic(q + 1)).compose(C.degeneracy(q, q)),
                f"s_0 t != t^2 s_q at level {q}",
            )
            for i in range(1, q + 1):
                eq(
                    C.degeneracy(q, i).compose(t),
                    C.cyclic(q + 1).compose(C.degeneracy(q, i - 1)),
                    f"s_{i} t != t s_{i - 1} at level {q}",
                )
    return report


class NormalizedComplex:
    """Quotient of the cyclic bar levels by degenerate chains.

    Requires the algebra's unit to be basis vector 0; then degenerate chains
    are spanned by tuples with 0 in a slot >= 1 and the quotient basis is
    the set of tuples avoiding 0 past slot 0.
    """

    def __init__(self, C: CyclicModule):
        A = C.algebra
        if A.unit != A.basis_vector(0):
            raise ValidationError(
                "normalized complex needs a unit-first basis; apply unit_first_presentation"
            )
        self.cyclic_module = C
        self.ring = C.ring
        self._tuples: dict[int, list] = {}
        self._index: dict[int, dict] = {}
        self._cache: dict = {}

    def level_tuples(self, q: int) -> list:
        if q not in self._tuples:
            r = self.cyclic_module.algebra.rank
            tups = [
                (first,) + rest
                for first in range(r)
                for rest in itertools.product(range(1, r), repeat=q)
            ]
            tups.sort()
            self._tuples[q] = tups
            self._index[q] = {t: i for i, t in enumerate(tups)}
        return self._tuples[q]

    def rank(self, q: int) -> int:
        if q < 0 or q > self.cyclic_module.max_level:
            return 0
        return len(self.level_tuples(q))

    def projection(self, q: int) -> SparseMap:
        """Full level q -> normalized level q (kill degenerate tuples)."""
        key = ("proj", q)
        if key not in self._cache:
            self.level_tuples(q)
            index = self._index[q]
            ring = self.ring
            cols = []
            for tup in self.cyclic_module.tuples(q):
                pos = index.get(tup)
                cols.append({} if pos is None else {pos: ring.one})
            self._cache[key] = SparseMap.from_col_dicts(ring, self.rank(q), cols)
        return self._cache[key]

    def inclusion(self, q: int) -> SparseMap:
        """Normalized level q -> full level q (basis section)."""
        key = ("incl", q)
        if key not in self._cache:
            ring = self.ring
            cm = self.cyclic_module
            cols = [{cm.tuple_index(tup): ring.one} for tup in self.level_tuples(q)]
            self._cache[key] = SparseMap.from_col_dicts(ring, cm.level_rank(q), cols)
        return self._cache[key]

    def boundary(self, q: int) -> SparseMap:
        """Induced Hochschild boundary on the normalized complex."""
        key = ("b", q)
        if key not in self._cache:
            cm = self.cyclic_module
            self._cache[key] = (
                self.projection(q - 1).compose(cm.boundary(q)).compose(self.inclusion(q))
            )
        return self._cache[key]

    def connes_b(self, q: int) -> SparseMap:
        """Induced Connes boundary B: normalized level q -> q+1."""
        key = ("B", q)
        if key not in self._cache:
            cm = self.cyclic_module
            full = connes_b(cm, q)
            self._cache[key] = self.projection(q + 1).compose(full).compose(self.inclusion(q))
        return self._cache[key]

    def chain_complex(self, top: int) -> ChainComplex:
        ranks = [self.rank(q) for q in range(top + 1)]
        diffs = {q: self.boundary(q) for q in range(1, top + 1)}
        return ChainComplex(self.ring, ranks, diffs)


def connes_b(C: CyclicModule, q: int) -> SparseMap:
    """B = (1 - t_s) s_e N: level q -> level q+1 (descends to normalized)."""
    if q + 1 > C.max_level:
        raise DegreeOutOfRangeError(f"B at level {q} needs level {q + 1} <= {C.max_level}")
    n = C.cyclic_norm(q)
    se = C.extra_degeneracy(q)
    one_minus_t = SparseMap.identity(C.ring, C.level_rank(q + 1)).sub(C.signed_cyclic(q + 1))
    return one_minus_t.compose(se).compose(n)


def hochschild_complex(C: CyclicModule, normalized: bool = True) -> ChainComplex:
    """Chain complex of the cyclic module; all available levels.

    The normalized flavor requires the algebra to be in a unit-first basis
    (see unit_first_presentation); use HochschildHomology for arbitrary
    bases, which converts at the API boundary.
    """
    if normalized:
        return NormalizedComplex(C).chain_complex(C.max_level)
    ranks = [C.level_rank(q) for q in range(C.max_level + 1)]
    diffs = {q: C.boundary(q) for q in range(1, C.max_level + 1)}
    return ChainComplex(C.ring, ranks, diffs)


def tensor_power_map(f: SparseMap, power: int) -> SparseMap:
    """f^tensor(power) with big-endian tuple indexing on both sides."""
    if power < 1:
        raise ValueError("tensor power must be >= 1")
    ring = f.ring
    nrows, ncols = f.nrows, f.ncols
    cols: list[dict] = []
    for tup in itertools.product(range(ncols), repeat=power):
        acc = {0: ring.one}
        for t in tup:
            nxt: dict[int, object] = {}
            for base, c in acc.items():
                for row, a in f.cols[t]:
                    key = base * nrows + row
                    prev = nxt.get(key)
                    val = ring.mul(c, a)
                    nxt[key] = val if prev is None else ring.add(prev, val)
            acc = nxt
            if not acc:
                break
        cols.append(acc)
    return SparseMap.from_col_dicts(ring, nrows**power, cols)


def induced_chain_map(f: AlgebraHom, q: int) -> SparseMap:
    """Level-q map of cyclic bar constructions induced by an algebra map."""
    return tensor_power_map(SparseMap.from_matrix(f.matrix), q + 1)


class HochschildHomology:
    """HH_0..HH_max_degree of an algebra, with canonical class coordinates.

    Representatives and input cycles use the caller's basis of A^tensor(q+1);
    internally everything runs on the normalized complex of a unit-first
    presentation, and the two are bridged by tensor powers of the change of
    basis.
    """

    def __init__(self, A: Algebra, max_degree: int, cap: int = LEVEL_CAP):
        if max_degree < 0:
            raise DegreeOutOfRangeError("max_degree must be >= 0")
        self.algebra = A
        self.ring = A.ring
        self.max_degree = max_degree
        reduced, T, Tinv = unit_first_presentation(A)
        self.reduced = reduced
        self._t_map = SparseMap.from_matrix(T)
        self._tinv_map = SparseMap.from_matrix(Tinv)
        self.cyclic_module = cyclic_bar(reduced, max_degree, cap)
        self.normalized = NormalizedComplex(self.cyclic_module)
        self.complex = self.normalized.chain_complex(max_degree + 1)
        self._data: dict[int, HomologyData] = {}
        self._to_norm: dict[int, SparseMap] = {}
        self._from_norm: dict[int, SparseMap] = {}

    def homology_data(self, n: int) -> HomologyData:
        if n < 0 or n > self.max_degree:
            raise DegreeOutOfRangeError(f"degree {n} outside 0..{self.max_degree}")
        if n not in self._data:
            self._data[n] = homology(self.complex, n)
        return self._data[n]

    def group(self, n: int) -> FPAbelianGroup | FPModule:
        return self.homology_data(n).group

    def to_normalized(self, q: int) -> SparseMap:
        """Original-basis level q -> normalized level q."""
        if q not in self._to_norm:
            self._to_norm[q] = self.normalized.projection(q).compose(
                tensor_power_map(self._tinv_map, q + 1)
            )
        return self._to_norm[q]

    def from_normalized(self, q: int) -> SparseMap:
        """Normalized level q -> original-basis level q."""
        if q not in self._from_norm:
            self._from_norm[q] = tensor_power_map(self._t_map, q + 1).compose(
                self.normalized.inclusion(q)
            )
        return self._from_norm[q]

    def generators(self, n: int) -> tuple:
        """Representative cycles in the original basis of A^tensor(n+1)."""
        data = self.homology_data(n)
        conv = self.from_normalized(n)
        return tuple(conv.apply(g) for g in data.generators)

    def coordinates(self, n: int, vec) -> tuple:
        """Canonical class coordinates of a cycle given in the original basis."""
        return self.homology_data(n).coordinates(self.to_normalized(n).apply(vec))

    def is_boundary(self, n: int, vec) -> bool:
        return all(c == 0 for c in self.coordinates(n, vec))

    def classes_equal(self, n: int, u, v) -> bool:
        return self.coordinates(n, u) == self.coordinates(n, v)


def hochschild_homology(A: Algebra, n: int, cap: int = LEVEL_CAP):
    """HH_n(A) as an FPAbelianGroup (over Z, Z/p^k) or FPModule (fields)."""
    return HochschildHomology(A, n, cap).group(n)


def cyclic_homology(A: Algebra, n: int, cap: int = LEVEL_CAP) -> FPModule:
    """HC_n(A) over Q via the total complex of the normalized (b, B) bicomplex.

    Tot_m = sum over p >= 0 of the normalized level m-2p; the differential is
    b + B, whose square vanishing is exactly b^2 = 0, B^2 = 0, bB + Bb = 0,
    all of which hold on the nose and are re-checked by the chain complex
    constructor.
    """
    if A.ring.kind != "Q":
        raise UnsupportedRingError("cyclic homology is computed over Q only")
    if n < 0:
        raise DegreeOutOfRangeError("degree must be >= 0")
    work = HochschildHomology(A, n, cap)
    norm = work.normalized
    top = n + 1

    offsets: dict[int, list[int]] = {}
    totals: dict[int, int] = {}
    for m in range(top + 1):
        offs, pos = [], 0
        p = 0
        while m - 2 * p >= 0:
            offs.append(pos)
            pos += norm.rank(m - 2 * p)
            p += 1
        offsets[m] = offs
        totals[m] = pos

    ring = A.ring
    diffs: dict[int, SparseMap] = {}
    for m in range(1, top + 1):
        cols: list[dict] = [dict() for _ in range(totals[m])]
        for p, off in enumerate(offsets[m]):
            q = m - 2 * p
            b = norm.boundary(q) if q >= 1 else None
            B = norm.connes_b(q) if p >= 1 else None
            for j in range(norm.rank(q)):
                col = cols[off + j]
                if b is not None:
                    tgt_off = offsets[m - 1][p]
                    for i, c in b.cols[j]:
                        col[tgt_off + i] = ring.add(col.get(tgt_off + i, ring.zero), c)
                if B is not None:
                    tgt_off = offsets[m - 1][p - 1]
                    for i, c in B.cols[j]:
                        col[tgt_off + i] = ring.add(col.get(tgt_off + i, ring.zero), c)
        diffs[m] = SparseMap.from_col_dicts(ring, totals[m - 1], cols)

    tot = ChainComplex(ring, [totals[m] for m in range(top + 1)], diffs)
    data = homology(tot, n)
    group = data.group
    if not isinstance(group, FPModule):
        raise UnsupportedRingError("cyclic homology total complex must be over a field")
    return group
