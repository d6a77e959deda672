"""Flag-grid combinatorics and K_0 for bounded Waldhausen categories.

The flag category S_k over a base category C has as objects staircase
grids on [k] x [k]: entries X(i,j) that are zero for i >= j, horizontal
cofibrations X(i,j) >-> X(i,j+1) above the diagonal, and for every
i < j < l a pushout square expressing X(j,l) as the quotient
X(i,l)/X(i,j).  Equivalently an object is a chain of cofibrations
0 >-> X(0,1) >-> ... >-> X(0,k) together with compatible choices of all
subquotients.  This module enumerates those grids over a bounded base,
packages S_k as a bounded category in its own right (so the construction
can be iterated), and extracts K_0 two ways:

* ``k0_via_sdot``: H_1 of the diagonal simplicial set n |-> ob w_n S_n C,
  whose 1-simplices are weak-equivalence strings of flag grids.  The
  level-0 set is a single point, the fundamental group of the diagonal
  is K_0 and is abelian, so H_1 computes it; only levels <= 2 are needed
  and the boundary matrix is reduced by Smith normal form over Z.
* ``grothendieck_k0``: the textbook presentation, free abelian on the
  nonzero objects modulo [a] = [a'] for every flagged weak equivalence
  and [b] = [a] + [b/a] for every enumerated cofiber sequence.

The two computations share no code beyond integer Smith reduction, so
their agreement on a category is a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import ChainComplex, FPAbelianGroup, HomologyData, homology
from .errors import CapExceededError, InternalInvariantError, ValidationError
from .linalg import SparseMap
from .rings import ZZ
from .validation import ValidationReport
from .wcat import ExactFunctor, WCategory, end_category

__all__ = [
    "DEFAULT_K_CAP",
    "STRING_CAP",
    "S_OBJECT_CAP",
    "SObject",
    "s_k_objects",
    "validate_s_object",
    "SCategory",
    "reindex_s_object",
    "reindex_s_morphism",
    "PointedSimplicialSet",
    "ws_diagonal",
    "k0_via_sdot",
    "K0Presentation",
    "k0_presentation",
    "grothendieck_k0",
    "k0_functor_matrix",
    "k0_retract_holds",
]

# Flag grids are enumerated exhaustively, so the column count k is capped.
DEFAULT_K_CAP = 3
# Largest simplicial level ws_diagonal will materialize.
STRING_CAP = 200_000
# Largest grid count s_k_objects will enumerate.
S_OBJECT_CAP = 200_000


# ---------------------------------------------------------------------------
# flag grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SObject:
    """A staircase grid of cofibrations and chosen quotients over a base.

    ``entries[i*(k+1)+j]`` is the object index at position (i, j);
    ``horizontal[i*k+j]`` the morphism handle X(i,j) -> X(i,j+1);
    ``vertical[i*(k+1)+j]`` the handle X(i,j) -> X(i+1,j).  Handles refer
    to the base category the grid was enumerated over.
    """

    k: int
    entries: tuple
    horizontal: tuple
    vertical: tuple

    @property
    def payload(self) -> tuple:
        return (self.entries, self.horizontal, self.vertical)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * (self.k + 1) + j]

    def horizontal_arrow(self, i: int, j: int) -> int:
        """Handle of X(i,j) -> X(i,j+1); needs 0 <= j <= k-1."""
        return self.horizontal[i * self.k + j]

    def vertical_arrow(self, i: int, j: int) -> int:
        """Handle of X(i,j) -> X(i+1,j); needs 0 <= i <= k-1."""
        return self.vertical[i * (self.k + 1) + j]


def _hcomp(base: WCategory, k: int, payload: tuple, i: int, j1: int, j2: int) -> int:
    """Composite X(i,j1) -> X(i,j2) along row i; identity when j1 == j2."""
    entries, harr, _ = payload
    m = base.identity_id(entries[i * (k + 1) + j1])
    for j in range(j1, j2):
        m = base.compose_ids(harr[i * k + j], m)
    return m


def _vcomp(base: WCategory, k: int, payload: tuple, i1: int, i2: int, j: int) -> int:
    """Composite X(i1,j) -> X(i2,j) down column j; identity when i1 == i2."""
    entries, _, varr = payload
    m = base.identity_id(entries[i1 * (k + 1) + j])
    for i in range(i1, i2):
        m = base.compose_ids(varr[i * (k + 1) + j], m)
    return m


def _s_payload_issues(base: WCategory, k: int, payload: tuple, skip_built_triples: bool) -> list:
    """Violations of the grid axioms, as strings.

    ``skip_built_triples`` omits the pushout check for triples (j-1, j, l),
    which hold by construction when the grid came out of the enumerator.
    """
    n = k + 1
    entries, harr, varr = payload
    z = base.zero_index()
    issues = []
    for i in range(n):
        for j in range(n):
            if i >= j and entries[i * n + j] != z:
                issues.append(f"entry ({i},{j}) must be the zero object")
    if issues:
        return issues
    for i in range(n):
        for j in range(k):
            m = harr[i * k + j]
            if base.mor_source(m) != entries[i * n + j] or base.mor_target(m) != entries[i * n + j + 1]:
                issues.append(f"horizontal arrow ({i},{j}) has wrong endpoints")
            elif j >= i and not base.is_cofibration_id(m):
                issues.append(f"horizontal arrow ({i},{j}) is not a cofibration")
    for i in range(k):
        for j in range(n):
            m = varr[i * n + j]
            if base.mor_source(m) != entries[i * n + j] or base.mor_target(m) != entries[(i + 1) * n + j]:
                issues.append(f"vertical arrow ({i},{j}) has wrong endpoints")
    if issues:
        return issues
    for i in range(k):
        for j in range(k):
            lhs = base.compose_ids(varr[i * n + j + 1], harr[i * k + j])
            rhs = base.compose_ids(harr[(i + 1) * k + j], varr[i * n + j])
            if lhs != rhs:
                issues.append(f"square at ({i},{j}) does not commute")
    if issues:
        return issues
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            for l in range(j + 1, k + 1):
                if skip_built_triples and j == i + 1:
                    continue
                top = _hcomp(base, k, payload, i, j, l)
                (to_zero,) = base.hom_ids(entries[i * n + j], z)
                u = _vcomp(base, k, payload, i, j, l)
                (v,) = base.hom_ids(z, entries[j * n + l])
                if not base.is_pushout(top, to_zero, entries[j * n + l], u, v):
                    issues.append(f"triple ({i},{j},{l}) is not a pushout square")
    return issues


def validate_s_object(base: WCategory, obj: SObject) -> ValidationReport:
    """Check every grid axiom of ``obj`` over ``base``, including all pushout triples."""
    report = ValidationReport(subject=f"flag grid over {base.name}")
    issues = _s_payload_issues(base, obj.k, obj.payload, skip_built_triples=False)
    n = obj.k + 1
    triples = sum(1 for i in range(n) for j in range(i + 1, n) for _ in range(j + 1, n))
    report.checks_run += n * n + 2 * n * obj.k + obj.k * obj.k + triples
    for msg in issues:
        report.record(msg)
    return report


def _enumerate_s_payloads(base: WCategory, k: int, cap: int = S_OBJECT_CAP) -> list:
    """All valid grid payloads over the base, sorted; complete within the bound.

    Rows are built downward: the top row ranges over cofibration chains
    from zero, and row j is assembled from every quotient datum of
    X(j-1,j) >-> X(j-1,l) (any two pushouts of one cospan are uniquely
    isomorphic, so the isomorphism orbit of the canonical witness is the
    complete candidate set).  Horizontal arrows of the new row are the
    unique mediating maps, so the grid axioms for triples (j-1, j, l)
    hold by construction; the remaining triples are checked afterwards.
    """
    z = base.zero_index()
    idz = base.identity_id(z)
    n = k + 1
    if k == 0:
        return [((z,) * 1, (), ())]

    chains = [((z,), ())]
    for _ in range(k):
        nxt = []
        for objs, arrows in chains:
            for m in base.cofibs_from(objs[-1]):
                nxt.append((objs + (base.mor_target(m),), arrows + (m,)))
        chains = nxt
        if len(chains) > cap:
            raise CapExceededError(f"more than {cap} cofibration chains of length {k}")

    out = []
    for top_objs, top_arrows in chains:
        # grids[t] = (rows, hrows, vrows): lists of row tuples built so far
        grids = [((top_objs,), (top_arrows,), ())]
        for j in range(1, n):
            nxt = []
            for rows, hrows, vrows in grids:
                prev = rows[j - 1]
                prev_h = hrows[j - 1]
                prev_pay = (prev, prev_h, ())
                cand_sets = []
                for l in range(j + 1, n):
                    i_comp = _hcomp(base, k, prev_pay, 0, j, l)
                    cand_sets.append(base.cokernel_candidates(i_comp))
                for combo in _product(cand_sets):
                    row = [z] * n
                    vrow = [idz] * j + [base.hom_ids(prev[j], z)[0]]
                    hrow = [idz] * min(j, k)
                    ok = True
                    for t, (d, u, _v) in enumerate(combo):
                        row[j + 1 + t] = d
                        vrow.append(u)
                    if j < n - 1:
                        hrow.append(base.hom_ids(z, row[j + 1])[0])
                    for l in range(j + 1, n - 1):
                        d_l, u_l, v_l = combo[l - j - 1]
                        p = base.compose_ids(combo[l - j], prev_h[l])
                        (q,) = base.hom_ids(z, row[l + 1])
                        meds = base.mediating_ids(u_l, v_l, p, q)
                        if len(meds) != 1:
                            raise InternalInvariantError(
                                "quotient row admits no unique induced arrow; "
                                "is the base category valid?"
                            )
                        if not base.is_cofibration_id(meds[0]):
                            ok = False
                            break
                        hrow.append(meds[0])
                    if ok:
                        nxt.append(
                            (rows + (tuple(row),), hrows + (tuple(hrow),), vrows + (tuple(vrow),))
                        )
            grids = nxt
            if len(grids) > cap:
                raise CapExceededError(f"more than {cap} flag grids over {base.name}")

        for rows, hrows, vrows in grids:
            payload = (
                tuple(x for row in rows for x in row),
                tuple(x for row in hrows for x in row),
                tuple(x for row in vrows for x in row),
            )
            issues = _s_payload_issues(base, k, payload, skip_built_triples=True)
            if issues:
                raise InternalInvariantError(
                    f"assembled grid violates '{issues[0]}'; is the base category valid?"
                )
            out.append(payload)
    out.sort()
    if len(out) > cap:
        raise CapExceededError(f"more than {cap} flag grids over {base.name}")
    return out


def _product(cand_sets: list):
    """Cartesian product tolerating the empty-list-of-sets case."""
    if not cand_sets:
        yield ()
        return
    head, tail = cand_sets[0], cand_sets[1:]
    for c in head:
        for rest in _product(tail):
            yield (c,) + rest


def s_k_objects(C: WCategory, k: int, k_cap: int = DEFAULT_K_CAP) -> list:
    """Every flag grid on [k] x [k] over C, validated, in canonical order."""
    if k < 0:
        raise ValidationError("k must be nonnegative")
    if k > k_cap:
        raise CapExceededError(f"k = {k} exceeds the flag-grid cap {k_cap}")
    combo = _enumerate_s_payloads(C, k)
    return [SObject(k, *payload) for payload in combo]


# ---------------------------------------------------------------------------
# the flag category S_k C
# ---------------------------------------------------------------------------


class SCategory(WCategory):
    """S_k over a bounded base, as a bounded category in its own right.

    Objects are the enumerated flag grids; morphisms are natural maps
    stored as component tuples over the strictly-upper slots (i < j) in
    row-major order (components at zero slots are forced).  Weak
    equivalences are the levelwise ones.  Cofibrations are the levelwise
    cofibrations whose top-row comparison maps
    X(0,j) u_{X(0,j-1)} Y(0,j-1) -> Y(0,j) are again cofibrations; when
    the comparison pushout does not fit within the bound the map is
    conservatively not a cofibration.
    """

    def __init__(self, base: WCategory, k: int, k_cap: int = DEFAULT_K_CAP):
        if k > k_cap:
            raise CapExceededError(f"k = {k} exceeds the flag-grid cap {k_cap}")
        self.base = base
        self.k = k
        self._slots = tuple(
            (i, j) for i in range(k + 1) for j in range(k + 1) if i < j
        )
        self._slot_pos = {s: t for t, s in enumerate(self._slots)}
        self._grid_payloads = _enumerate_s_payloads(base, k)
        super().__init__(f"S_{k}({base.name})", base.bound)

    # -- hooks ---------------------------------------------------------------

    def _objects(self):
        return self._grid_payloads

    def _object_size(self, payload) -> int:
        entries = payload[0]
        return max(self.base.object_size(e) for e in entries)

    def _zero_payload(self):
        z = self.base.zero_index()
        idz = self.base.identity_id(z)
        n = self.k + 1
        return ((z,) * (n * n), (idz,) * (n * self.k), (idz,) * (self.k * n))

    def slot_entry(self, a: int, i: int, j: int) -> int:
        """Base object index at grid position (i, j) of object a."""
        return self._obj_payloads[a][0][i * (self.k + 1) + j]

    def slot_component(self, m: int, i: int, j: int) -> int:
        """Base component of morphism m at slot (i, j), which must have i < j."""
        return self._mor_payload[m][self._slot_pos[(i, j)]]

    def s_object(self, a: int) -> SObject:
        return SObject(self.k, *self._obj_payloads[a])

    def _nat_search(self, Xp, Yp, weq_only: bool) -> list:
        base, k, n = self.base, self.k, self.k + 1
        Xe, Xh, Xv = Xp[0], Xp[1], Xp[2]
        Ye, Yh, Yv = Yp[0], Yp[1], Yp[2]
        slots = self._slots
        slot_pos = self._slot_pos
        comps = [0] * len(slots)
        out = []

        def pick(t: int):
            if t == len(slots):
                out.append(tuple(comps))
                return
            i, j = slots[t]
            xs, ys = Xe[i * n + j], Ye[i * n + j]
            cands = base.weq_ids(xs, ys) if weq_only else base.hom_ids(xs, ys)
            for c in cands:
                if i < j - 1:
                    left = comps[slot_pos[(i, j - 1)]]
                    if base.compose_ids(c, Xh[i * k + j - 1]) != base.compose_ids(
                        Yh[i * k + j - 1], left
                    ):
                        continue
                if i >= 1:
                    up = comps[slot_pos[(i - 1, j)]]
                    if base.compose_ids(c, Xv[(i - 1) * n + j]) != base.compose_ids(
                        Yv[(i - 1) * n + j], up
                    ):
                        continue
                comps[t] = c
                pick(t + 1)

        pick(0)
        return out

    def _enumerate_hom(self, a_payload, b_payload) -> list:
        return self._nat_search(a_payload, b_payload, weq_only=False)

    def weq_ids(self, a: int, b: int) -> tuple:
        # enumerated directly from levelwise weak equivalences, skipping the
        # full hom set; sound because weak equivalences are levelwise
        got = self._weq_hom_cache.get((a, b))
        if got is None:
            pays = self._nat_search(self._obj_payloads[a], self._obj_payloads[b], weq_only=True)
            got = tuple(self.intern_morphism(p, a, b) for p in pays)
            self._weq_hom_cache[(a, b)] = got
        return got

    def _compose(self, g_payload, f_payload, a: int, b: int, c: int):
        base = self.base
        return tuple(base.compose_ids(g, f) for g, f in zip(g_payload, f_payload))

    def _identity(self, a_payload):
        base, n = self.base, self.k + 1
        entries = a_payload[0]
        return tuple(base.identity_id(entries[i * n + j]) for i, j in self._slots)

    def _is_weq(self, payload, a: int, b: int) -> bool:
        return all(self.base.is_weq_id(c) for c in payload)

    def _is_cofibration(self, payload, a: int, b: int) -> bool:
        base = self.base
        if not all(base.is_cofibration_id(c) for c in payload):
            return False
        if self.k < 2:
            return True
        Xp = self._obj_payloads[a]
        Yp = self._obj_payloads[b]
        n = self.k + 1
        for j in range(2, self.k + 1):
            i_h = Xp[1][0 * self.k + j - 1]
            alpha_prev = payload[self._slot_pos[(0, j - 1)]]
            w = base.pushout_witness(i_h, alpha_prev)
            if w is None:
                return False
            _d, u, v = w
            alpha_j = payload[self._slot_pos[(0, j)]]
            meds = base.mediating_ids(u, v, alpha_j, Yp[1][0 * self.k + j - 1])
            if len(meds) != 1:
                raise InternalInvariantError(
                    "top-row comparison map is not unique; is the base category valid?"
                )
            if not base.is_cofibration_id(meds[0]):
                return False
        return True

    def _pushout_witness(self, i: int, f: int):
        base, k, n = self.base, self.k, self.k + 1
        ia, ib = self._mor_src[i], self._mor_tgt[i]
        ic = self._mor_tgt[f]
        ip, fp = self._mor_payload[i], self._mor_payload[f]
        Bp, Cp = self._obj_payloads[ib], self._obj_payloads[ic]
        z = base.zero_index()
        idz = base.identity_id(z)

        slot_d: dict = {}
        slot_u: dict = {}
        slot_v: dict = {}
        for t, (si, sj) in enumerate(self._slots):
            w = base.pushout_witness(ip[t], fp[t])
            if w is None:
                return None
            slot_d[(si, sj)], slot_u[(si, sj)], slot_v[(si, sj)] = w

        def slot_obj(si: int, sj: int) -> int:
            return slot_d[(si, sj)] if si < sj else z

        entries = tuple(slot_obj(si, sj) for si in range(n) for sj in range(n))

        def induced(src_slot, dst_slot, b_arrow, c_arrow) -> int:
            # arrow of the assembled grid between two slots, via the
            # universal property of the source slot's pushout
            ssi, ssj = src_slot
            dsi, dsj = dst_slot
            if ssi >= ssj and dsi >= dsj:
                return idz
            if ssi >= ssj:
                return base.hom_ids(z, slot_d[dst_slot])[0]
            if dsi >= dsj:
                return base.hom_ids(slot_d[src_slot], z)[0]
            p = base.compose_ids(slot_u[dst_slot], b_arrow)
            q = base.compose_ids(slot_v[dst_slot], c_arrow)
            meds = base.mediating_ids(slot_u[src_slot], slot_v[src_slot], p, q)
            if len(meds) != 1:
                raise InternalInvariantError(
                    "pushout grid admits no unique induced arrow; "
                    "is the base category valid?"
                )
            return meds[0]

        harr = []
        for si in range(n):
            for sj in range(k):
                harr.append(
                    induced(
                        (si, sj),
                        (si, sj + 1),
                        Bp[1][si * k + sj],
                        Cp[1][si * k + sj],
                    )
                )
        varr = []
        for si in range(k):
            for sj in range(n):
                varr.append(
                    induced(
                        (si, sj),
                        (si + 1, sj),
                        Bp[2][si * n + sj],
                        Cp[2][si * n + sj],
                    )
                )
        d_payload = (entries, tuple(harr), tuple(varr))
        if d_payload not in self._obj_index:
            raise InternalInvariantError(
                "levelwise pushout grid is not an enumerated flag grid; "
                "is the base category valid?"
            )
        d_idx = self._obj_index[d_payload]
        u_payload = tuple(slot_u[s] for s in self._slots)
        v_payload = tuple(slot_v[s] for s in self._slots)
        return (
            d_idx,
            self.intern_morphism(u_payload, ib, d_idx),
            self.intern_morphism(v_payload, ic, d_idx),
        )


# ---------------------------------------------------------------------------
# reindexing along monotone maps
# ---------------------------------------------------------------------------


def reindex_s_object(src: SCategory, dst: SCategory, alpha: tuple, a: int) -> int:
    """Object of dst obtained by restricting grid ``a`` along a monotone map.

    ``alpha`` maps 0..dst.k into 0..src.k monotonically; the new grid has
    entry (i, j) equal to the old entry (alpha[i], alpha[j]), with arrows
    the evident row and column composites.  Raises when the result is not
    an enumerated grid, which cannot happen over a valid base because
    reindexing never grows entry sizes.
    """
    base = src.base
    k1, k2 = src.k, dst.k
    n1, n2 = k1 + 1, k2 + 1
    pay = src.object_payload(a)
    entries = tuple(
        pay[0][alpha[i] * n1 + alpha[j]] for i in range(n2) for j in range(n2)
    )
    harr = tuple(
        _hcomp(base, k1, pay, alpha[i], alpha[j], alpha[j + 1])
        for i in range(n2)
        for j in range(k2)
    )
    varr = tuple(
        _vcomp(base, k1, pay, alpha[i], alpha[i + 1], alpha[j])
        for i in range(k2)
        for j in range(n2)
    )
    payload = (entries, harr, varr)
    if payload not in dst._obj_index:
        raise InternalInvariantError(
            f"reindexed grid escaped the enumeration of {dst.name}"
        )
    return dst._obj_index[payload]


def reindex_s_morphism(
    src: SCategory, dst: SCategory, alpha: tuple, m: int, a2: int, b2: int
) -> int:
    """Morphism of dst obtained by restricting ``m`` along a monotone map.

    ``a2`` and ``b2`` are the already-reindexed endpoints.
    """
    base = src.base
    n1 = src.k + 1
    z = base.zero_index()
    idz = base.identity_id(z)
    pay = src.mor_payload(m)
    comps = []
    for i, j in dst._slots:
        si, sj = alpha[i], alpha[j]
        comps.append(idz if si >= sj else pay[src._slot_pos[(si, sj)]])
    return dst.intern_morphism(tuple(comps), a2, b2)


def _delta(i: int, k: int) -> tuple:
    """The injection 0..k-1 -> 0..k skipping i."""
    return tuple(t for t in range(k + 1) if t != i)


def _sigma(i: int, k: int) -> tuple:
    """The surjection 0..k+1 -> 0..k repeating i."""
    return tuple(t if t <= i else t - 1 for t in range(k + 2))


# ---------------------------------------------------------------------------
# the diagonal simplicial set and K_0
# ---------------------------------------------------------------------------


@dataclass
class PointedSimplicialSet:
    """A levelwise-finite pointed simplicial set truncated at a top level.

    ``levels[n]`` lists the n-simplices with the basepoint at index 0.
    ``faces[n][i]`` (for n >= 1) and ``degens[n][i]`` (for n < top) are
    index maps; the simplicial identities are checked on the stored range
    by ``validate``.
    """

    name: str
    levels: tuple
    faces: tuple
    degens: tuple

    @property
    def top_level(self) -> int:
        return len(self.levels) - 1

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def degeneracy(self, n: int, i: int, x: int) -> int:
        return self.degens[n][i][x]

    def validate(self) -> ValidationReport:
        report = ValidationReport(subject=f"pointed simplicial set {self.name}")
        top = self.top_level
        for n in range(1, top + 1):
            for i in range(n + 1):
                report.checks_run += 1
                if self.faces[n][i][0] != 0:
                    report.record(f"face d_{i} at level {n} moves the basepoint")
        for n in range(top):
            for i in range(n + 1):
                report.checks_run += 1
                if self.degens[n][i][0] != 0:
                    report.record(f"degeneracy s_{i} at level {n} moves the basepoint")
        for n in range(2, top + 1):
            for j in range(n + 1):
                for i in range(j):
                    for x in range(len(self.levels[n])):
                        report.checks_run += 1
                        if self.face(n - 1, i, self.face(n, j, x)) != self.face(
                            n - 1, j - 1, self.face(n, i, x)
                        ):
                            report.record(f"d_{i} d_{j} failed at level {n} on element {x}")
        for n in range(top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    for x in range(len(self.levels[n])):
                        report.checks_run += 1
                        if self.degeneracy(n + 1, i, self.degeneracy(n, j, x)) != self.degeneracy(
                            n + 1, j + 1, self.degeneracy(n, i, x)
                        ):
                            report.record(f"s_{i} s_{j} failed at level {n} on element {x}")
        for n in range(top):
            for j in range(n + 1):
                for i in range(n + 2):
                    for x in range(len(self.levels[n])):
                        report.checks_run += 1
                        y = self.face(n + 1, i, self.degeneracy(n, j, x))
                        if i == j or i == j + 1:
                            expect = x
                        elif i < j:
                            expect = self.degeneracy(n - 1, j - 1, self.face(n, i, x))
                        else:
                            expect = self.degeneracy(n - 1, j, self.face(n, i - 1, x))
                        if y != expect:
                            report.record(f"d_{i} s_{j} failed at level {n} on element {x}")
        return report


def ws_diagonal(
    C: WCategory, n_max: int = 2, string_cap: int = STRING_CAP
) -> PointedSimplicialSet:
    """The diagonal simplicial set n |-> ob w_n S_n C, truncated at n_max.

    Level n holds the strings of n composable weak equivalences of flag
    grids on [n] x [n]; the basepoint is the identity string on the zero
    grid.  Faces act by restricting grids along the coface map and then
    dropping or composing string entries; degeneracies insert identities.
    """
    scats = [SCategory(C, n) for n in range(n_max + 1)]
    levels = []
    index_of = []
    elements_of = []

    for n, S in enumerate(scats):
        bp = (S.zero_index(), (S.identity_id(S.zero_index()),) * n)
        elts = [bp]
        seen = {bp}

        def extend(x0: int, prefix: tuple, depth: int):
            if depth == n:
                e = (x0, prefix)
                if e not in seen:
                    seen.add(e)
                    elts.append(e)
                if len(elts) > string_cap:
                    raise CapExceededError(
                        f"level {n} of the diagonal of {C.name} exceeds {string_cap} strings"
                    )
                return
            src = x0 if depth == 0 else S.mor_target(prefix[-1])
            for b in range(S.object_count()):
                for g in S.weq_ids(src, b):
                    extend(x0, prefix + (g,), depth + 1)

        for x0 in range(S.object_count()):
            extend(x0, (), 0)
        levels.append(tuple(elts))
        index_of.append({e: t for t, e in enumerate(elts)})
        elements_of.append(elts)

    obj_maps: dict = {}
    mor_maps: dict = {}

    def mapped_obj(n: int, alpha: tuple, dst: SCategory, a: int) -> int:
        key = (n, alpha, a)
        got = obj_maps.get(key)
        if got is None:
            got = reindex_s_object(scats[n], dst, alpha, a)
            obj_maps[key] = got
        return got

    def mapped_mor(n: int, alpha: tuple, dst: SCategory, m: int) -> int:
        key = (n, alpha, m)
        got = mor_maps.get(key)
        if got is None:
            S = scats[n]
            a2 = mapped_obj(n, alpha, dst, S.mor_source(m))
            b2 = mapped_obj(n, alpha, dst, S.mor_target(m))
            got = reindex_s_morphism(S, dst, alpha, m, a2, b2)
            mor_maps[key] = got
        return got

    faces = [()]
    for n in range(1, n_max + 1):
        dst = scats[n - 1]
        tables = []
        for i in range(n + 1):
            alpha = _delta(i, n)
            table = []
            for x0, gs in elements_of[n]:
                gs2 = tuple(mapped_mor(n, alpha, dst, g) for g in gs)
                if i == 0:
                    y0 = dst.mor_target(gs2[0])
                    e = (y0, gs2[1:])
                elif i == n:
                    e = (mapped_obj(n, alpha, dst, x0), gs2[:-1])
                else:
                    merged = dst.compose_ids(gs2[i], gs2[i - 1])
                    e = (
                        mapped_obj(n, alpha, dst, x0),
                        gs2[: i - 1] + (merged,) + gs2[i + 1 :],
                    )
                table.append(index_of[n - 1][e])
            tables.append(tuple(table))
        faces.append(tuple(tables))

    degens = []
    for n in range(n_max):
        dst = scats[n + 1]
        tables = []
        for i in range(n + 1):
            alpha = _sigma(i, n)
            table = []
            for x0, gs in elements_of[n]:
                gs2 = tuple(mapped_mor(n, alpha, dst, g) for g in gs)
                x02 = mapped_obj(n, alpha, dst, x0)
                mid = x02 if i == 0 else dst.mor_target(gs2[i - 1])
                e = (x02, gs2[:i] + (dst.identity_id(mid),) + gs2[i:])
                table.append(index_of[n + 1][e])
            tables.append(tuple(table))
        degens.append(tuple(tables))
    degens.append(())

    return PointedSimplicialSet(
        name=f"diag wS({C.name})",
        levels=tuple(levels),
        faces=tuple(faces),
        degens=tuple(degens),
    )


def k0_via_sdot(C: WCategory, string_cap: int = STRING_CAP) -> FPAbelianGroup:
    """K_0 as H_1 of the diagonal of the flag construction.

    The level-0 set is a single point, so the reduced complex has zero
    differential out of degree 1 and K_0 is the cokernel of the degree-2
    boundary on the nondegenerate 2-simplices, computed by integer Smith
    normal form.  Duplicate boundary columns are collapsed first.
    """
    X = ws_diagonal(C, 2, string_cap)
    if len(X.levels[0]) != 1:
        raise InternalInvariantError("level 0 of the diagonal is not a single point")
    n1 = len(X.levels[1]) - 1
    degenerate = set(X.degens[1][0]) | set(X.degens[1][1])
    columns = set()
    for x in range(len(X.levels[2])):
        if x == 0 or x in degenerate:
            continue
        col: dict = {}
        for i, sign in ((0, 1), (1, -1), (2, 1)):
            y = X.face(2, i, x)
            if y != 0:
                col[y - 1] = col.get(y - 1, 0) + sign
        colt = tuple(sorted((r, c) for r, c in col.items() if c != 0))
        if colt:
            columns.add(colt)
    cols = sorted(columns)
    mat = SparseMap.from_col_dicts(ZZ, n1, [dict(c) for c in cols])
    cx = ChainComplex(ZZ, (n1, len(cols)), {1: mat} if cols else {})
    return homology(cx, 0).group


# ---------------------------------------------------------------------------
# the Grothendieck-presentation oracle
# ---------------------------------------------------------------------------


@dataclass
class K0Presentation:
    """K_0 presented on the nonzero objects, reduced by Smith normal form.

    Relations: [a] = [b] for every flagged weak equivalence a -> b, and
    [X(0,2)] = [X(0,1)] + [X(1,2)] for every flag grid on [2] x [2].
    """

    category: WCategory
    generators: tuple
    relations: tuple
    homology: HomologyData = field(repr=False)

    @property
    def group(self) -> FPAbelianGroup:
        return self.homology.group

    def class_vector(self, a: int) -> tuple:
        """The presentation vector of a single object's class."""
        vec = [0] * len(self.generators)
        if a != self.category.zero_index():
            vec[self.generators.index(a)] = 1
        return tuple(vec)


def k0_presentation(C: WCategory) -> K0Presentation:
    z = C.zero_index()
    gens = tuple(a for a in range(C.object_count()) if a != z)
    pos = {a: t for t, a in enumerate(gens)}
    columns = set()

    for a in range(C.object_count()):
        for b in range(C.object_count()):
            for _m in C.weq_ids(a, b):
                col: dict = {}
                if a != z:
                    col[pos[a]] = col.get(pos[a], 0) + 1
                if b != z:
                    col[pos[b]] = col.get(pos[b], 0) - 1
                colt = tuple(sorted((r, c) for r, c in col.items() if c != 0))
                if colt:
                    columns.add(colt)

    for payload in _enumerate_s_payloads(C, 2):
        entries = payload[0]
        a01, a02, a12 = entries[1], entries[2], entries[5]
        col = {}
        for obj, sign in ((a02, 1), (a01, -1), (a12, -1)):
            if obj != z:
                col[pos[obj]] = col.get(pos[obj], 0) + sign
        colt = tuple(sorted((r, c) for r, c in col.items() if c != 0))
        if colt:
            columns.add(colt)

    cols = sorted(columns)
    mat = SparseMap.from_col_dicts(ZZ, len(gens), [dict(c) for c in cols])
    cx = ChainComplex(ZZ, (len(gens), len(cols)), {1: mat} if cols else {})
    return K0Presentation(C, gens, cols, homology(cx, 0))


def grothendieck_k0(C: WCategory) -> FPAbelianGroup:
    """K_0 from the object-and-relation presentation; the independent oracle."""
    return k0_presentation(C).group


def _push_vector(F: ExactFunctor, src: K0Presentation, dst: K0Presentation, vec) -> tuple:
    out = [0] * len(dst.generators)
    dz = dst.category.zero_index()
    dpos = {a: t for t, a in enumerate(dst.generators)}
    for t, coeff in enumerate(vec):
        if coeff == 0:
            continue
        obj = F.apply_obj(src.generators[t])
        if obj != dz:
            out[dpos[obj]] += coeff
    return tuple(out)


def k0_functor_matrix(F: ExactFunctor, src: K0Presentation, dst: K0Presentation) -> tuple:
    """Images of the source K_0 generators under F, in target coordinates."""
    return tuple(
        dst.homology.coordinates(_push_vector(F, src, dst, g))
        for g in src.homology.generators
    )


def k0_retract_holds(C: WCategory) -> bool:
    """Whether K_0(C) -> K_0(End C) -> K_0(C) composes to the identity.

    The first map is induced by the identity-endomorphism inclusion, the
    second by forgetting the endomorphism; the middle class is reduced to
    canonical coordinates in K_0(End C) before coming back, so this
    exercises both presentations.
    """
    E, _iota0, iota1, forget = end_category(C)
    pres_c = k0_presentation(C)
    pres_e = k0_presentation(E)
    for gen in pres_c.homology.generators:
        mid = _push_vector(iota1, pres_c, pres_e, gen)
        coords = pres_e.homology.coordinates(mid)
        rep = [0] * len(pres_e.generators)
        for c, gv in zip(coords, pres_e.homology.generators):
            for t, x in enumerate(gv):
                rep[t] += c * x
        back = _push_vector(forget, pres_e, pres_c, tuple(rep))
        if not pres_c.homology.classes_equal(back, gen):
            return False
    return True
