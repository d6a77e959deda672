"""Cyclic bar construction, Hochschild homology, Connes B, cyclic homology.

The cyclic homology values are cross-checked against an independently built
Connes coinvariant complex: over Q the cyclic group Z/(q+1) acting on level
q by the signed cyclic operator splits the level into invariants plus the
image of (1 - t), homology of the invariant subcomplex with the averaged
boundary equals HC.  That path never touches the (b, B)-bicomplex code.
"""

from fractions import Fraction

import pytest

from chaintrace.algebra import (
    base_algebra,
    cyclic_group,
    group_algebra,
    group_algebra_hom,
    matrix_algebra,
    truncated_polynomial,
)
from chaintrace.chain import ChainComplex, FPModule, homology
from chaintrace.errors import CapExceededError, UnsupportedRingError
from chaintrace.hochschild import (
    B_CONVENTION,
    HochschildHomology,
    connes_b,
    cyclic_bar,
    cyclic_homology,
    hochschild_complex,
    hochschild_homology,
    induced_chain_map,
    tensor_power_map,
    validate_cyclic_module,
)
from chaintrace.linalg import Matrix, SparseMap, kernel_basis, solve_membership
from chaintrace.rings import GF, QQ, ZZ


def test_cyclic_bar_levels_and_identities():
    A = group_algebra(cyclic_group(2), ZZ)
    cm = cyclic_bar(A, 1)
    assert cm.max_level == 2
    assert [cm.level_rank(q) for q in range(3)] == [2, 4, 8]
    assert validate_cyclic_module(cm).ok


def test_cyclic_identities_on_matrix_algebra():
    M = matrix_algebra(base_algebra(GF(2)), 2)
    assert validate_cyclic_module(cyclic_bar(M, 1)).ok


def test_cyclic_bar_cap():
    A = group_algebra(cyclic_group(12), ZZ)
    with pytest.raises(CapExceededError):
        cyclic_bar(A, 4)


def test_b_convention_is_pinned():
    assert B_CONVENTION == (
        "B = (1 - (-1)^q t) s_e N on the normalized complex; "
        "b = sum (-1)^i d_i; d_q merges last onto first"
    )


def test_boundary_squares_to_zero():
    # the chain complex constructor rejects any nonzero composite
    A = truncated_polynomial(GF(2), 2)
    cm = cyclic_bar(A, 2)
    cx = hochschild_complex(cm, normalized=False)
    assert cx.top_degree == 3


def test_connes_b_identities():
    for A in (group_algebra(cyclic_group(2), QQ), truncated_polynomial(GF(2), 2)):
        norm = HochschildHomology(A, 2).normalized
        for q in range(2):
            bb = norm.connes_b(q + 1).compose(norm.connes_b(q))
            assert bb.is_zero_map()
        for q in range(1, 3):
            anti = norm.boundary(q + 1).compose(norm.connes_b(q)).add(
                norm.connes_b(q - 1).compose(norm.boundary(q))
            )
            assert anti.is_zero_map()


def test_connes_b_descends_from_full_level():
    A = group_algebra(cyclic_group(2), QQ)
    cm = cyclic_bar(A, 2)
    full = connes_b(cm, 1)
    assert full.nrows == cm.level_rank(2)
    assert full.ncols == cm.level_rank(1)


def test_hh_frozen_tables():
    cases = {
        "Z": (base_algebra(ZZ), ["Z", "0", "0", "0"]),
        "Q": (base_algebra(QQ), ["Q", "0", "0", "0"]),
        "F2": (base_algebra(GF(2)), ["GF(2)", "0", "0", "0"]),
        "Z[C2]": (
            group_algebra(cyclic_group(2), ZZ),
            ["Z^2", "Z/2 x Z/2", "0", "Z/2 x Z/2"],
        ),
        "Q[C2]": (group_algebra(cyclic_group(2), QQ), ["Q^2", "0", "0", "0"]),
        "F2[x]/x^2": (
            truncated_polynomial(GF(2), 2),
            ["GF(2)^2", "GF(2)^2", "GF(2)^2", "GF(2)^2"],
        ),
    }
    for label, (A, expected) in cases.items():
        work = HochschildHomology(A, 3)
        got = [str(work.group(d)) for d in range(4)]
        assert got == expected, label


def test_hh_matrix_algebra_matches_base():
    A = base_algebra(GF(2))
    M = matrix_algebra(A, 2)
    for d in range(3):
        assert hochschild_homology(M, d) == hochschild_homology(A, d)


def test_hh_class_coordinates_roundtrip():
    A = truncated_polynomial(GF(2), 2)
    work = HochschildHomology(A, 1)
    data = work.generators(1)
    for gen in data:
        coords = work.coordinates(1, gen)
        assert any(c != 0 for c in coords)


def test_induced_chain_map_is_chain_map():
    G4, G2 = cyclic_group(4), cyclic_group(2)
    f = group_algebra_hom({0: 0, 1: 1, 2: 0, 3: 1}, G4, G2, ZZ)
    src = cyclic_bar(f.source, 2)
    dst = cyclic_bar(f.target, 2)
    for q in (1, 2):
        lhs = dst.boundary(q).compose(induced_chain_map(f, q))
        rhs = induced_chain_map(f, q - 1).compose(src.boundary(q))
        assert lhs.sub(rhs).is_zero_map()


def test_tensor_power_indexing_is_big_endian():
    f = SparseMap.from_col_dicts(ZZ, 2, [{1: 1}, {0: 1}])  # swap basis of rank 2
    sq = tensor_power_map(f, 2)
    # basis element 0 = (0, 0) -> (1, 1) = index 3
    assert sq.apply((1, 0, 0, 0)) == (0, 0, 0, 1)
    # basis element 1 = (0, 1) -> (1, 0) = index 2
    assert sq.apply((0, 1, 0, 0)) == (0, 0, 1, 0)


def connes_lambda_complex(A, N):
    """Invariant-subcomplex model of the Connes coinvariant complex over Q."""
    assert A.ring.kind == "Q"
    cm = cyclic_bar(A, N)
    bases = []
    for q in range(N + 2):
        r = cm.level_rank(q)
        t = cm.signed_cyclic(q).to_matrix()
        one_minus_t = Matrix.identity(QQ, r).sub(t)
        inv = kernel_basis(one_minus_t)
        avg = Matrix.zeros(QQ, r, r)
        power = Matrix.identity(QQ, r)
        for _ in range(q + 1):
            avg = avg.add(power)
            power = power.mul(t)
        scale = Fraction(1, q + 1)
        avg = Matrix(QQ, [[scale * x for x in row] for row in avg.rows])
        bases.append((inv, avg))
    ranks = [len(bases[q][0]) for q in range(N + 2)]
    diffs = {}
    for q in range(1, N + 2):
        inv_q, _ = bases[q]
        inv_p, avg_p = bases[q - 1]
        basis_mat = Matrix.from_cols(QQ, list(inv_p), cm.level_rank(q - 1))
        cols = []
        for v in inv_q:
            w = avg_p.apply(cm.boundary(q).apply(v))
            res = solve_membership(basis_mat, w)
            assert res.found
            cols.append({i: c for i, c in enumerate(res.witness) if c != 0})
        diffs[q] = SparseMap.from_col_dicts(QQ, len(inv_p), cols)
    return ChainComplex(QQ, ranks, diffs)


def test_cyclic_homology_frozen_and_oracle():
    A = base_algebra(QQ)
    got = [str(cyclic_homology(A, n)) for n in range(7)]
    assert got == ["Q", "0", "Q", "0", "Q", "0", "Q"]
    oracle = connes_lambda_complex(A, 4)
    for n in range(4):
        assert homology(oracle, n).group == cyclic_homology(A, n)


def test_cyclic_homology_group_algebra_oracle():
    A = group_algebra(cyclic_group(2), QQ)
    got = [str(cyclic_homology(A, n)) for n in range(5)]
    assert got == ["Q^2", "0", "Q^2", "0", "Q^2"]
    oracle = connes_lambda_complex(A, 3)
    for n in range(3):
        assert homology(oracle, n).group == cyclic_homology(A, n)


def test_cyclic_homology_matrix_algebra_morita():
    M = matrix_algebra(base_algebra(QQ), 2)
    for n in range(3):
        assert cyclic_homology(M, n) == cyclic_homology(base_algebra(QQ), n)


def test_cyclic_homology_requires_q():
    with pytest.raises(UnsupportedRingError):
        cyclic_homology(base_algebra(ZZ), 0)
