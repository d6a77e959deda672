"""Smith normal form, kernels, membership, and chain complex homology."""

import pytest

from chaintrace.chain import ChainComplex, FPAbelianGroup, FPModule, homology
from chaintrace.errors import DegreeOutOfRangeError, UnsupportedRingError, ValidationError
from chaintrace.linalg import (
    Matrix,
    SparseMap,
    kernel_basis,
    smith_normal_form,
    solve_membership,
)
from chaintrace.rings import GF, QQ, ZZ, Zmod


def diag(dec):
    S = dec.S
    n = min(S.nrows, S.ncols)
    return [S.rows[i][i] for i in range(n) if not S.ring.is_zero(S.rows[i][i])]


def assert_decomposition(M):
    dec = smith_normal_form(M)
    assert dec.S.rows == dec.U.mul(M).mul(dec.V).rows
    assert dec.U.mul(dec.Uinv).rows == Matrix.identity(M.ring, M.nrows).rows
    assert dec.V.mul(dec.Vinv).rows == Matrix.identity(M.ring, M.ncols).rows
    d = diag(dec)
    for a, b in zip(d, d[1:]):
        assert M.ring.divides(a, b)
    return dec


def test_snf_identity():
    M = Matrix.identity(ZZ, 3)
    dec = assert_decomposition(M)
    assert dec.S.rows == M.rows


def test_snf_frozen_integer_chain():
    M = Matrix(ZZ, [[2, 4], [6, 8]])
    dec = assert_decomposition(M)
    assert diag(dec) == [2, 4]


def test_snf_rectangular():
    M = Matrix(ZZ, [[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    dec = assert_decomposition(M)
    assert diag(dec) == [2, 2, 156]


def test_snf_over_field_counts_rank():
    M = Matrix(QQ, [[QQ.normalize(1), QQ.normalize(2)], [QQ.normalize(2), QQ.normalize(4)]])
    dec = assert_decomposition(M)
    assert diag(dec) == [QQ.one]
    M2 = Matrix(GF(2), [[1, 1], [1, 0]])
    assert diag(assert_decomposition(M2)) == [1, 1]


def test_snf_prime_power_modulus():
    M = Matrix(Zmod(4), [[2, 0], [0, 2]])
    dec = assert_decomposition(M)
    assert diag(dec) == [2, 2]


def test_snf_rejects_composite_modulus():
    M = Matrix(Zmod(6), [[2]])
    with pytest.raises(UnsupportedRingError):
        smith_normal_form(M)


def test_snf_deterministic():
    M = Matrix(ZZ, [[3, 1, 4], [1, 5, 9], [2, 6, 5]])
    a = smith_normal_form(M)
    b = smith_normal_form(M)
    assert a.S.rows == b.S.rows
    assert a.U.rows == b.U.rows
    assert a.V.rows == b.V.rows


def test_kernel_basis_members_and_rank():
    M = Matrix(ZZ, [[1, 1, 1]])
    basis = kernel_basis(M)
    assert len(basis) == 2
    for vec in basis:
        assert all(c == 0 for c in M.apply(vec))


def test_kernel_basis_trivial():
    M = Matrix(ZZ, [[1, 0], [0, 2]])
    assert kernel_basis(M) == []


def test_solve_membership_found():
    M = Matrix(ZZ, [[2, 0], [0, 3]])
    res = solve_membership(M, (4, 3))
    assert res.found
    assert list(M.apply(res.witness)) == [4, 3]


def test_solve_membership_not_found():
    M = Matrix(ZZ, [[2, 0], [0, 3]])
    res = solve_membership(M, (1, 0))
    assert not res.found
    assert res.reason


def test_sparse_map_roundtrip():
    cols = [{0: 1, 2: -1}, {}, {1: 5}]
    sm = SparseMap.from_col_dicts(ZZ, 3, cols)
    M = sm.to_matrix()
    assert SparseMap.from_matrix(M).to_matrix().rows == M.rows
    assert sm.apply((1, 1, 1)) == (1, 5, -1)


def test_homology_circle():
    cx = ChainComplex(ZZ, (1, 1, 0), {1: SparseMap.zero(ZZ, 1, 1)})
    assert homology(cx, 0).group == FPAbelianGroup(1)
    assert homology(cx, 1).group == FPAbelianGroup(1)


def test_homology_mod2_moore_space():
    cx = ChainComplex(ZZ, (1, 1, 0), {1: SparseMap.from_col_dicts(ZZ, 1, [{0: 2}])})
    assert homology(cx, 0).group == FPAbelianGroup(0, (2,))
    assert homology(cx, 1).group == FPAbelianGroup(0)


def test_homology_projective_plane():
    # cell structure: one cell in each degree, d2 = 2, d1 = 0
    cx = ChainComplex(
        ZZ,
        (1, 1, 1, 0),
        {1: SparseMap.zero(ZZ, 1, 1), 2: SparseMap.from_col_dicts(ZZ, 1, [{0: 2}])},
    )
    assert homology(cx, 0).group == FPAbelianGroup(1)
    assert homology(cx, 1).group == FPAbelianGroup(0, (2,))
    assert homology(cx, 2).group == FPAbelianGroup(0)


def test_homology_over_field_gives_module():
    cx = ChainComplex(
        GF(2),
        (1, 1, 1, 0),
        {1: SparseMap.zero(GF(2), 1, 1), 2: SparseMap.from_col_dicts(GF(2), 1, [{0: 0}])},
    )
    assert homology(cx, 1).group == FPModule(GF(2), 1)
    assert homology(cx, 2).group == FPModule(GF(2), 1)


def test_homology_class_arithmetic():
    cx = ChainComplex(
        ZZ,
        (1, 1, 1, 0),
        {1: SparseMap.zero(ZZ, 1, 1), 2: SparseMap.from_col_dicts(ZZ, 1, [{0: 2}])},
    )
    data = homology(cx, 1)
    gen = data.generators[0]
    assert data.coordinates(gen) == (1,)
    doubled = tuple(2 * c for c in gen)
    assert data.is_boundary(doubled)
    assert data.classes_equal(gen, tuple(3 * c for c in gen))


def test_coordinates_rejects_non_cycles():
    cx = ChainComplex(ZZ, (1, 2, 0), {1: SparseMap.from_col_dicts(ZZ, 1, [{0: 1}, {}])})
    data = homology(cx, 1)
    with pytest.raises(ValidationError):
        data.coordinates((1, 0))


def test_chain_complex_rejects_bad_composite():
    one = SparseMap.from_col_dicts(ZZ, 1, [{0: 1}])
    with pytest.raises(ValidationError):
        ChainComplex(ZZ, (1, 1, 1), {1: one, 2: one})


def test_homology_needs_next_degree():
    cx = ChainComplex(ZZ, (1, 1), {1: SparseMap.zero(ZZ, 1, 1)})
    with pytest.raises(DegreeOutOfRangeError):
        homology(cx, 1)
