"""Tests for multidirection flag diagrams and their operator actions."""

import pytest

from chaintrace.errors import CapExceededError, InputParseError
from chaintrace.sigma_delta import (
    free_sigma_delta,
    ktheory_sigma_delta,
    sigma_delta_validate,
    weq_nerve,
)
from chaintrace.wcat import trivial_category, vect_gf

ALL_KEYS = (
    (0, ()),
    (1, (0,)),
    (1, (1,)),
    (1, (2,)),
    (2, (0, 0)),
    (2, (0, 1)),
    (2, (0, 2)),
    (2, (1, 0)),
    (2, (1, 1)),
    (2, (1, 2)),
    (2, (2, 0)),
    (2, (2, 1)),
    (2, (2, 2)),
)


@pytest.fixture(scope="module")
def vect_diagram():
    return ktheory_sigma_delta(vect_gf(2, 2))


def test_key_grid(vect_diagram):
    assert vect_diagram.keys == ALL_KEYS
    assert free_sigma_delta(2).keys == ALL_KEYS


def test_entry_level_sizes(vect_diagram):
    sizes = {
        key: [len(level) for level in vect_diagram.entry(key).levels]
        for key in vect_diagram.keys
    }
    # A zero flag width forces a single basepoint.
    for key in ((1, (0,)), (2, (0, 0)), (2, (0, 2)), (2, (2, 0))):
        assert sizes[key] == [1, 1, 1]
    # One direction of width k is the nerve of S_k.
    assert sizes[(0, ())] == [3, 8, 38]
    assert sizes[(1, (1,))] == [3, 8, 38]
    assert sizes[(1, (2,))] == [18, 453, 15663]
    # Width-1 directions change nothing up to isomorphism.
    assert sizes[(2, (1, 2))] == [18, 453, 15663]
    assert sizes[(2, (2, 1))] == [18, 453, 15663]


def test_large_entry_is_truncated_with_recorded_skip(vect_diagram):
    assert [len(level) for level in vect_diagram.entry((2, (2, 2))).levels] == [950]
    assert len(vect_diagram.skips) == 1
    assert "not materialized" in vect_diagram.skips[0]
    assert "950" in vect_diagram.skips[0]


def test_vect_diagram_validates(vect_diagram):
    report = sigma_delta_validate(vect_diagram)
    assert report.ok
    assert report.checks_run == 395467
    assert len(report.skipped) == 1


def test_trivial_diagram():
    d = ktheory_sigma_delta(trivial_category())
    assert not d.skips
    for key in d.keys:
        assert [len(level) for level in d.entry(key).levels] == [1, 1, 1]
    assert sigma_delta_validate(d).ok


def test_free_diagrams_validate():
    for points in (1, 2):
        d = free_sigma_delta(points)
        assert not d.skips
        report = sigma_delta_validate(d)
        assert report.ok
        assert not report.skipped


def test_free_entry_sizes():
    d = free_sigma_delta(2)
    # One nondegenerate cell per point and cut position, plus a basepoint.
    assert [len(level) for level in d.entry((1, (2,))).levels] == [5, 5, 5]
    assert [len(level) for level in d.entry((2, (2, 2))).levels] == [9, 9, 9]


def test_identity_operator_acts_as_identity():
    d = free_sigma_delta(1)
    key = (1, (1,))
    for level in range(3):
        size = len(d.entry(key).levels[level])
        images = [d.act_index(key, key, (1,), ((0, 1),), level, i) for i in range(size)]
        assert images == list(range(size))


def test_collapsing_operator_hits_the_basepoint():
    d = free_sigma_delta(1)
    key = (1, (1,))
    # phi constant at 0 restricts every flag to its zero slice.
    images = {d.act_index(key, key, (1,), ((0, 0),), 0, i) for i in range(2)}
    assert images == {0}


def test_width_one_insertion_is_a_bijection(vect_diagram):
    src, dst = (1, (2,)), (2, (1, 2))
    for level in range(2):
        size = len(vect_diagram.entry(src).levels[level])
        assert len(vect_diagram.entry(dst).levels[level]) == size
        images = sorted(
            vect_diagram.act_index(src, dst, (2,), ((0, 1), (0, 1, 2)), level, i)
            for i in range(size)
        )
        assert images == list(range(size))


def test_unknown_entry_key(vect_diagram):
    with pytest.raises(InputParseError):
        vect_diagram.entry((3, (1, 1, 1)))


def test_acting_on_truncated_level(vect_diagram):
    key = (2, (2, 2))
    with pytest.raises(CapExceededError):
        vect_diagram.act_index(key, key, (1, 2), ((0, 1, 2), (0, 1, 2)), 1, 0)


def test_direction_and_width_caps():
    with pytest.raises(CapExceededError):
        ktheory_sigma_delta(vect_gf(2, 2), n_max=3)
    with pytest.raises(CapExceededError):
        ktheory_sigma_delta(vect_gf(2, 2), k_cap=3)


def test_weq_nerve_of_trivial_category():
    ps = weq_nerve(trivial_category(), 2)
    assert [len(level) for level in ps.levels] == [1, 1, 1]
    assert ps.validate().ok
