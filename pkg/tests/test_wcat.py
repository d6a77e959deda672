"""Tests for the finite cofibration-category tables and their validator."""

import os

import pytest

from chaintrace.errors import InputParseError, ValidationError
from chaintrace.formats import parse_category_file
from chaintrace.wcat import (
    category_from_selector,
    end_category,
    finite_modules,
    pointed_sets,
    trivial_category,
    validate_exact_functor,
    validate_waldhausen,
    vect_gf,
)

DATA = os.path.join(os.path.dirname(__file__), "data")


def test_trivial_category_valid():
    C = trivial_category()
    assert C.object_count() == 1
    report = validate_waldhausen(C)
    assert report.ok
    assert report.checks_run == 9


def test_vect_objects_and_labels():
    C = vect_gf(2, 2)
    assert [C.object_label(i) for i in range(C.object_count())] == [
        "0",
        "F2^1",
        "F2^2",
    ]
    # hom(F2, F2^2) is the set of linear maps F2 -> F2^2.
    assert len(C.hom_ids(1, 2)) == 4
    # The three nonzero maps are injective, hence cofibrations.
    assert sum(1 for m in C.hom_ids(1, 2) if C.is_cofibration_id(m)) == 3


def test_vect_validator_check_count():
    report = validate_waldhausen(vect_gf(2, 2))
    assert report.ok
    assert report.checks_run == 22794


def test_vect21_validator():
    report = validate_waldhausen(vect_gf(2, 1))
    assert report.ok
    assert report.checks_run == 48


def test_pointed_sets_valid():
    C = pointed_sets(2)
    assert [C.object_label(i) for i in range(C.object_count())] == ["S0", "S1", "S2"]
    report = validate_waldhausen(C)
    assert report.ok
    assert report.checks_run == 602


def test_finite_modules_labels_and_validator():
    C = finite_modules(2, 4)
    assert [C.object_label(i) for i in range(C.object_count())] == [
        "0",
        "Z/2",
        "Z/2+Z/2",
        "Z/4",
    ]
    report = validate_waldhausen(C)
    assert report.ok
    assert report.checks_run == 25322


def test_finite_modules_requires_prime():
    with pytest.raises(ValidationError):
        finite_modules(4, 4)


def test_cofibs_from_counts():
    C = vect_gf(2, 2)
    assert [len(C.cofibs_from(a)) for a in range(3)] == [3, 4, 6]


def test_iso_ids():
    C = vect_gf(2, 2)
    assert len(C.iso_ids(2, 2)) == 6
    assert len(C.iso_ids(1, 2)) == 0
    for m in C.iso_ids(2, 2):
        assert C.is_weq_id(m)


def test_pushout_witness_of_two_lines():
    C = vect_gf(2, 2)
    i = [m for m in C.hom_ids(0, 1) if C.is_cofibration_id(m)][0]
    d, u, v = C.pushout_witness(i, i)
    assert C.object_label(d) == "F2^2"
    for leg in (u, v):
        assert C.mor_source(leg) == 1
        assert C.mor_target(leg) == 2
    # The cobase change of a cofibration is a cofibration.
    assert C.is_cofibration_id(u)


def test_cokernel_candidate_counts():
    C = vect_gf(2, 2)
    line_into_plane = [m for m in C.hom_ids(1, 2) if C.is_cofibration_id(m)][0]
    assert len(C.cokernel_candidates(line_into_plane)) == 1
    zero_into_plane = C.hom_ids(0, 2)[0]
    # Quotients of F2^2 by 0: one per automorphism of F2^2.
    assert len(C.cokernel_candidates(zero_into_plane)) == 6


def test_end_category_and_functors():
    C = vect_gf(2, 1)
    E, iota0, iota1, forget = end_category(C)
    # Objects of End(C) are pairs (object, endomorphism).
    assert E.object_count() == 3
    assert validate_waldhausen(E).ok
    for functor in (iota0, iota1, forget):
        assert validate_exact_functor(functor).ok
    # forget is a retraction of both sections on objects.
    for a in range(C.object_count()):
        assert forget.apply_obj(iota0.apply_obj(a)) == a
        assert forget.apply_obj(iota1.apply_obj(a)) == a


def test_category_from_selector():
    assert category_from_selector("vect_gf:2:2").object_count() == 3
    assert category_from_selector("trivial").object_count() == 1
    assert category_from_selector("pointed_sets:2").object_count() == 3
    assert category_from_selector("finite_modules:2:4").object_count() == 4
    with pytest.raises(InputParseError):
        category_from_selector("nope(3)")


@pytest.mark.parametrize(
    "filename, axiom",
    [
        ("corrupt_axiom1.txt", "axiom 1"),
        ("corrupt_axiom2.txt", "axiom 2"),
        ("corrupt_axiom3.txt", "axiom 3"),
        ("corrupt_axiom4.txt", "axiom 4"),
        ("corrupt_axiom5.txt", "axiom 5"),
    ],
)
def test_corrupted_tables_fail_their_axiom(filename, axiom):
    C = parse_category_file(os.path.join(DATA, filename), validate=False)
    report = validate_waldhausen(C)
    assert not report.ok
    assert report.issues
    assert all(axiom in issue for issue in report.issues)
