"""Equisingularity data, their comparison and the aggregate invariants."""

import pytest

from plane_singularities.branch import Branch, CharPairs
from plane_singularities.equisingularity import (
    AggregateInvariants,
    EquisingularityDatum,
    aggregate_invariants,
    equal_equisingularity,
    equal_equisingularity_witness,
    equisingularity_datum,
    intersection_matrix,
)
from plane_singularities.errors import DegenerateInput, PreconditionError

SMOOTH = CharPairs(())
CUSP_PAIRS = CharPairs(((3, 2),))


def lines(*slopes):
    return [Branch.build(1, {1: slope}) for slope in slopes]


# (germ, branches, aggregate (delta, r, mu))
ZOO = [
    ("node", lines(1, -1), (1, 2, 1)),
    ("cusp", [Branch.build(2, {3: 1})], (1, 1, 2)),
    ("tacnode", [Branch.build(1, {2: 1}), Branch.build(1, {2: -1})], (2, 2, 3)),
    ("A4", [Branch.build(2, {5: 1})], (2, 1, 4)),
    ("D4", [Branch.build(1, {}), *lines(-1, 2)], (3, 3, 4)),
]


@pytest.mark.parametrize("name, branches, expected", ZOO, ids=[z[0] for z in ZOO])
def test_aggregate_invariants_of_the_zoo(name, branches, expected):
    result = aggregate_invariants(equisingularity_datum(branches))
    assert result == AggregateInvariants(*expected)


def test_tacnode_datum():
    result = equisingularity_datum([Branch.build(1, {2: 1}), Branch.build(1, {2: -1})])
    assert result.branches == (SMOOTH, SMOOTH)
    assert result.inter == ((None, 2), (2, None))


def test_four_six_seven_has_delta_eight():
    result = aggregate_invariants(equisingularity_datum([Branch.build(4, {6: 1, 7: 1})]))
    assert result.delta == 8
    assert result.milnor == 16


def test_workers_do_not_change_the_matrix():
    branches = lines(1, 2, 3, -1) + [Branch.build(2, {3: 1})]
    assert intersection_matrix(branches, workers=4) == intersection_matrix(branches, workers=1)


def test_equality_up_to_branch_order():
    a = equisingularity_datum([Branch.build(2, {3: 1}), Branch.build(1, {1: 1})])
    b = equisingularity_datum([Branch.build(1, {1: 7}), Branch.build(2, {3: -2})])
    assert equal_equisingularity_witness(a, b) == (1, 0)
    assert equal_equisingularity(b, a)


def test_intersection_numbers_must_match_too():
    node = equisingularity_datum(lines(1, -1))
    tacnode = equisingularity_datum([Branch.build(1, {2: 1}), Branch.build(1, {2: -1})])
    assert not equal_equisingularity(node, tacnode)


def test_pairs_must_match():
    cusp = EquisingularityDatum((CUSP_PAIRS,), ((None,),))
    smooth = EquisingularityDatum((SMOOTH,), ((None,),))
    assert not equal_equisingularity(cusp, smooth)


def test_different_branch_counts_are_not_equal():
    assert not equal_equisingularity(
        equisingularity_datum(lines(1)), equisingularity_datum(lines(1, 2))
    )


def test_matching_needs_backtracking():
    # first branch of `a` looks like either smooth branch of `b` until the third is placed
    a = EquisingularityDatum(
        (SMOOTH, SMOOTH, CUSP_PAIRS),
        ((None, 1, 2), (1, None, 3), (2, 3, None)),
    )
    b = EquisingularityDatum(
        (SMOOTH, SMOOTH, CUSP_PAIRS),
        ((None, 1, 3), (1, None, 2), (3, 2, None)),
    )
    assert equal_equisingularity_witness(a, b) == (1, 0, 2)


def test_datum_validation():
    with pytest.raises(PreconditionError):
        EquisingularityDatum((SMOOTH, SMOOTH), ((None, 1), (2, None)))
    with pytest.raises(PreconditionError):
        EquisingularityDatum((SMOOTH,), ((0,),))
    with pytest.raises(PreconditionError):
        EquisingularityDatum((SMOOTH, SMOOTH), ((None, -1), (-1, None)))


def test_empty_germ_is_degenerate():
    with pytest.raises(DegenerateInput):
        aggregate_invariants(EquisingularityDatum((), ()))
