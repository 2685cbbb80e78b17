import pytest

from complexes import build_simplicial
from errors import FieldContractError
from morse import GradientField, extend_from_vertex_values
from regions import (
    boundary_critical_cells,
    boundary_regions,
    check_compatible,
    descending_regions,
    morse_smale,
)

from conftest import SQUARE_TOP_EDGE

SQUARE_BOUNDARY = (0, 1, 2, 3, 4, 5, 7, 8)


def test_square_boundary_critical_region(square, square_field):
    regions = boundary_regions(square, square_field)
    assert [r.critical for r in regions] == [SQUARE_TOP_EDGE]
    region = regions[0]
    assert region.via_boundary
    assert region.dimension == 1
    assert region.cells == frozenset(square.cells) - {0}


def test_square_boundary_critical_cells(square, square_field):
    restricted = GradientField(
        pairs={1: 4, 2: 5, 3: 6}, critical=frozenset({0, 7})
    )
    assert boundary_critical_cells(square_field, restricted, SQUARE_BOUNDARY) == [SQUARE_TOP_EDGE]


def test_interval_boundary_vertex():
    k = build_simplicial([(0, 1)])
    field_ = extend_from_vertex_values(k, {0: 0.0, 1: 1.0})
    regions = boundary_regions(k, field_)
    assert [(r.critical, r.cells) for r in regions] == [(1, frozenset({1, 2}))]


def test_closed_complex_has_no_boundary_regions(two_minima, circle_complex):
    assert boundary_regions(circle_complex, two_minima) == []


def test_incompatible_boundary_field(square, square_field):
    # pairs 1 with 13 instead of 01
    other = GradientField(pairs={1: 6, 3: 7, 2: 5}, critical=frozenset({0, 4}))
    with pytest.raises(FieldContractError, match="boundary field does not"):
        check_compatible(square_field, other, SQUARE_BOUNDARY)
    with pytest.raises(FieldContractError):
        boundary_regions(square, square_field, boundary_field=other)


def test_invalid_boundary_field(square, square_field):
    broken = GradientField(pairs={1: 4}, critical=frozenset({0}))
    with pytest.raises(FieldContractError, match="invalid"):
        boundary_regions(square, square_field, boundary_field=broken)


def test_explicit_boundary_field_matches_restriction(square, square_field):
    restricted = GradientField(pairs={1: 4, 2: 5, 3: 6}, critical=frozenset({0, 7}))
    implicit = boundary_regions(square, square_field)
    explicit = boundary_regions(square, square_field, boundary_field=restricted)
    assert [r.cells for r in implicit] == [r.cells for r in explicit]


def test_interior_regions_are_reused(square, square_field):
    interior = descending_regions(square, square_field)
    regions = boundary_regions(square, square_field, interior_regions=interior)
    assert regions[0].cells == frozenset(square.cells) - {0}


def test_decomposition_lists_boundary_regions_last(square, square_field):
    decomp = morse_smale(square, square_field, boundary=True, ascending=False)
    assert [(r.critical, r.via_boundary) for r in decomp.descending] == [
        (0, False), (SQUARE_TOP_EDGE, True),
    ]
    assert decomp.uncovered(square, square_field) == []
    assert decomp.overlaps() == []
    assert decomp.ms_label[5] == set()
