from functools import lru_cache
from itertools import combinations

import numpy as np
import pytest

from complexes import build_cubical, build_simplicial, dual, euler_characteristic, stats
from errors import FieldContractError, OrderingError
from morse import GradientField, classify, extend_from_vertex_values, MorseFunction
from regions import (
    MembershipIndex,
    ascending_regions,
    build_region,
    collapses_to_critical,
    complete_cells,
    complete_region,
    critical_order,
    descending_frame,
    descending_regions,
    frame_search,
    label_cells,
    membership,
    morse_smale,
    region_of,
)

from conftest import A, AB, B, BC, C, CA, build_instance, random_instances

RECIPES = random_instances()


@lru_cache(maxsize=None)
def decomposed(index: int):
    instance = build_instance(*RECIPES[index])
    decomp = morse_smale(
        instance.complex, instance.field, boundary=not instance.closed, ascending=True,
    )
    return instance, decomp


def test_circle_region_sizes(circle_complex, two_minima):
    regions = descending_regions(circle_complex, two_minima)
    assert [r.critical for r in regions] == [A, B, AB, BC]
    assert [len(r) for r in regions] == [1, 1, 1, 3]
    assert region_of(regions, BC).cells == frozenset({BC, C, CA})
    assert region_of(regions, BC).frame == frozenset({C, CA})


def test_frame_requires_critical_cell(circle_complex, two_minima):
    with pytest.raises(FieldContractError):
        descending_frame(circle_complex, two_minima, C)


def test_frame_of_minimum_is_empty(circle_complex, two_minima):
    assert descending_frame(circle_complex, two_minima, A) == set()


def test_frame_search_and_completion_helpers(circle_complex, two_minima):
    frame, steps = frame_search(circle_complex, two_minima, circle_complex.faces[BC])
    assert frame == {C, CA}
    assert steps == 1
    owners = MembershipIndex()
    for region in descending_regions(circle_complex, two_minima):
        if region.dimension == 0:
            owners.add_region(region)
    cells, _ = complete_cells(circle_complex, two_minima, BC, 1, {BC} | frame, owners)
    assert cells == {BC, C, CA}


def test_complete_region_needs_lower_regions(circle_complex, two_minima):
    frame = descending_frame(circle_complex, two_minima, BC)
    with pytest.raises(OrderingError, match="must be built before"):
        complete_region(circle_complex, two_minima, BC, frame, [])

    lower = [r for r in descending_regions(circle_complex, two_minima) if r.dimension == 0]
    region = complete_region(circle_complex, two_minima, BC, frame, lower)
    assert region.cells == frozenset({BC, C, CA})


def test_square_interior_has_one_region(square, square_field):
    regions = descending_regions(square, square_field)
    assert [(r.critical, r.cells) for r in regions] == [(0, frozenset({0}))]


def test_top_region_of_sphere_with_two_critical_cells():
    k = build_simplicial([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    field_ = extend_from_vertex_values(k, {0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0})
    assert len(field_.critical) == 2
    regions = descending_regions(k, field_)
    top = regions[-1]
    assert top.dimension == 2
    assert top.cells == frozenset(k.cells) - {0}
    assert collapses_to_critical(k, top)


def test_threads_do_not_change_regions():
    k = build_cubical([5, 5])
    rng = np.random.default_rng(11)
    values = {v: float(rng.random()) for v in k.cells_of_dim(0)}
    field_ = extend_from_vertex_values(k, values)
    serial = descending_regions(k, field_, threads=1)
    parallel = descending_regions(k, field_, threads=4)
    assert [(r.critical, r.cells) for r in serial] == [(r.critical, r.cells) for r in parallel]


@pytest.mark.parametrize("index", range(9), ids=lambda i: f"{RECIPES[i][0]}-{i}")
def test_order_within_a_dimension_does_not_change_regions(index):
    instance = build_instance(*RECIPES[index])
    k, field_ = instance.complex, instance.field
    rng = np.random.default_rng(index)
    order = critical_order(k, field_)
    owners = MembershipIndex()
    shuffled = {}
    for d in range(k.dimension + 1):
        batch = [c for c in order if k.dims[c] == d]
        for position in rng.permutation(len(batch)):
            region = build_region(k, field_, batch[position], owners)
            owners.add_region(region)
            shuffled[region.critical] = region.cells
    assert shuffled == {r.critical: r.cells for r in descending_regions(k, field_)}


def test_critical_order_sorts_by_dimension(circle_complex, two_minima):
    assert critical_order(circle_complex, two_minima) == [A, B, AB, BC]


def test_all_critical_field_labels_each_cell_with_itself():
    k = build_simplicial([(0, 1, 2)])
    field_ = classify(k, MorseFunction(tuple(float(d) for d in k.dims)))
    decomp = morse_smale(k, field_)
    assert all(decomp.ms_label[c] == {(c, c)} for c in k.cells)


def test_ascending_regions_of_two_minima(circle_complex, two_minima):
    up = ascending_regions(circle_complex, two_minima)
    by_owner = {r.critical: r for r in up}
    assert by_owner[A].cells == frozenset({A, CA, C})
    assert by_owner[B].cells == frozenset({B})
    assert by_owner[AB].dimension == 1


def test_label_cells_and_membership(circle_complex, two_minima):
    down = descending_regions(circle_complex, two_minima)
    up = ascending_regions(circle_complex, two_minima)
    decomp = label_cells(circle_complex, down, up)
    assert decomp.owners(C) == [BC]
    assert decomp.owners(C, "ascending") == [A]
    assert decomp.ms_label[C] == {(BC, A)}
    assert decomp.uncovered(circle_complex, two_minima) == []
    assert membership(down)[CA] == {3}


@pytest.mark.parametrize("index", range(len(RECIPES)), ids=lambda i: f"{RECIPES[i][0]}-{i}")
def test_regions_cover_every_regular_cell(index):
    instance, decomp = decomposed(index)
    k, field_ = instance.complex, instance.field
    assert decomp.uncovered(k, field_, "descending") == []
    assert decomp.uncovered(k, field_, "ascending") == []


@pytest.mark.parametrize("index", range(len(RECIPES)), ids=lambda i: f"{RECIPES[i][0]}-{i}")
def test_critical_counts_match_euler_characteristic(index):
    instance, _ = decomposed(index)
    profile = stats(instance.complex, instance.field)
    alternating = sum((-1) ** d * c for d, c in enumerate(profile.c_d))
    assert alternating == euler_characteristic(instance.complex)


@pytest.mark.parametrize("index", range(len(RECIPES)), ids=lambda i: f"{RECIPES[i][0]}-{i}")
def test_top_regions_are_disjoint_and_collapsible(index):
    instance, decomp = decomposed(index)
    k = instance.complex
    n = k.dimension
    tops = [
        r for r in decomp.descending
        if (r.dimension == n and not r.via_boundary) or (r.via_boundary and r.dimension == n - 1)
    ]
    assert tops
    for first, second in combinations(tops, 2):
        assert not first.cells & second.cells
    for region in tops:
        assert collapses_to_critical(k, region), region.critical


@pytest.mark.parametrize(
    "index",
    [i for i, recipe in enumerate(RECIPES) if recipe[0] != "grid"],
    ids=lambda i: f"{RECIPES[i][0]}-{i}",
)
def test_ascending_regions_are_dual_descending_regions(index):
    instance, decomp = decomposed(index)
    k, field_ = instance.complex, instance.field
    assert dual(dual(k)) == k
    mirrored = descending_regions(dual(k), field_.reversed())
    assert [(r.critical, r.cells) for r in decomp.ascending] == [
        (r.critical, r.cells) for r in mirrored
    ]
    for region, image in zip(decomp.ascending, mirrored):
        assert region.dimension == k.dims[region.critical]
        assert image.dimension == k.dimension - k.dims[region.critical]


@pytest.mark.slow
def test_pair_visits_grow_linearly_with_grid_size():
    visits, sizes = [], []
    for k in (16, 32, 64):
        grid = build_cubical([k, k])
        rng = np.random.default_rng(2024)
        values = {v: float(rng.random()) for v in grid.cells_of_dim(0)}
        field_ = extend_from_vertex_values(grid, values)
        visits.append(sum(r.visits for r in descending_regions(grid, field_)))
        sizes.append(len(grid))
    for i in range(1, len(sizes)):
        assert visits[i] / visits[i - 1] <= 3 * sizes[i] / sizes[i - 1]


def test_region_dict_is_sorted(circle_complex, two_minima):
    region = region_of(descending_regions(circle_complex, two_minima), BC)
    assert region.to_dict() == {
        "critical": BC,
        "kind": "descending",
        "dim": 1,
        "via_boundary": False,
        "cells": [C, CA, BC],
    }


def test_regions_reject_unknown_field(circle_complex):
    bogus = GradientField(pairs={}, critical=frozenset())
    assert descending_regions(circle_complex, bogus) == []
