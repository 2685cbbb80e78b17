import math

import numpy as np
import pytest

from complexes import build_simplicial
from errors import AmbiguousCancellationError, NotCancellableError
from morse import (
    GradientField,
    cancel,
    count_connecting_paths,
    enumerate_vpaths,
    extend_from_vertex_values,
    lower_star_values,
    simplify,
    simplify_with_log,
    validate_field,
)

from conftest import A, AB, B, BC, C, CA, random_sphere, random_values


def test_enumerate_from_critical_edge(circle_complex):
    field_ = GradientField(pairs={B: BC, C: CA}, critical=frozenset({A, AB}))
    found = enumerate_vpaths(circle_complex, field_, AB)
    assert [p.cells for p in found.paths] == [(A,), (B, BC, C, CA, A)]
    assert [p.end for p in found.paths] == [A, A]
    assert not found.truncated


def test_enumerate_respects_bound(circle_complex):
    field_ = GradientField(pairs={B: BC, C: CA}, critical=frozenset({A, AB}))
    found = enumerate_vpaths(circle_complex, field_, AB, max_paths=1)
    assert len(found.paths) == 1
    assert found.truncated


def test_enumerate_from_tail(circle_complex, two_minima):
    found = enumerate_vpaths(circle_complex, two_minima, C)
    assert [p.cells for p in found.paths] == [(C, CA, A)]


def test_count_connecting_paths(circle_complex, two_minima):
    assert count_connecting_paths(circle_complex, two_minima, AB, A) == 1
    assert count_connecting_paths(circle_complex, two_minima, BC, A) == 1
    assert count_connecting_paths(circle_complex, two_minima, BC, B) == 1


def test_cancel_reduces_critical_set(circle_complex, two_minima):
    assert len(two_minima.critical) == 4
    cancelled = cancel(circle_complex, two_minima, AB, A)
    assert cancelled.critical == frozenset({B, BC})
    assert cancelled.pairs[A] == AB
    assert validate_field(circle_complex, cancelled).ok


def test_cancel_reverses_longer_path(circle_complex, two_minima):
    cancelled = cancel(circle_complex, two_minima, BC, A)
    # BC > C, then C is re-paired and CA flows into A
    assert cancelled.pairs == {C: BC, A: CA}
    assert cancelled.critical == frozenset({B, AB})
    assert validate_field(circle_complex, cancelled).ok


def test_cancel_reports_ambiguity(circle_complex, two_minima):
    once = cancel(circle_complex, two_minima, AB, A)
    with pytest.raises(AmbiguousCancellationError) as info:
        cancel(circle_complex, once, BC, B)
    assert info.value.path_count == 2


def test_cancel_requires_critical_pair(circle_complex, two_minima):
    with pytest.raises(NotCancellableError, match="critical"):
        cancel(circle_complex, two_minima, CA, C)
    with pytest.raises(NotCancellableError, match="dimension"):
        cancel(circle_complex, two_minima, A, B)


def test_cancel_requires_connecting_path():
    path = build_simplicial([(0, 1), (1, 2)])
    field_ = GradientField(pairs={}, critical=frozenset(path.cells))
    with pytest.raises(NotCancellableError, match="No V-path"):
        cancel(path, field_, 4, 0)


def test_simplify_threshold_zero_keeps_field(circle_complex, two_minima, two_minima_values):
    assert simplify(circle_complex, two_minima, 0, two_minima_values) is two_minima


def test_simplify_cancels_closest_pair(circle_complex, two_minima, two_minima_values):
    result, log = simplify_with_log(circle_complex, two_minima, 0.5, two_minima_values)
    assert log == [(BC, B)]
    assert result.critical == frozenset({A, AB})
    assert validate_field(circle_complex, result).ok


def test_simplify_large_threshold_stops_at_ambiguity(circle_complex, two_minima, two_minima_values):
    result = simplify(circle_complex, two_minima, 10.0, two_minima_values)
    # after (BC, B) the remaining pair AB, A is joined by two paths
    assert result.critical == frozenset({A, AB})


@pytest.mark.parametrize("seed", range(6))
def test_simplify_unbounded_reaches_two_critical_cells_on_spheres(seed):
    rng = np.random.default_rng(seed)
    k = random_sphere(rng, 20)
    values = random_values(k, rng)
    field_ = extend_from_vertex_values(k, values)
    result = simplify(k, field_, math.inf, lower_star_values(k, values))
    assert validate_field(k, result).ok
    assert sorted(k.dims[c] for c in result.critical) == [0, 2]


def test_enumerate_splits_at_head_with_two_free_faces():
    # strip (0,1,2), (1,2,3): edges 01=4, 02=5, 12=6, 13=7, 23=8; triangles 9, 10
    k = build_simplicial([(0, 1, 2), (1, 2, 3)])
    assert [k.find(e) for e in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]] == [4, 5, 6, 7, 8]
    field_ = GradientField(pairs={1: 4, 2: 5, 3: 7, 6: 10}, critical=frozenset({0, 8, 9}))
    assert validate_field(k, field_).ok
    found = enumerate_vpaths(k, field_, 6)
    assert sorted(p.cells for p in found.paths) == [(6, 10, 7), (6, 10, 8)]
    assert not found.truncated
