"""Shared complexes, fields and random instances."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import pytest

from complexes import CellComplex, build_cubical, build_simplicial
from morse import GradientField, MorseFunction, extend_from_vertex_values

# Circle a, b, c: vertices 0, 1, 2; edges ab=3, ac=4, bc=5.
A, B, C, AB, CA, BC = 0, 1, 2, 3, 4, 5

# Square [0,1]²: vertices (0,0)=0, (1,0)=1, (0,1)=2, (1,1)=3.
SQUARE_FACETS = [(0, 1, 3), (0, 2, 3)]
SQUARE_VALUES = {0: 0.0, 1: 1.0, 2: 1.0, 3: 2.0}
SQUARE_TOP_EDGE = 8  # (2, 3)

# Merge instance: fan of six triangles around t with a saddle edge uw
# whose two V-paths meet at t.
T, X, A2, M, B4, W, C6, U = range(8)
TX, TA, TM, TB, TW, TC, XA, XC, XU, AM, MB, BW, WC, WU = range(8, 22)
TXA, TCX, TAM, TMB, TBW, TWC = range(22, 28)
MERGE_FACETS = [
    (T, X, A2), (T, C6, X), (T, A2, M), (T, M, B4), (T, B4, W), (T, W, C6),
    (X, U), (W, U),
]
MERGE_PAIRS = {
    X: TX, T: TM, W: TW, U: XU, A2: AM, B4: MB, C6: XC,
    XA: TXA, TA: TAM, BW: TBW, TB: TMB, WC: TWC, TC: TCX,
}


@dataclass
class Instance:
    """A complex with seeded vertex values and the derived field."""
    name: str
    complex: CellComplex
    values: dict[int, float]
    field: GradientField
    closed: bool


def circle() -> CellComplex:
    return build_simplicial([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def circle_complex() -> CellComplex:
    return circle()


@pytest.fixture
def two_minima(circle_complex) -> GradientField:
    """Critical a, b, ab, bc; c flows along ca into a."""
    return GradientField(pairs={C: CA}, critical=frozenset({A, B, AB, BC}))


@pytest.fixture
def two_minima_values() -> MorseFunction:
    return MorseFunction((0.0, 0.4, 0.3, 1.0, 0.25, 0.5))


@pytest.fixture
def square() -> CellComplex:
    return build_simplicial(SQUARE_FACETS)


@pytest.fixture
def square_field(square) -> GradientField:
    return extend_from_vertex_values(square, SQUARE_VALUES)


@pytest.fixture
def merge_complex() -> CellComplex:
    return build_simplicial(MERGE_FACETS)


@pytest.fixture
def merge_field(merge_complex) -> GradientField:
    return GradientField.from_pairs(merge_complex, MERGE_PAIRS)


def random_sphere(rng: np.random.Generator, subdivisions: int) -> CellComplex:
    """Boundary of the tetrahedron with random stellar subdivisions of triangles."""
    facets = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    next_vertex = 4
    for _ in range(subdivisions):
        a, b, c = facets.pop(int(rng.integers(len(facets))))
        v = next_vertex
        next_vertex += 1
        facets.extend([(a, b, v), (a, c, v), (b, c, v)])
    return build_simplicial(facets)


def torus(n: int) -> CellComplex:
    """Periodic n×n triangulated grid, n >= 3."""
    def vertex(i: int, j: int) -> int:
        return (i % n) * n + (j % n)

    facets = []
    for i in range(n):
        for j in range(n):
            facets.append((vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1)))
            facets.append((vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1)))
    return build_simplicial(facets)


def random_values(complex_: CellComplex, rng: np.random.Generator) -> dict[int, float]:
    return {v: float(rng.random()) for v in complex_.cells_of_dim(0)}


def make_instance(name: str, complex_: CellComplex, seed: int, closed: bool) -> Instance:
    rng = np.random.default_rng(seed)
    values = random_values(complex_, rng)
    return Instance(
        name=name,
        complex=complex_,
        values=values,
        field=extend_from_vertex_values(complex_, values),
        closed=closed,
    )


def random_instances(count: int = 102, base_seed: int = 7) -> list[tuple[str, int, Optional[tuple]]]:
    """Instance recipes: (kind, seed, shape). Built lazily by ``build_instance``."""
    rng = np.random.default_rng(base_seed)
    recipes = []
    for index in range(count):
        kind = ("sphere", "torus", "grid")[index % 3]
        seed = int(rng.integers(1 << 31))
        if kind == "sphere":
            shape = (int(rng.integers(0, 25)),)
        elif kind == "torus":
            shape = (int(rng.integers(3, 7)),)
        elif index % 9 == 2:
            shape = tuple(int(e) for e in rng.integers(1, 4, size=3))
        else:
            shape = tuple(int(e) for e in rng.integers(1, 9, size=2))
        recipes.append((kind, seed, shape))
    return recipes


def build_instance(kind: str, seed: int, shape: tuple) -> Instance:
    if kind == "sphere":
        complex_ = random_sphere(np.random.default_rng(seed), shape[0])
        return make_instance(f"sphere-{shape[0]}", complex_, seed, closed=True)
    if kind == "torus":
        return make_instance(f"torus-{shape[0]}", torus(shape[0]), seed, closed=True)
    return make_instance(f"grid-{'x'.join(map(str, shape))}", build_cubical(shape), seed, closed=False)
