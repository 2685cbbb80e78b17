"""Steepest descent and saddle-routed paths between maxima."""

from dataclasses import dataclass
from typing import Any, Callable, Collection, Optional

import networkx as nx

from complexes import CellComplex
from errors import NoRouteError
from morse import GradientField, MorseFunction, VPath
from regions import Decomposition, Region

Cost = Callable[[int, int], float]

_START = -1


def hop_cost(u: int, v: int) -> float:
    return 1.0


def height_cost(function: MorseFunction) -> Cost:
    """Edge cost |f(v) - f(u)|."""
    def cost(u: int, v: int) -> float:
        return abs(function[v] - function[u])
    return cost


@dataclass(frozen=True)
class Route:
    """
    A face-incident cell sequence from a start cell to a maximum.

    Attributes:
        cells: Consecutive cells are face/coface incident
        waypoints: Maxima and connecting saddles in visiting order
        cost: Sum of edge costs along ``cells``
    """
    cells: tuple[int, ...]
    waypoints: tuple[int, ...]
    cost: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "cells": list(self.cells),
            "waypoints": list(self.waypoints),
            "cost": self.cost,
        }


def steepest_descent(
    complex_: CellComplex,
    field_: GradientField,
    start: int,
    stop: Collection[int] = (),
) -> tuple[int, VPath]:
    """
    Follow the field downward from a cell until a critical cell.

    A tail moves to its head and then to the least other face of the head;
    a head moves to its least face other than its tail.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        start: Any cell
        stop: Extra terminal cells, e.g. boundary-critical cells

    Returns:
        (terminal cell, visited cells as a VPath)

    Example:
        >>> steepest_descent(circle, two_minima, c)
        (a, VPath(cells=(c, e_ca, a)))
    """
    cells = [start]
    current = start
    for _ in range(len(complex_) + 1):
        if field_.is_critical(current) or (current in stop and current != start):
            break
        head = field_.pairs.get(current)
        if head is not None:
            others = [f for f in complex_.faces[head] if f != current]
            cells.append(head)
            current = others[0]
        else:
            tail = field_.tail_of(current)
            others = [f for f in complex_.faces[current] if f != tail]
            if not others:
                break
            current = others[0]
        cells.append(current)
    return current, VPath(tuple(cells))


def incidence_graph(complex_: CellComplex, cost: Cost = hop_cost) -> nx.Graph:
    """Undirected face/coface graph weighted by ``cost``."""
    graph = nx.Graph()
    graph.add_nodes_from(complex_.cells)
    for cell in complex_.cells:
        for face in complex_.faces[cell]:
            graph.add_edge(face, cell, weight=cost(face, cell))
    return graph


def _segment(
    graph: nx.Graph,
    nodes: set[int],
    source: int,
    target: int,
) -> Optional[tuple[list[int], float]]:
    sub = graph.subgraph(nodes | {source, target})
    try:
        path = nx.dijkstra_path(sub, source, target, weight="weight")
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return None
    return path, sum(graph[u][v]["weight"] for u, v in zip(path, path[1:]))


def maxima(decomp: Decomposition, complex_: CellComplex) -> dict[int, Region]:
    """Descending regions of interior critical cells of top dimension."""
    top = complex_.dimension
    return {
        r.critical: r for r in decomp.descending
        if r.dimension == top and not r.via_boundary
    }


def saddle_links(decomp: Decomposition, complex_: CellComplex) -> dict[int, list[int]]:
    """
    Critical (n-1)-cells and the maxima their ascending regions reach.

    A saddle reaches a maximum when its ascending region meets the
    maximum's descending region, or when the maximum is a coface of a cell
    of the ascending region (an ascending V-path ends in it). A saddle
    links the maxima it reaches when there are two or more.
    """
    tops = maxima(decomp, complex_)
    links = {}
    for region in decomp.ascending:
        if region.dimension != complex_.dimension - 1:
            continue
        ends = {g for c in region.cells for g in complex_.cofaces[c] if g in tops}
        reached = sorted(m for m, down in tops.items() if m in ends or region.cells & down.cells)
        if len(reached) >= 2:
            links[region.critical] = reached
    return links


def crossings(
    decomp: Decomposition,
    complex_: CellComplex,
    first: int,
    second: int,
    cost: Cost = hop_cost,
    graph: Optional[nx.Graph] = None,
) -> list[tuple[float, int, list[int]]]:
    """
    Cheapest passage from one maximum to another through each linking saddle.

    The descent runs inside D(first) ∪ A(s) and the ascent inside
    A(s) ∪ D(second).

    Returns:
        (cost, saddle, cells) triples sorted by (cost, saddle)
    """
    graph = graph if graph is not None else incidence_graph(complex_, cost)
    tops = maxima(decomp, complex_)
    result = []
    for saddle, reached in sorted(saddle_links(decomp, complex_).items()):
        if first not in reached or second not in reached:
            continue
        up_region = decomp.region(saddle, "ascending")
        down = _segment(graph, set(tops[first].cells) | set(up_region.cells), first, saddle)
        up = _segment(graph, set(up_region.cells) | set(tops[second].cells), saddle, second)
        if down is None or up is None:
            continue
        result.append((down[1] + up[1], saddle, down[0] + up[0][1:]))
    return sorted(result, key=lambda item: (item[0], item[1]))


def route_to_maximum(
    decomp: Decomposition,
    complex_: CellComplex,
    start: int,
    target: int,
    cost: Optional[Cost] = None,
) -> Route:
    """
    Route from a cell to a chosen maximum via saddles on shared boundaries.

    A start inside D(target) climbs to it directly. Otherwise the start
    climbs to a maximum whose region closure contains it, and the route
    then crosses saddles of the saddle-adjacency graph with least total
    cost.

    Args:
        decomp: Decomposition with descending and ascending regions
        complex_: Complex the decomposition was built on
        start: Any cell
        target: Critical cell of top dimension
        cost: Edge cost; hop count when None

    Returns:
        Route whose waypoints alternate maximum, saddle, ..., target

    Raises:
        NoRouteError: If target is not a maximum or is unreachable
    """
    cost = cost or hop_cost
    tops = maxima(decomp, complex_)
    if target not in tops:
        raise NoRouteError(f"Cell {target} is not a maximum of the decomposition")
    graph = incidence_graph(complex_, cost)

    if start in tops[target].cells:
        segment = _segment(graph, set(tops[target].cells), start, target)
        if segment is None:
            raise NoRouteError(f"No ascent from {start} to {target} inside its region")
        return Route(cells=tuple(segment[0]), waypoints=(target,), cost=segment[1])

    hops = nx.Graph()
    hops.add_nodes_from([_START] + sorted(tops))
    climbs: dict[int, list[int]] = {}
    for peak in sorted(tops):
        region = tops[peak]
        if start not in complex_.closure(region.cells):
            continue
        segment = _segment(graph, set(region.cells), start, peak)
        if segment is not None:
            climbs[peak] = segment[0]
            hops.add_edge(_START, peak, weight=segment[1])

    passages: dict[tuple[int, int], tuple[float, int, list[int]]] = {}
    peaks = sorted(tops)
    for i, first in enumerate(peaks):
        for second in peaks[i + 1:]:
            found = crossings(decomp, complex_, first, second, cost=cost, graph=graph)
            if found:
                best = found[0]
                passages[(first, second)] = best
                hops.add_edge(first, second, weight=best[0], saddle=best[1])

    try:
        chain = nx.dijkstra_path(hops, _START, target, weight="weight")
    except nx.NetworkXNoPath:
        raise NoRouteError(f"Maximum {target} is not reachable from cell {start}")

    cells = list(climbs[chain[1]])
    waypoints = [chain[1]]
    for here, there in zip(chain[1:], chain[2:]):
        total, saddle, path = passages[(min(here, there), max(here, there))]
        if here > there:
            path = path[::-1]
        cells.extend(path[1:])
        waypoints.extend([saddle, there])
    total_cost = sum(graph[u][v]["weight"] for u, v in zip(cells, cells[1:]))
    return Route(cells=tuple(cells), waypoints=tuple(waypoints), cost=total_cost)
