"""Discrete Morse functions, gradient vector fields and their validation."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping, Optional, Sequence

import networkx as nx

from complexes import CellComplex
from errors import (
    FieldContractError,
    MalformedInputError,
    MorseContradictionError,
    NotMorseFunctionError,
)


@dataclass(frozen=True)
class MorseFunction:
    """A real value per cell, indexed by cell id."""
    values: tuple[float, ...]

    def __getitem__(self, cell: int) -> float:
        return self.values[cell]

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def from_mapping(cls, complex_: CellComplex, mapping: Mapping[int, float]) -> "MorseFunction":
        missing = [c for c in complex_.cells if c not in mapping]
        if missing:
            raise MalformedInputError(f"No value for cells {missing[:10]}")
        return cls(tuple(float(mapping[c]) for c in complex_.cells))


@dataclass(frozen=True, eq=False)
class GradientField:
    """
    Discrete gradient vector field V: A → B plus the critical set C.

    Attributes:
        pairs: tail (p-cell) → head ((p+1)-cell)
        critical: Unpaired cells
    """
    pairs: Mapping[int, int]
    critical: frozenset[int]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradientField):
            return NotImplemented
        return dict(self.pairs) == dict(other.pairs) and self.critical == other.critical

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.pairs.items())), self.critical))

    @cached_property
    def inverse(self) -> dict[int, int]:
        """head → tail."""
        return {head: tail for tail, head in self.pairs.items()}

    def head_of(self, tail: int) -> Optional[int]:
        return self.pairs.get(tail)

    def tail_of(self, head: int) -> Optional[int]:
        return self.inverse.get(head)

    def is_tail(self, cell: int) -> bool:
        return cell in self.pairs

    def is_head(self, cell: int) -> bool:
        return cell in self.inverse

    def is_critical(self, cell: int) -> bool:
        return cell in self.critical

    def partner(self, cell: int) -> Optional[int]:
        if cell in self.pairs:
            return self.pairs[cell]
        return self.inverse.get(cell)

    def reversed(self) -> "GradientField":
        """The dual field: every arrow (α, β) becomes (β, α)."""
        return GradientField(pairs=dict(self.inverse), critical=self.critical)

    @classmethod
    def from_pairs(cls, complex_: CellComplex, pairs: Mapping[int, int]) -> "GradientField":
        matched = set(pairs) | set(pairs.values())
        return cls(
            pairs=dict(pairs),
            critical=frozenset(c for c in complex_.cells if c not in matched),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "pairs": [[tail, head] for tail, head in sorted(self.pairs.items())],
            "critical": sorted(self.critical),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GradientField":
        try:
            pairs = {int(t): int(h) for t, h in data["pairs"]}
            critical = frozenset(int(c) for c in data["critical"])
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInputError(f"Invalid field JSON: {e}")
        return cls(pairs=pairs, critical=critical)


@dataclass
class FieldReport:
    """
    Outcome of validate_field.

    Attributes:
        ok: True when no violation was found
        violations: Human-readable violation descriptions
        cycle: First closed V-path found, as alternating cells (first cell repeated)
    """
    ok: bool
    violations: list[str] = field(default_factory=list)
    cycle: Optional[list[int]] = None


def ab_counts(complex_: CellComplex, function: MorseFunction, cell: int) -> tuple[int, int]:
    """
    Count wrong-direction cofaces (a) and faces (b) of a cell.

    Args:
        complex_: Cell complex
        function: Values on every cell
        cell: The cell τ

    Returns:
        (a, b) with a = #{σ > τ : f(τ) >= f(σ)} and b = #{ν < τ : f(ν) >= f(τ)}

    Example:
        >>> ab_counts(edge, f, edge_id)  # f(v0)=0, f(v1)=1, f(e)=0.5
        (0, 1)
    """
    value = function[cell]
    a = sum(1 for coface in complex_.cofaces[cell] if value >= function[coface])
    b = sum(1 for face in complex_.faces[cell] if function[face] >= value)
    return a, b


def classify(complex_: CellComplex, function: MorseFunction) -> GradientField:
    """
    Derive the gradient field of a discrete Morse function.

    Args:
        complex_: Cell complex
        function: Candidate discrete Morse function

    Returns:
        GradientField pairing each τ with a(τ) = 1 to its unique lower coface

    Raises:
        NotMorseFunctionError: If some count exceeds one or witnesses disagree
        MorseContradictionError: If a cell has a = b = 1
    """
    if len(function) != len(complex_):
        raise MalformedInputError(
            f"Function has {len(function)} values for {len(complex_)} cells"
        )
    pairs: dict[int, int] = {}
    for cell in complex_.cells:
        a, b = ab_counts(complex_, function, cell)
        if a > 1 or b > 1:
            raise NotMorseFunctionError(
                f"Cell {cell} has a={a}, b={b}; a discrete Morse function allows at most 1",
                cell=cell,
            )
        if a == 1 and b == 1:
            raise MorseContradictionError(
                f"Cell {cell} has both a=1 and b=1, which is impossible for valid input",
                cell=cell,
            )
        if a == 1:
            value = function[cell]
            head = next(c for c in complex_.cofaces[cell] if value >= function[c])
            witness = [f for f in complex_.faces[head] if function[f] >= function[head]]
            if witness != [cell]:
                raise NotMorseFunctionError(
                    f"Cell {cell} points to {head}, whose lower witnesses are {witness}",
                    cell=cell,
                )
            pairs[cell] = head
    return GradientField.from_pairs(complex_, pairs)


def _path_graph(complex_: CellComplex, field_: GradientField) -> nx.DiGraph:
    graph = nx.DiGraph()
    for tail in sorted(field_.pairs):
        head = field_.pairs[tail]
        graph.add_node(tail)
        for face in complex_.faces[head]:
            if face != tail and face in field_.pairs:
                graph.add_edge(tail, face)
    return graph


def validate_field(complex_: CellComplex, field_: GradientField) -> FieldReport:
    """
    Check partition, grading, incidence and acyclicity of a field.

    Never raises; violations are collected in the report.

    Args:
        complex_: Cell complex
        field_: Field to check

    Returns:
        FieldReport; ``cycle`` holds the first closed V-path when one exists
    """
    violations: list[str] = []
    size = len(complex_)
    tails = set(field_.pairs)
    heads_list = list(field_.pairs.values())
    heads = set(heads_list)

    out_of_range = sorted(c for c in tails | heads | field_.critical if not 0 <= c < size)
    if out_of_range:
        violations.append(f"Unknown cells {out_of_range[:10]}")
    if len(heads) != len(heads_list):
        violations.append("Pairing is not injective: a head is used twice")
    overlap = tails & heads
    if overlap:
        violations.append(f"Cells are both tail and head: {sorted(overlap)[:10]}")
    paired_critical = (tails | heads) & field_.critical
    if paired_critical:
        violations.append(f"Critical cells are also paired: {sorted(paired_critical)[:10]}")
    uncovered = [c for c in complex_.cells if c not in tails and c not in heads
                 and c not in field_.critical]
    if uncovered:
        violations.append(f"Cells outside A ∪ B ∪ C: {uncovered[:10]}")

    for tail, head in sorted(field_.pairs.items()):
        if not (0 <= tail < size and 0 <= head < size):
            continue
        if complex_.dims[head] != complex_.dims[tail] + 1:
            violations.append(f"Pair ({tail}, {head}) does not raise dimension by one")
        if tail not in complex_.faces[head]:
            violations.append(f"Pair ({tail}, {head}): {tail} is not a face of {head}")

    cycle = None
    if not violations:
        try:
            edges = nx.find_cycle(_path_graph(complex_, field_))
        except nx.NetworkXNoCycle:
            edges = None
        if edges:
            cycle = []
            for tail, _ in edges:
                cycle.extend((tail, field_.pairs[tail]))
            cycle.append(edges[0][0])
            violations.append(f"Closed V-path through {cycle}")

    return FieldReport(ok=not violations, violations=violations, cycle=cycle)


def function_from_field(complex_: CellComplex, field_: GradientField) -> MorseFunction:
    """
    Build a discrete Morse function whose gradient is the given field.

    Values are ranks in a topological order of the modified Hasse diagram,
    where face arrows point up except along V-pairs.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field

    Returns:
        MorseFunction f with classify(complex_, f) == field_

    Raises:
        FieldContractError: If the field has a closed V-path
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(complex_.cells)
    for cell in complex_.cells:
        for face in complex_.faces[cell]:
            if field_.pairs.get(face) == cell:
                graph.add_edge(cell, face)
            else:
                graph.add_edge(face, cell)
    try:
        order = list(nx.lexicographical_topological_sort(graph))
    except nx.NetworkXUnfeasible:
        raise FieldContractError("Field has a closed V-path; no Morse function exists")
    values = [0.0] * len(complex_)
    for rank, cell in enumerate(order):
        values[cell] = float(rank)
    return MorseFunction(tuple(values))


def restrict_field(field_: GradientField, inclusion: Sequence[int]) -> GradientField:
    """
    Restrict a field to a subcomplex.

    Args:
        field_: Field on the ambient complex
        inclusion: Subcomplex id → ambient id

    Returns:
        Field on the subcomplex keeping pairs with both cells inside
    """
    local = {parent: index for index, parent in enumerate(inclusion)}
    pairs = {}
    for parent_tail, index in local.items():
        parent_head = field_.pairs.get(parent_tail)
        if parent_head is not None and parent_head in local:
            pairs[index] = local[parent_head]
    matched = set(pairs) | set(pairs.values())
    return GradientField(
        pairs=pairs,
        critical=frozenset(i for i in range(len(inclusion)) if i not in matched),
    )
