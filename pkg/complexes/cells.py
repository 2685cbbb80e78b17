"""Abstract regular cell complexes: cells, grading, face relation, dual and boundary."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Optional

from errors import MalformedInputError, NotPseudoManifoldError


@dataclass(frozen=True, eq=False)
class CellComplex:
    """
    Finite regular cell complex given combinatorially.

    Cells are dense integer ids ``0..m-1``. ``faces[c]`` lists the
    codimension-1 faces of ``c`` in ascending id order; cofaces are derived
    as the exact transpose. Equality compares the grading and the face
    relation only; labels and vertex ids are I/O payload.

    Attributes:
        dims: Dimension of every cell
        faces: Codimension-1 faces of every cell
        labels: Optional payload per cell (vertex tuple, grid anchor/mask)
        vertex_ids: Optional map from external vertex id to 0-cell id
    """
    dims: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[Any, ...]] = field(default=None, repr=False)
    vertex_ids: Optional[Mapping[int, int]] = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.dims) != len(self.faces):
            raise MalformedInputError(
                f"{len(self.dims)} dimensions given for {len(self.faces)} face lists"
            )
        if self.labels is not None and len(self.labels) != len(self.dims):
            raise MalformedInputError("Label count does not match cell count")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CellComplex):
            return NotImplemented
        return self.dims == other.dims and self.faces == other.faces

    def __hash__(self) -> int:
        return hash((self.dims, self.faces))

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def cells(self) -> range:
        return range(len(self.dims))

    @cached_property
    def dimension(self) -> int:
        """Maximal cell dimension, -1 for the empty complex."""
        return max(self.dims, default=-1)

    @cached_property
    def cofaces(self) -> tuple[tuple[int, ...], ...]:
        transposed: list[list[int]] = [[] for _ in self.dims]
        for cell, cell_faces in enumerate(self.faces):
            for face in cell_faces:
                transposed[face].append(cell)
        return tuple(tuple(sorted(c)) for c in transposed)

    @cached_property
    def _by_dim(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.dimension + 1)]
        for cell, dim in enumerate(self.dims):
            buckets[dim].append(cell)
        return tuple(tuple(b) for b in buckets)

    def cells_of_dim(self, dim: int) -> tuple[int, ...]:
        if dim < 0 or dim > self.dimension:
            return ()
        return self._by_dim[dim]

    @cached_property
    def _label_index(self) -> dict[Any, int]:
        if self.labels is None:
            return {}
        return {label: cell for cell, label in enumerate(self.labels)}

    def find(self, label: Any) -> int:
        """
        Look up a cell by its label payload.

        Args:
            label: Canonical label, e.g. a sorted vertex tuple

        Returns:
            Cell id

        Raises:
            KeyError: If no cell carries the label
        """
        if isinstance(label, list):
            label = tuple(label)
        return self._label_index[label]

    @cached_property
    def vertices(self) -> tuple[frozenset[int], ...]:
        """The 0-cells in the closure of every cell."""
        result: list[frozenset[int]] = [frozenset()] * len(self.dims)
        for dim in range(self.dimension + 1):
            for cell in self.cells_of_dim(dim):
                if dim == 0:
                    result[cell] = frozenset((cell,))
                else:
                    result[cell] = frozenset().union(*(result[f] for f in self.faces[cell]))
        return tuple(result)

    def closure(self, cells: Iterable[int]) -> set[int]:
        """All cells in ``cells`` together with all their faces."""
        seen: set[int] = set()
        stack = list(cells)
        while stack:
            cell = stack.pop()
            if cell in seen:
                continue
            seen.add(cell)
            stack.extend(self.faces[cell])
        return seen

    def star(self, cell: int) -> set[int]:
        """All cells having ``cell`` in their closure (``cell`` included)."""
        seen: set[int] = set()
        stack = [cell]
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            stack.extend(self.cofaces[current])
        return seen

    def validate(self, strict: bool = True) -> None:
        """
        Check grading and the regularity proxy.

        Args:
            strict: Also require every cell of dimension >= 1 to have at
                    least two codimension-1 faces (dual complexes relax this)

        Raises:
            MalformedInputError: On the first violation found
        """
        for cell, cell_faces in enumerate(self.faces):
            dim = self.dims[cell]
            if dim < 0:
                raise MalformedInputError(f"Cell {cell} has negative dimension {dim}")
            if len(set(cell_faces)) != len(cell_faces):
                raise MalformedInputError(f"Cell {cell} lists a face twice")
            for face in cell_faces:
                if not 0 <= face < len(self.dims) or face == cell:
                    raise MalformedInputError(f"Cell {cell} has invalid face {face}")
                if self.dims[face] != dim - 1:
                    raise MalformedInputError(
                        f"Face {face} of cell {cell} has dimension {self.dims[face]}, "
                        f"expected {dim - 1}"
                    )
            if strict and dim >= 1 and len(cell_faces) < 2:
                raise MalformedInputError(
                    f"Cell {cell} of dimension {dim} has {len(cell_faces)} faces; "
                    f"regular cells need at least 2"
                )


@dataclass(frozen=True)
class ComplexStats:
    """
    Size profile of a complex (and optionally of a field on it).

    Attributes:
        m: Total cell count
        n: Dimension
        m_d: Cells per dimension
        r_d: Mean codimension-1 face count per dimension
        p_d: Mean codimension-1 coface count per dimension
        p_max: max(p_d)
        c_t: Total critical cells, when a field was given
        c_d: Critical cells per dimension, when a field was given
    """
    m: int
    n: int
    m_d: tuple[int, ...]
    r_d: tuple[float, ...]
    p_d: tuple[float, ...]
    p_max: float
    c_t: Optional[int] = None
    c_d: Optional[tuple[int, ...]] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "m_d": list(self.m_d),
            "r_d": list(self.r_d),
            "p_d": list(self.p_d),
            "p_max": self.p_max,
            "c_t": self.c_t,
            "c_d": None if self.c_d is None else list(self.c_d),
        }


def stats(complex_: CellComplex, field_=None) -> ComplexStats:
    """
    Count cells, incidences and (optionally) critical cells.

    Args:
        complex_: Cell complex
        field_: Optional GradientField whose critical set is counted

    Returns:
        ComplexStats with exact counts

    Example:
        >>> stats(build_simplicial([(0, 1, 2)])).m_d
        (3, 3, 1)
    """
    n = complex_.dimension
    m_d = tuple(len(complex_.cells_of_dim(d)) for d in range(n + 1))
    r_d, p_d = [], []
    for d in range(n + 1):
        cells = complex_.cells_of_dim(d)
        r_d.append(sum(len(complex_.faces[c]) for c in cells) / len(cells) if cells else 0.0)
        p_d.append(sum(len(complex_.cofaces[c]) for c in cells) / len(cells) if cells else 0.0)

    c_t = c_d = None
    if field_ is not None:
        counts = [0] * (n + 1)
        for cell in field_.critical:
            # unknown ids are reported by validation, not counted
            if 0 <= cell < len(complex_):
                counts[complex_.dims[cell]] += 1
        c_d = tuple(counts)
        c_t = sum(counts)

    return ComplexStats(
        m=len(complex_),
        n=n,
        m_d=m_d,
        r_d=tuple(r_d),
        p_d=tuple(p_d),
        p_max=max(p_d, default=0.0),
        c_t=c_t,
        c_d=c_d,
    )


def euler_characteristic(complex_: CellComplex) -> int:
    """Alternating sum of cell counts."""
    return sum((-1) ** d for d in complex_.dims)


def dual(complex_: CellComplex) -> CellComplex:
    """
    Reverse dimensions and the face relation, keeping cell ids.

    A p-cell becomes an (n-p)-cell and the faces of a dual cell are the
    cofaces of the original one. The result is purely combinatorial; cells
    dual to boundary cells may have a single face.

    Args:
        complex_: Complex of dimension n

    Returns:
        The dual complex on the same ids
    """
    n = complex_.dimension
    result = CellComplex(
        dims=tuple(n - d for d in complex_.dims),
        faces=complex_.cofaces,
    )
    result.validate(strict=False)
    return result


def boundary_subcomplex(complex_: CellComplex) -> tuple[CellComplex, tuple[int, ...]]:
    """
    Extract the boundary of an n-pseudo-manifold.

    The boundary is generated by the (n-1)-cells with exactly one n-coface.

    Args:
        complex_: Pseudo-manifold with or without boundary

    Returns:
        (boundary complex, tuple mapping boundary ids to ids in ``complex_``)

    Raises:
        NotPseudoManifoldError: If an (n-1)-cell has more than two n-cofaces
    """
    n = complex_.dimension
    generators = []
    if n >= 1:
        for cell in complex_.cells_of_dim(n - 1):
            count = len(complex_.cofaces[cell])
            if count > 2:
                raise NotPseudoManifoldError(
                    f"Cell {cell} of dimension {n - 1} has {count} cofaces of dimension {n}"
                )
            if count == 1:
                generators.append(cell)

    inclusion = tuple(sorted(complex_.closure(generators)))
    local = {parent: index for index, parent in enumerate(inclusion)}
    labels = None
    if complex_.labels is not None:
        labels = tuple(complex_.labels[c] for c in inclusion)
    vertex_ids = None
    if complex_.vertex_ids is not None:
        vertex_ids = {v: local[c] for v, c in complex_.vertex_ids.items() if c in local}

    boundary = CellComplex(
        dims=tuple(complex_.dims[c] for c in inclusion),
        faces=tuple(tuple(local[f] for f in complex_.faces[c]) for c in inclusion),
        labels=labels,
        vertex_ids=vertex_ids,
    )
    return boundary, inclusion
