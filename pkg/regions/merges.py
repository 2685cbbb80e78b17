"""Merge points of V-paths and their push-out repair."""

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional

from complexes import CellComplex, boundary_subcomplex
from errors import CannotPushError, MalformedInputError
from morse import GradientField, validate_field

from .collapse import collapses_to_critical
from .descending import DESCENDING, Region, critical_order, descending_frame, descending_regions


@dataclass(frozen=True)
class MergePoint:
    """
    A (p-1)-cell where V-paths of one region coalesce.

    Attributes:
        cell: The merging tail τ
        critical: Owner of the region
        incoming: The ≥ 2 p-cells through which paths arrive at τ
    """
    cell: int
    critical: int
    incoming: tuple[int, ...]


def frame_region(complex_: CellComplex, field_: GradientField, critical: int) -> Region:
    """Region made of the critical cell and its frame only."""
    frame = descending_frame(complex_, field_, critical)
    return Region(
        critical=critical,
        kind=DESCENDING,
        dimension=complex_.dims[critical],
        cells=frozenset(frame | {critical}),
        frame=frozenset(frame),
    )


def detect_merges(complex_: CellComplex, field_: GradientField, region: Region) -> list[MergePoint]:
    """
    Find tails of the frame entered by two or more paths.

    A predecessor of a frame tail τ is the critical cell or a frame p-cell
    having τ as a face without being V(τ).

    Args:
        complex_: Cell complex
        field_: Gradient field the region was built from
        region: Descending region (only its frame is inspected)

    Returns:
        Merge points ordered by cell id
    """
    critical = region.critical
    rank = complex_.dims[critical]
    sources = {critical} | {c for c in region.frame if complex_.dims[c] == rank}
    merges = []
    for cell in sorted(region.frame):
        if complex_.dims[cell] != rank - 1 or not field_.is_tail(cell):
            continue
        head = field_.pairs[cell]
        incoming = tuple(c for c in complex_.cofaces[cell] if c in sources and c != head)
        if len(incoming) >= 2:
            merges.append(MergePoint(cell=cell, critical=critical, incoming=incoming))
    return merges


def _star_path(
    complex_: CellComplex,
    allowed: set[int],
    start: int,
    goal: int,
) -> Optional[list[int]]:
    """Breadth-first face/coface path inside ``allowed``, least ids first."""
    parents: dict[int, Optional[int]] = {start: None}
    queue = deque([start])
    while queue:
        cell = queue.popleft()
        if cell == goal:
            path = []
            current: Optional[int] = cell
            while current is not None:
                path.append(current)
                current = parents[current]
            return path[::-1]
        for nxt in sorted(complex_.faces[cell] + complex_.cofaces[cell]):
            if nxt in allowed and nxt not in parents:
                parents[nxt] = cell
                queue.append(nxt)
    return None


def _check_diamonds(faces: list[list[int]], cells) -> None:
    for cell in sorted(cells):
        counts = Counter(g for f in faces[cell] for g in faces[f])
        bad = sorted(g for g, n in counts.items() if n != 2)
        if bad:
            raise CannotPushError(
                f"Push would leave cell {cell} irregular: faces {bad} are not shared exactly twice"
            )


def push_merge(
    complex_: CellComplex,
    field_: GradientField,
    merge: MergePoint,
) -> tuple[CellComplex, GradientField]:
    """
    Push a merge point one step along V by subdividing its star.

    τ is doubled into τ, τ' and σ = V(τ) into σ, σ'; a p-cell ν joins τ to
    τ' and a (p+1)-cell μ is bounded by ν, σ and σ'. With p1 a path in
    star(τ) from the first incoming cell to σ and p2 a disjoint path to the
    second incoming cell, τ' replaces τ on the p-cells of p1 other than σ,
    σ' replaces σ on the last (p+1)-cell of p1 and ν is added to the first
    (p+1)-cell of p2. The new field pairs τ' with σ' and ν with μ.

    The remaining cells of the star keep their faces: τ' and ν are not
    added to their boundaries. A push that would leave a touched cell
    irregular is rejected by the diamond check instead.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        merge: Merge point from detect_merges

    Returns:
        (K', V') with new ids τ' = m, σ' = m+1, ν = m+2, μ = m+3

    Raises:
        CannotPushError: If the disjoint star paths do not exist or the
                         rewired cells would not stay regular
    """
    tau = merge.cell
    sigma = field_.pairs.get(tau)
    if sigma is None or len(merge.incoming) < 2:
        raise CannotPushError(f"Cell {tau} is not a merging tail")
    p = complex_.dims[sigma]
    first, second = merge.incoming[0], merge.incoming[1]

    star = complex_.star(tau)
    layer = {c for c in star if complex_.dims[c] in (p, p + 1)}
    p1 = _star_path(complex_, layer, first, sigma)
    if p1 is None:
        raise CannotPushError(f"No path in the star of {tau} from {first} to {sigma}")
    p2 = _star_path(complex_, (layer - set(p1)) | {first}, first, second)
    if p2 is None or len(p2) < 3:
        raise CannotPushError(
            f"No path in the star of {tau} from {first} to {second} disjoint from {p1}"
        )

    size = len(complex_)
    tau2, sigma2, nu, mu = size, size + 1, size + 2, size + 3
    faces = [list(f) for f in complex_.faces]
    faces.append(list(complex_.faces[tau]))
    faces.append(sorted(tau2 if f == tau else f for f in complex_.faces[sigma]))
    faces.append(sorted((tau, tau2)))
    faces.append(sorted((nu, sigma, sigma2)))

    for cell in p1:
        if complex_.dims[cell] == p and cell != sigma:
            faces[cell] = sorted(tau2 if f == tau else f for f in faces[cell])
    last = [c for c in p1 if complex_.dims[c] == p + 1][-1]
    faces[last] = sorted(sigma2 if f == sigma else f for f in faces[last])
    opening = next(c for c in p2 if complex_.dims[c] == p + 1)
    faces[opening] = sorted(faces[opening] + [nu])

    dims = list(complex_.dims) + [complex_.dims[tau], p, p, p + 1]
    touched = {c for c in star if dims[c] >= 2} | {mu}
    if p >= 1:
        _check_diamonds(faces, touched)

    labels = None
    if complex_.labels is not None:
        labels = complex_.labels + (
            ("copy", tau, tau2), ("copy", sigma, sigma2), ("link", tau, nu), ("link", sigma, mu),
        )
    pushed = CellComplex(
        dims=tuple(dims),
        faces=tuple(tuple(f) for f in faces),
        labels=labels,
        vertex_ids=complex_.vertex_ids,
    )
    try:
        pushed.validate()
    except MalformedInputError as e:
        raise CannotPushError(f"Push leaves an ill-formed complex: {e}")

    pairs = dict(field_.pairs)
    pairs[tau2] = sigma2
    pairs[nu] = mu
    result = GradientField(pairs=pairs, critical=field_.critical)
    report = validate_field(pushed, result)
    if not report.ok:
        raise CannotPushError(f"Push breaks the field: {'; '.join(report.violations)}")
    return pushed, result


@dataclass
class RepairReport:
    """
    Outcome of repair_to_disks.

    Attributes:
        pushes: Pushes applied per critical cell
        failed: Merge points that could not be pushed, with the reason
        residual: Merge points left when the run stopped
        collapsible: Critical cells whose completed descending region
                     collapses afterwards
        exhausted: The step budget ran out
        closed: The input had empty boundary
    """
    pushes: dict[int, int] = field(default_factory=dict)
    failed: list[tuple[MergePoint, str]] = field(default_factory=list)
    residual: list[MergePoint] = field(default_factory=list)
    collapsible: list[int] = field(default_factory=list)
    exhausted: bool = False
    closed: bool = True

    @property
    def total(self) -> int:
        return sum(self.pushes.values())


def repair_to_disks(
    complex_: CellComplex,
    field_: GradientField,
    max_steps: Optional[int] = None,
) -> tuple[CellComplex, GradientField, RepairReport]:
    """
    Push every merge point of every region out of the region.

    Critical cells are processed by ascending (dimension, id). A merge
    that cannot be pushed is recorded and skipped.

    Args:
        complex_: Cell complex, closed for the disk guarantee
        field_: Acyclic gradient field
        max_steps: Push budget; 10 × cell count when None

    Returns:
        (K', V', RepairReport); the critical set is unchanged
    """
    budget = 10 * len(complex_) if max_steps is None else max_steps
    boundary, _ = boundary_subcomplex(complex_)
    report = RepairReport(closed=not len(boundary))
    steps = 0

    for critical in critical_order(complex_, field_):
        if complex_.dims[critical] == 0:
            continue
        skipped: set[int] = set()
        while not report.exhausted:
            region = frame_region(complex_, field_, critical)
            todo = [m for m in detect_merges(complex_, field_, region) if m.cell not in skipped]
            if not todo:
                break
            if steps >= budget:
                report.exhausted = True
                break
            merge = todo[0]
            try:
                complex_, field_ = push_merge(complex_, field_, merge)
            except CannotPushError as e:
                skipped.add(merge.cell)
                report.failed.append((merge, str(e)))
                continue
            steps += 1
            report.pushes[critical] = report.pushes.get(critical, 0) + 1

    for critical in critical_order(complex_, field_):
        region = frame_region(complex_, field_, critical)
        report.residual.extend(detect_merges(complex_, field_, region))
    for region in descending_regions(complex_, field_):
        if collapses_to_critical(complex_, region):
            report.collapsible.append(region.critical)
    return complex_, field_, report
