"""
Exact Euclidean computations on finite point sets: squared distances,
barycenter/circumsphere verification, affine rank and central symmetry.

Coordinates are Scalars sharing one radicand.  A column may carry a positive
rational weight ``w``: the literal coordinate is then ``stored · √w``, which
lets mixed surds such as √2/4 and √6/12 live side by side while every squared
distance stays in the shared field.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from metric.scalar import Scalar, ZERO, common_radicand, format_scalar, parse_scalar
from utils.errors import InputError, ParamError

logger = logging.getLogger(__name__)

Point = Tuple[Scalar, ...]


class GeometryError(InputError):
    """Malformed point set."""


@dataclass(frozen=True, eq=False)
class PointSet:
    """k exact points in R^n with optional per-column weights."""

    points: Tuple[Point, ...]
    column_weights: Optional[Tuple[Fraction, ...]] = None
    name: Optional[str] = None
    declared_dimension: Optional[int] = None
    radicand: Optional[int] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        rows = tuple(tuple(Scalar.coerce(x) for x in row) for row in self.points)
        if not rows:
            raise GeometryError("A point set needs at least one point")
        n = len(rows[0])
        if n < 1:
            raise GeometryError("Points need at least one coordinate")
        for index, row in enumerate(rows):
            if len(row) != n:
                raise GeometryError(f"Point {index} has {len(row)} coordinates, expected {n}")

        if self.column_weights is None:
            weights = tuple(Fraction(1) for _ in range(n))
        else:
            weights = tuple(Fraction(w) for w in self.column_weights)
        if len(weights) != n:
            raise GeometryError(f"Got {len(weights)} column weights for {n} columns")
        if any(w <= 0 for w in weights):
            raise GeometryError("Column weights must be positive rationals")

        derived = common_radicand(x for row in rows for x in row)
        radicand = self.radicand
        if radicand is None or derived:
            if radicand not in (None, 0) and derived and radicand != derived:
                raise GeometryError(f"Declared radicand {radicand} but coordinates use sqrt({derived})")
            radicand = derived

        object.__setattr__(self, "points", rows)
        object.__setattr__(self, "column_weights", weights)
        object.__setattr__(self, "radicand", radicand)

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.column_weights)

    def __len__(self):
        return self.k

    def index_of(self, coordinates: Sequence) -> int:
        """Index of the point with the given stored coordinates.

        Raises:
            ParamError: no such point.
        """
        target = tuple(Scalar.coerce(x) for x in coordinates)
        for index, row in enumerate(self.points):
            if row == target:
                return index
        raise ParamError(f"Point {[str(x) for x in target]} is not in {self.name or 'the point set'}")


def weighted_dot(ps: PointSet, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total = ZERO
    for w, x, y in zip(ps.column_weights, u, v):
        if x.is_zero() or y.is_zero():
            continue
        total = total + w * x * y
    return total


def squared_distance(ps: PointSet, i: int, j: int) -> Scalar:
    total = ZERO
    for w, x, y in zip(ps.column_weights, ps.points[i], ps.points[j]):
        diff = x - y
        if not diff.is_zero():
            total = total + w * diff * diff
    return total


def squared_distances(ps: PointSet) -> List[List[Scalar]]:
    """Symmetric k×k matrix of exact squared distances with zero diagonal."""
    k = ps.k
    matrix = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            value = squared_distance(ps, i, j)
            matrix[i][j] = value
            matrix[j][i] = value
    return matrix


def barycenter(ps: PointSet) -> Point:
    k = ps.k
    return tuple(
        sum((row[c] for row in ps.points), ZERO) / k
        for c in range(ps.n)
    )


@dataclass(frozen=True)
class CircumsphereResult:
    center: Point
    radius_sq: Optional[Scalar]
    equidistant: bool


def circumsphere_check(ps: PointSet) -> CircumsphereResult:
    """Check that all points lie on the sphere centered at their barycenter."""
    center = barycenter(ps)
    radii = set()
    for row in ps.points:
        radius_sq = ZERO
        for w, x, c in zip(ps.column_weights, row, center):
            diff = x - c
            radius_sq = radius_sq + w * diff * diff
        radii.add(radius_sq)
        if len(radii) > 1:
            return CircumsphereResult(center=center, radius_sq=None, equidistant=False)
    return CircumsphereResult(center=center, radius_sq=radii.pop(), equidistant=True)


def centered_vectors(ps: PointSet, center: Point = None) -> List[Point]:
    if center is None:
        center = barycenter(ps)
    return [tuple(x - c for x, c in zip(row, center)) for row in ps.points]


def matrix_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank by exact Gaussian elimination over the field of the entries."""
    matrix = [[Scalar.coerce(x) for x in row] for row in rows]
    if not matrix:
        return 0
    rank = 0
    for col in range(len(matrix[0])):
        pivot = next((r for r in range(rank, len(matrix)) if not matrix[r][col].is_zero()), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inverse = matrix[rank][col].inverse()
        for r in range(rank + 1, len(matrix)):
            if matrix[r][col].is_zero():
                continue
            factor = matrix[r][col] * inverse
            matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[rank])]
        rank += 1
        if rank == len(matrix):
            break
    return rank


def affine_rank(ps: PointSet) -> int:
    """Rank of {x_i − x_0}.

    Positive column weights rescale columns and leave the rank unchanged.
    """
    origin = ps.points[0]
    differences = [tuple(x - o for x, o in zip(row, origin)) for row in ps.points[1:]]
    return matrix_rank(differences)


def central_symmetry(ps: PointSet) -> Optional[Tuple[int, ...]]:
    """Antipodal pairing i ↦ j with x_j = 2·barycenter − x_i, if it exists.

    A point sitting on the barycenter has no partner, so the pairing is absent
    in that case too.
    """
    center = barycenter(ps)
    lookup = {row: index for index, row in enumerate(ps.points)}
    images = []
    for index, row in enumerate(ps.points):
        target = tuple(2 * c - x for x, c in zip(row, center))
        partner = lookup.get(target)
        if partner is None or partner == index:
            return None
        images.append(partner)
    return tuple(images)


def chord_cosines(radius_sq: Scalar, chord_values: Sequence[Scalar]) -> List[Scalar]:
    """Exact cos θ = 1 − s/(2r²) for squared chords s on a sphere of radius² r²."""
    radius_sq = Scalar.coerce(radius_sq)
    return [1 - Scalar.coerce(s) / (2 * radius_sq) for s in chord_values]


def spherical_angles(radius_sq: Scalar, chord_values: Sequence[Scalar]) -> np.ndarray:
    """Central angles in radians (floating point, for display)."""
    cosines = np.array([float(c) for c in chord_cosines(radius_sq, chord_values)], dtype=float)
    return np.arccos(np.clip(cosines, -1.0, 1.0))


def float_coordinates(ps: PointSet) -> np.ndarray:
    """k×n float array of literal coordinates (stored value times √weight)."""
    scale = np.sqrt(np.array([float(w) for w in ps.column_weights], dtype=float))
    stored = np.array([[float(x) for x in row] for row in ps.points], dtype=float)
    return stored * scale


def float_squared_distances(ps: PointSet) -> np.ndarray:
    coords = float_coordinates(ps)
    diff = coords[:, None, :] - coords[None, :, :]
    return np.einsum('ijk,ijk->ij', diff, diff)


# -- instance files ----------------------------------------------------------

def point_set_to_dict(ps: PointSet) -> Dict[str, Any]:
    data = {
        "name": ps.name,
        "radicand": ps.radicand,
        "column_weights": [str(w) for w in ps.column_weights],
        "points": [[format_scalar(x) for x in row] for row in ps.points],
    }
    if ps.declared_dimension is not None:
        data["declared_dimension"] = ps.declared_dimension
    return data


def point_set_from_dict(data: Dict[str, Any]) -> PointSet:
    """Build a PointSet from the instance-file mapping.

    Raises:
        GeometryError: missing or malformed fields.
    """
    if not isinstance(data, dict) or "points" not in data:
        raise GeometryError("Instance file needs a 'points' list")
    try:
        points = [[parse_scalar(str(x)) for x in row] for row in data["points"]]
        weights = data.get("column_weights")
        if weights is not None:
            weights = [Fraction(str(w)) for w in weights]
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise GeometryError(f"Malformed instance file: {e}")
    dimension = data.get("declared_dimension")
    return PointSet(
        points=points,
        column_weights=weights,
        name=data.get("name"),
        declared_dimension=int(dimension) if dimension is not None else None,
        radicand=data.get("radicand"),
    )


def dumps_point_set(ps: PointSet) -> str:
    return json.dumps(point_set_to_dict(ps), indent=2, ensure_ascii=False)


def loads_point_set(text: str) -> PointSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GeometryError(f"Instance file is not valid JSON: {e}")
    return point_set_from_dict(data)


def save_point_set(ps: PointSet, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_point_set(ps) + "\n", encoding="utf-8")
    logger.info(f"Saved point set {ps.name or ''} ({ps.k} points) to {path}")


def load_point_set(path: Union[str, Path]) -> PointSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GeometryError(f"Cannot read instance file {path}: {e}")
    ps = loads_point_set(text)
    logger.info(f"Loaded point set {ps.name or path} ({ps.k} points in R^{ps.n})")
    return ps
