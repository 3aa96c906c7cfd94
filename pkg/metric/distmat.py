"""
Labeled distance matrices: the canonical combinatorial view of a finite
metric space.  Distances are replaced by class labels 1..L in ascending order
of value (0 on the diagonal); isometries are exactly the label-preserving
bijections.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd

from config import DEFAULT_FLOAT_TOL, SEPARATION_FACTOR
from metric.geometry import matrix_rank
from metric.scalar import Scalar, ZERO, format_scalar, parse_scalar
from utils.errors import InputError, PolyhomError

logger = logging.getLogger(__name__)

ClassValue = Union[Scalar, float]


class DistanceMatrixError(InputError):
    """Distance data violates a precondition (shape, symmetry, zero diagonal)."""


class AmbiguousClustering(PolyhomError):
    """Float clustering could not be certified.

    Args:
        certificate: achieved (min gap)/(max spread) ratio.
        required: ratio that was needed.
    """

    def __init__(self, certificate: float, required: float):
        super().__init__(
            f"Distance clustering is ambiguous: separation {certificate:.3g} < {required:g}; "
            f"supply exact input or a different tolerance"
        )
        self.certificate = certificate
        self.required = required


@dataclass(frozen=True, eq=False)
class LabeledDistanceMatrix:
    """k×k label matrix plus per-label class values.

    ``class_values[0]`` and ``class_counts[0]`` belong to the diagonal label 0
    (value 0, no pairs).  ``squared`` tells whether class values are squared
    distances (always true for exact input).
    """

    labels: Tuple[Tuple[int, ...], ...]
    class_values: Tuple[ClassValue, ...]
    class_counts: Tuple[int, ...] = None
    dimension_hint: Optional[int] = None
    name: Optional[str] = None
    exact: bool = True
    squared: bool = True
    certificate: Optional[float] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.labels)
        k = len(rows)
        if k < 1:
            raise DistanceMatrixError("A labeled matrix needs at least one point")
        num_labels = len(self.class_values) - 1
        for i, row in enumerate(rows):
            if len(row) != k:
                raise DistanceMatrixError(f"Row {i} has {len(row)} entries, expected {k}")
            if row[i] != 0:
                raise DistanceMatrixError(f"Diagonal entry ({i},{i}) must carry label 0")
            for j in range(i + 1, k):
                if row[j] != rows[j][i]:
                    raise DistanceMatrixError(f"Labels not symmetric at ({i},{j})")
                if not 1 <= row[j] <= num_labels:
                    raise DistanceMatrixError(f"Label {row[j]} at ({i},{j}) outside 1..{num_labels}")
        values = tuple(self.class_values)
        for lower, upper in zip(values[1:], values[2:]):
            if not lower < upper:
                raise DistanceMatrixError("Class values must be strictly increasing")

        counts = [0] * (num_labels + 1)
        for i in range(k):
            for j in range(i + 1, k):
                counts[rows[i][j]] += 1
        if self.class_counts is not None and tuple(self.class_counts) != tuple(counts):
            raise DistanceMatrixError("class_counts disagree with the label matrix")

        object.__setattr__(self, "labels", rows)
        object.__setattr__(self, "class_values", values)
        object.__setattr__(self, "class_counts", tuple(counts))

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def num_labels(self) -> int:
        return len(self.class_values) - 1

    @cached_property
    def array(self) -> np.ndarray:
        matrix = np.array(self.labels, dtype=np.int32).reshape(self.k, self.k)
        matrix.flags.writeable = False
        return matrix

    def label(self, i: int, j: int) -> int:
        return self.labels[i][j]

    def profile(self, points: Sequence[int]) -> Tuple[int, ...]:
        """Labels of all pairs (i < j) of a tuple, in pair order."""
        return tuple(
            self.labels[points[i]][points[j]]
            for i in range(len(points))
            for j in range(i + 1, len(points))
        )


@dataclass(frozen=True)
class SpherePartition:
    center: int
    shells: Tuple[Tuple[int, Tuple[int, ...]], ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(members) for _, members in self.shells)

    def members(self, label: int) -> Tuple[int, ...]:
        for shell_label, members in self.shells:
            if shell_label == label:
                return members
        return ()


def label_exact(matrix: Sequence[Sequence[Scalar]], name: str = None,
                dimension_hint: int = None) -> LabeledDistanceMatrix:
    """Label an exact squared-distance matrix by value equality.

    Raises:
        DistanceMatrixError: not square, not symmetric, non-zero diagonal,
            negative entries or coincident points.
    """
    rows = [[Scalar.coerce(x) for x in row] for row in matrix]
    k = len(rows)
    if k == 0 or any(len(row) != k for row in rows):
        raise DistanceMatrixError("Distance matrix must be square and non-empty")
    values = set()
    for i in range(k):
        if not rows[i][i].is_zero():
            raise DistanceMatrixError(f"Diagonal entry ({i},{i}) is not zero")
        for j in range(i + 1, k):
            value = rows[i][j]
            if value != rows[j][i]:
                raise DistanceMatrixError(f"Matrix not symmetric at ({i},{j})")
            if value.sign() <= 0:
                raise DistanceMatrixError(f"Entry ({i},{j}) must be positive, got {value}")
            values.add(value)

    ordered = sorted(values)
    label_of = {value: index + 1 for index, value in enumerate(ordered)}
    labels = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            labels[i][j] = labels[j][i] = label_of[rows[i][j]]

    logger.debug(f"Exact labeling of {name or 'matrix'}: k={k}, {len(ordered)} classes")
    return LabeledDistanceMatrix(
        labels=labels,
        class_values=(ZERO, *ordered),
        dimension_hint=dimension_hint,
        name=name,
    )


def label_float(matrix, tol: float = None, separation: float = SEPARATION_FACTOR,
                squared: bool = False, name: str = None,
                dimension_hint: int = None) -> LabeledDistanceMatrix:
    """Single-linkage clustering of off-diagonal values.

    Values are scaled so the largest is 1; consecutive sorted values closer than
    ``tol`` merge.  The separation certificate (smallest gap between clusters
    over largest spread inside one, the spread floored at ``tol``) must reach
    ``separation``.

    Raises:
        DistanceMatrixError: malformed input.
        AmbiguousClustering: certificate below ``separation``.
    """
    if tol is None:
        tol = DEFAULT_FLOAT_TOL
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DistanceMatrixError("Distance matrix must be square and non-empty")
    k = arr.shape[0]
    if k == 1:
        return LabeledDistanceMatrix(labels=[[0]], class_values=(0.0,), exact=False,
                                     squared=squared, certificate=float("inf"), name=name,
                                     dimension_hint=dimension_hint)

    upper = np.triu_indices(k, 1)
    values = arr[upper]
    scale = float(values.max())
    if scale <= 0 or np.any(values <= 0):
        raise DistanceMatrixError("Off-diagonal distances must be positive")
    if np.any(np.abs(np.diag(arr)) > tol * scale):
        raise DistanceMatrixError("Diagonal must be zero")
    if np.any(np.abs(arr - arr.T) > tol * scale):
        raise DistanceMatrixError(f"Matrix is not symmetric within tol={tol:g}")

    normalized = values / scale
    order = np.argsort(normalized, kind="stable")
    ordered = normalized[order]
    gaps = np.diff(ordered)
    breaks = gaps > tol
    sorted_ids = np.concatenate([[0], np.cumsum(breaks)])
    cluster_ids = np.empty_like(sorted_ids)
    cluster_ids[order] = sorted_ids
    num_clusters = int(sorted_ids[-1]) + 1

    spreads = [
        float(ordered[sorted_ids == c].max() - ordered[sorted_ids == c].min())
        for c in range(num_clusters)
    ]
    max_spread = max(spreads)
    min_gap = float(gaps[breaks].min()) if breaks.any() else float("inf")
    certificate = min_gap / max(max_spread, tol)
    if certificate < separation:
        raise AmbiguousClustering(certificate, separation)

    labels = np.zeros((k, k), dtype=np.int64)
    labels[upper] = cluster_ids + 1
    labels = labels + labels.T
    class_values = [0.0] + [float(values[cluster_ids == c].mean()) for c in range(num_clusters)]

    logger.debug(f"Float labeling of {name or 'matrix'}: k={k}, {num_clusters} classes, "
                 f"certificate={certificate:.3g}")
    return LabeledDistanceMatrix(
        labels=labels.tolist(),
        class_values=tuple(class_values),
        exact=False,
        squared=squared,
        certificate=certificate,
        name=name,
        dimension_hint=dimension_hint,
    )


def sphere_partition(ldm: LabeledDistanceMatrix, v: int) -> SpherePartition:
    """Shells S(v, d_l) in ascending label order (empty shells omitted)."""
    if not 0 <= v < ldm.k:
        raise DistanceMatrixError(f"Point index {v} outside 0..{ldm.k - 1}")
    members: Dict[int, List[int]] = {}
    for j, label in enumerate(ldm.labels[v]):
        if j != v:
            members.setdefault(label, []).append(j)
    return SpherePartition(
        center=v,
        shells=tuple((label, tuple(members[label])) for label in sorted(members)),
    )


def shell_sizes(ldm: LabeledDistanceMatrix, v: int = 0) -> Tuple[int, ...]:
    return sphere_partition(ldm, v).sizes


def permute_labels(ldm: LabeledDistanceMatrix, perm: Sequence[int]) -> LabeledDistanceMatrix:
    """Relabel points: entry (i, j) of the result is entry (perm[i], perm[j])."""
    labels = [[ldm.labels[perm[i]][perm[j]] for j in range(ldm.k)] for i in range(ldm.k)]
    return LabeledDistanceMatrix(
        labels=labels,
        class_values=ldm.class_values,
        dimension_hint=ldm.dimension_hint,
        name=ldm.name,
        exact=ldm.exact,
        squared=ldm.squared,
        certificate=ldm.certificate,
    )


def is_automorphism(ldm: LabeledDistanceMatrix, perm: Sequence[int]) -> bool:
    if len(perm) != ldm.k or sorted(perm) != list(range(ldm.k)):
        return False
    index = np.asarray(perm)
    return bool(np.array_equal(ldm.array[np.ix_(index, index)], ldm.array))


def antipodal_matching(ldm: LabeledDistanceMatrix) -> Optional[Tuple[int, ...]]:
    """Pairing of each point with its unique point at the largest label.

    Absent unless the largest class is a perfect matching.
    """
    top = ldm.num_labels
    if top == 0:
        return None
    partner = []
    for i, row in enumerate(ldm.labels):
        hits = [j for j, label in enumerate(row) if label == top]
        if len(hits) != 1:
            return None
        partner.append(hits[0])
    return tuple(partner)


def _squared_class_values(ldm: LabeledDistanceMatrix) -> List[ClassValue]:
    if ldm.squared:
        return list(ldm.class_values)
    return [value * value for value in ldm.class_values]


def double_centered_rank(ldm: LabeledDistanceMatrix, tol: float = 1e-9) -> int:
    """Rank of the Gram matrix −½·J·D·J, i.e. the embedding dimension.

    Exact for Scalar class values; numpy rank with a relative tolerance otherwise.
    """
    k = ldm.k
    values = _squared_class_values(ldm)
    if ldm.exact:
        squared = [[Scalar.coerce(values[label]) for label in row] for row in ldm.labels]
        row_means = [sum(row, ZERO) / k for row in squared]
        grand_mean = sum(row_means, ZERO) / k
        gram = [
            [(squared[i][j] - row_means[i] - row_means[j] + grand_mean) * (-1) / 2 for j in range(k)]
            for i in range(k)
        ]
        return matrix_rank(gram)

    squared = np.asarray(values, dtype=float)[ldm.array]
    centering = np.eye(k) - np.full((k, k), 1.0 / k)
    gram = -0.5 * centering @ squared @ centering
    scale = max(float(np.abs(gram).max()), 1.0)
    return int(np.linalg.matrix_rank(gram, tol=tol * scale * k))


def labeled_graph(ldm: LabeledDistanceMatrix) -> nx.Graph:
    """Complete graph with edge attribute ``label`` (for isomorphism checks)."""
    graph = nx.Graph()
    graph.add_nodes_from(range(ldm.k))
    for i in range(ldm.k):
        for j in range(i + 1, ldm.k):
            graph.add_edge(i, j, label=ldm.labels[i][j])
    return graph


def is_isomorphic(first: LabeledDistanceMatrix, second: LabeledDistanceMatrix) -> bool:
    """Whether two labeled matrices agree up to relabeling the points."""
    if first.k != second.k or first.class_counts != second.class_counts:
        return False
    return nx.is_isomorphic(
        labeled_graph(first),
        labeled_graph(second),
        edge_match=lambda a, b: a["label"] == b["label"],
    )


def class_records(ldm: LabeledDistanceMatrix) -> List[Dict[str, Any]]:
    """One record per nonzero label: value (text and float) and pair count."""
    rows = []
    for label in range(1, ldm.num_labels + 1):
        value = ldm.class_values[label]
        rows.append({
            "label": label,
            "value": format_scalar(value) if isinstance(value, Scalar) else f"{value:.12g}",
            "approx": float(value),
            "pairs": ldm.class_counts[label],
        })
    return rows


def class_table(ldm: LabeledDistanceMatrix) -> pd.DataFrame:
    return pd.DataFrame(class_records(ldm), columns=["label", "value", "approx", "pairs"])


def ldm_to_dict(ldm: LabeledDistanceMatrix, include_labels: bool = True) -> Dict[str, Any]:
    data = {
        "name": ldm.name,
        "k": ldm.k,
        "exact": ldm.exact,
        "squared": ldm.squared,
        "classes": class_records(ldm),
    }
    if ldm.certificate is not None:
        data["certificate"] = ldm.certificate
    if include_labels:
        data["labels"] = [list(row) for row in ldm.labels]
    return data


# -- distance-matrix files -------------------------------------------------------

def read_distance_csv(path: Union[str, Path]) -> np.ndarray:
    """CSV of plain float distances, no header."""
    try:
        frame = pd.read_csv(path, header=None)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DistanceMatrixError(f"Cannot read distance CSV {path}: {e}")
    try:
        return frame.to_numpy(dtype=float)
    except ValueError as e:
        raise DistanceMatrixError(f"Distance CSV {path} holds non-numeric entries: {e}")


def read_distance_json(path: Union[str, Path]) -> Dict[str, Any]:
    """JSON ``{name?, dimension?, squared_distances: [[scalar-text, ...], ...]}``."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise DistanceMatrixError(f"Cannot read distance JSON {path}: {e}")
    if not isinstance(data, dict) or "squared_distances" not in data:
        raise DistanceMatrixError("Distance JSON needs a 'squared_distances' matrix")
    data["squared_distances"] = [[parse_scalar(str(x)) for x in row] for row in data["squared_distances"]]
    return data


def load_distance_matrix(path: Union[str, Path], mode: str = "exact",
                         tol: float = None) -> LabeledDistanceMatrix:
    """Load a CSV (always float) or JSON (exact unless ``mode='float'``) matrix."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        matrix = read_distance_csv(path)
        return label_float(matrix, tol=tol, squared=False, name=path.stem)

    data = read_distance_json(path)
    name = data.get("name") or path.stem
    dimension = data.get("dimension")
    dimension = int(dimension) if dimension is not None else None
    if mode == "float":
        matrix = [[float(x) for x in row] for row in data["squared_distances"]]
        return label_float(matrix, tol=tol, squared=True, name=name, dimension_hint=dimension)
    return label_exact(data["squared_distances"], name=name, dimension_hint=dimension)
