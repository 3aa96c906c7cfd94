"""
Sufficient and refuting criteria that avoid (or shorten) the full level check.
"""

import itertools
import logging
from typing import Dict, Optional, Sequence, Tuple

from groups.permgroup import PermGroup
from homogeneity.levels import ConsistencyError, LevelChecker, NotHomogeneous
from metric.distmat import LabeledDistanceMatrix, antipodal_matching, label_exact, sphere_partition
from metric.geometry import (
    PointSet, affine_rank, central_symmetry, centered_vectors, squared_distances, weighted_dot,
)
from utils.errors import ParamError

logger = logging.getLogger(__name__)


def two_point_sphere_criterion(ldm: LabeledDistanceMatrix, g: PermGroup,
                               all_vertices: bool = False) -> bool:
    """The stabilizer of a vertex is transitive on each of its spheres.

    Raises:
        NotHomogeneous: ``g`` is not transitive.
        ConsistencyError: ``all_vertices`` found vertices that disagree.
    """
    if not g.is_transitive():
        raise NotHomogeneous(f"{ldm.name or 'matrix'} is not homogeneous; the sphere criterion needs transitivity")

    def holds_at(vertex: int) -> bool:
        stabilizer = g.stabilizer(vertex)
        for _, members in sphere_partition(ldm, vertex).shells:
            if not stabilizer.orbit(members[0]).issuperset(members):
                return False
        return True

    result = holds_at(0)
    if all_vertices:
        for vertex in range(1, ldm.k):
            if holds_at(vertex) != result:
                raise ConsistencyError(f"Sphere criterion differs between vertex 0 and vertex {vertex}")
    return result


def has_label_swapping_symmetry(ldm: LabeledDistanceMatrix, antipode: Sequence[int]) -> bool:
    """Combinatorial central symmetry for three labels: label(x, σy) swaps
    labels 1 and 2 of label(x, y) whenever y ∉ {x, σx}."""
    swap = {1: 2, 2: 1}
    for x in range(ldm.k):
        for y in range(ldm.k):
            if y == x or y == antipode[x]:
                continue
            label = ldm.labels[x][y]
            if label not in swap or ldm.labels[x][antipode[y]] != swap[label]:
                return False
    return True


def three_distance_accelerator(ldm: LabeledDistanceMatrix, g: PermGroup, m: int,
                               points: PointSet = None, threads: int = 1) -> Optional[bool]:
    """m-point homogeneity from (m−1)-point homogeneity of a vertex
    stabilizer on the nearest shell.

    Applies to homogeneous, centrally symmetric spaces with three distances
    whose largest class pairs each point with its antipode.  Returns None
    when it does not apply; a False answer decides nothing.
    """
    name = ldm.name or "matrix"
    if ldm.num_labels != 3:
        logger.debug(f"Three-distance rule not applicable to {name}: {ldm.num_labels} distance classes")
        return None
    antipode = antipodal_matching(ldm)
    if antipode is None:
        logger.debug(f"Three-distance rule not applicable to {name}: largest class is not a matching")
        return None
    if points is not None:
        if central_symmetry(points) != antipode:
            logger.debug(f"Three-distance rule not applicable to {name}: not centrally symmetric")
            return None
    elif not has_label_swapping_symmetry(ldm, antipode):
        logger.debug(f"Three-distance rule not applicable to {name}: labels not antipodally symmetric")
        return None
    if not g.is_transitive():
        return None
    if m <= 1:
        return True

    shell = sphere_partition(ldm, 0).members(1)
    checker = LevelChecker(ldm, g, universe=shell, prefix=(0,), threads=threads)
    verdict = checker.run(m - 1)
    logger.debug(f"Three-distance rule on {name}, m={m}: stabilizer "
                 f"{'is' if verdict.holds else 'is not'} {m - 1}-point transitive on shell 1")
    return verdict.holds


def distinct_distance_shortcut(ldm: LabeledDistanceMatrix, g: PermGroup) -> bool:
    """Fires when each point sees every other point at a different distance.

    With a transitive group that forces k-point homogeneity for every k.
    """
    if not g.is_transitive():
        return False
    row = [label for j, label in enumerate(ldm.labels[0]) if j != 0]
    return len(set(row)) == len(row)


def _reflection_images(points: PointSet, vectors, a: int, b: int) -> Optional[Tuple]:
    """Images of all centered points under the reflection in span(a, b),
    or None when a and b are parallel."""
    va, vb = vectors[a], vectors[b]
    aa = weighted_dot(points, va, va)
    ab = weighted_dot(points, va, vb)
    bb = weighted_dot(points, vb, vb)
    det = aa * bb - ab * ab
    if det.is_zero():
        return None
    images = []
    for x in vectors:
        xa = weighted_dot(points, x, va)
        xb = weighted_dot(points, x, vb)
        alpha = (bb * xa - ab * xb) / det
        beta = (aa * xb - ab * xa) / det
        images.append(tuple(2 * (alpha * ca + beta * cb) - cx for ca, cb, cx in zip(va, vb, x)))
    return tuple(images)


def reflection_falsifier_3d(points: PointSet, g: PermGroup = None,
                            ldm: LabeledDistanceMatrix = None) -> Optional[Tuple[int, int, int, int]]:
    """Quadruple (A, B, C, D) refuting 3-point homogeneity in R³.

    A 3-point homogeneous space must map C to D by an isometry fixing A and B
    whenever d(A,C) = d(A,D) and d(B,C) = d(B,D); in three dimensions with A,
    B and the center not collinear the only candidate is the reflection in
    the plane through the center, A and B.  The first quadruple for which that
    reflection is not a symmetry of the set, or does not send C to D, is
    returned.

    Raises:
        ParamError: affine rank is not 3.
    """
    if affine_rank(points) != 3:
        raise ParamError("The reflection falsifier needs a point set of affine rank 3", "points")
    if ldm is None:
        ldm = label_exact(squared_distances(points), name=points.name)
    if g is not None and not g.is_transitive():
        logger.debug(f"Reflection falsifier on non-homogeneous {points.name or 'point set'}")

    vectors = centered_vectors(points)
    lookup: Dict[Tuple, int] = {v: i for i, v in enumerate(vectors)}
    labels = ldm.labels
    checked = 0
    for a, b in itertools.combinations(range(points.k), 2):
        images = _reflection_images(points, vectors, a, b)
        if images is None:
            continue
        mapped = [lookup.get(image) for image in images]
        symmetric = None not in mapped
        for c, d in itertools.permutations(range(points.k), 2):
            if c in (a, b) or d in (a, b):
                continue
            if labels[a][c] != labels[a][d] or labels[b][c] != labels[b][d]:
                continue
            checked += 1
            if not symmetric or mapped[c] != d:
                logger.debug(f"Reflection falsifier: ({a}, {b}, {c}, {d}) after {checked} candidates")
                return a, b, c, d
    logger.debug(f"Reflection falsifier found nothing among {checked} candidates")
    return None
