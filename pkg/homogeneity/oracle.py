"""
Brute-force references for small instances.  Used to validate the group and
homogeneity engines; hard caps keep them from being used as the real thing.
"""

import itertools
import logging
from typing import Dict, List, Tuple

from config import ORACLE_MAX_M, ORACLE_MAX_POINTS
from groups.permgroup import Perm
from metric.distmat import LabeledDistanceMatrix
from utils.errors import ParamError, PolyhomError

logger = logging.getLogger(__name__)


class CapExceeded(PolyhomError):
    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"Oracle cap exceeded: {what}={value} > {cap}")
        self.what = what
        self.value = value
        self.cap = cap


def brute_automorphisms(ldm: LabeledDistanceMatrix) -> List[Perm]:
    """Every label-preserving bijection, by depth-first assignment."""
    k = ldm.k
    if k > ORACLE_MAX_POINTS:
        raise CapExceeded("k", k, ORACLE_MAX_POINTS)
    labels = ldm.labels
    profiles = [tuple(sorted(row)) for row in labels]
    found: List[Perm] = []
    images = [-1] * k
    used = [False] * k

    def assign(point: int) -> None:
        if point == k:
            found.append(tuple(images))
            return
        for image in range(k):
            if used[image] or profiles[image] != profiles[point]:
                continue
            if any(labels[point][q] != labels[image][images[q]] for q in range(point)):
                continue
            images[point] = image
            used[image] = True
            assign(point + 1)
            used[image] = False
        images[point] = -1

    assign(0)
    logger.debug(f"Brute force found {len(found)} automorphisms of {ldm.name or 'matrix'}")
    return found


def brute_m_homog(ldm: LabeledDistanceMatrix, m: int) -> bool:
    """m-point homogeneity over all m-tuples, repeated points included."""
    if m < 1:
        raise ParamError(f"m must be at least 1, got {m}", "m")
    if m > ORACLE_MAX_M:
        raise CapExceeded("m", m, ORACLE_MAX_M)
    maps = brute_automorphisms(ldm)

    classes: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for t in itertools.product(range(ldm.k), repeat=m):
        classes.setdefault(ldm.profile(t), []).append(t)

    for members in classes.values():
        first = members[0]
        orbit = {tuple(g[x] for x in first) for g in maps}
        if len(orbit) != len(members):
            return False
    return True
