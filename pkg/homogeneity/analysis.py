"""
Point homogeneity degree: the largest m for which the space is m-point
homogeneous, with a certified reason whenever the answer is infinite.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from config import CERTIFY_MAX_POINTS
from groups.permgroup import PermGroup
from homogeneity.criteria import distinct_distance_shortcut, three_distance_accelerator
from homogeneity.levels import (
    DISTINCT_DISTANCE, THREE_DISTANCE, TRANSITIVITY,
    ConsistencyError, LevelChecker, NeedsDimension, Verdict,
)
from metric.distmat import LabeledDistanceMatrix, antipodal_matching
from metric.geometry import PointSet, centered_vectors, matrix_rank

logger = logging.getLogger(__name__)

FAILED_AT_M = "failed_at_m"
REACHED_AFFINE_RANK = "reached_affine_rank"
REACHED_K = "reached_k"
DISTINCT_DISTANCE_SHORTCUT = "distinct_distance_shortcut"
MAX_M_CAP = "max_m_cap"


@dataclass(frozen=True)
class Degree:
    """Finite q, infinite, or at least q (search stopped by a cap)."""

    kind: str
    value: Optional[int] = None

    @classmethod
    def finite(cls, q: int) -> "Degree":
        return cls("finite", q)

    @classmethod
    def infinite(cls) -> "Degree":
        return cls("infinite")

    @classmethod
    def at_least(cls, q: int) -> "Degree":
        return cls("at_least", q)

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    def satisfies(self, expected: str) -> bool:
        """Compare with an expected-degree text: ``inf``, ``q`` or ``>=q``."""
        expected = expected.strip()
        if expected.startswith(">="):
            bound = int(expected[2:])
            return self.is_infinite or (self.value is not None and self.value >= bound)
        if expected == "inf":
            return self.is_infinite
        return self.kind == "finite" and self.value == int(expected)

    def __str__(self):
        if self.kind == "infinite":
            return "inf"
        if self.kind == "at_least":
            return f">={self.value}"
        return str(self.value)


@dataclass
class DegreeReport:
    degree: Degree
    verdicts: List[Verdict]
    termination: str
    n: int
    group_order: int
    timings: Dict[str, float] = field(default_factory=dict)
    certificate: Optional[Verdict] = None
    folded: int = 0

    def verdict(self, m: int) -> Optional[Verdict]:
        return next((v for v in self.verdicts if v.m == m), None)

    @property
    def witness(self):
        failing = next((v for v in self.verdicts if not v.holds), None)
        return failing.witness if failing else None

    def to_dict(self) -> Dict[str, object]:
        data = {
            "degree": str(self.degree),
            "termination": self.termination,
            "n": self.n,
            "group_order": str(self.group_order),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "wall_times": {key: round(value, 6) for key, value in self.timings.items()},
        }
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_dict()
        return data


def point_rank_probe(points: PointSet, n: int) -> Callable[[Tuple[int, ...]], bool]:
    """``T -> True`` when the vectors of T from the barycenter have rank n."""
    vectors = centered_vectors(points)

    def probe(t: Tuple[int, ...]) -> bool:
        return len(t) >= n and matrix_rank([vectors[i] for i in t]) == n

    return probe


def _level_verdicts(checker: LevelChecker, limit: int) -> List[Verdict]:
    verdicts = []
    for m in range(2, limit + 1):
        verdict = checker.run(m)
        verdicts.append(verdict)
        if not verdict.holds:
            break
    return verdicts


def _compare_paths(name: str, fast: List[Verdict], slow: List[Verdict], label: str) -> None:
    if [v.holds for v in fast] != [v.holds for v in slow]:
        raise ConsistencyError(f"{label} disagrees with the level check on {name}")


def homogeneity_degree(ldm: LabeledDistanceMatrix, g: PermGroup, n: int = None,
                       max_m: int = None, points: PointSet = None, accelerators: bool = True,
                       cross_check: bool = False, antipodal_folding: bool = False,
                       certify: bool = None, threads: int = 1) -> DegreeReport:
    """Largest m with m-point homogeneity.

    Tests m = 2, 3, … up to min(n, k − 1); homogeneity at that cap makes the
    degree infinite.  With ``cross_check`` every shortcut is also verified
    against the plain level check, and ``certify`` (default: follows
    ``cross_check``) re-runs one level past the rank on small instances.

    Raises:
        NeedsDimension: no ``n`` and no dimension hint on ``ldm``.
        ConsistencyError: cross-checks disagree.
    """
    started = time.time()
    name = ldm.name or "matrix"
    if n is None:
        n = ldm.dimension_hint
    if n is None:
        raise NeedsDimension(f"{name} has no dimension; pass --dimension")
    if certify is None:
        certify = cross_check
    k = ldm.k
    timings: Dict[str, float] = {}

    def report(degree: Degree, verdicts: List[Verdict], termination: str, **extra) -> DegreeReport:
        timings["degree"] = time.time() - started
        logger.info(f"Degree of {name}: {degree} ({termination})")
        return DegreeReport(degree=degree, verdicts=verdicts, termination=termination, n=n,
                            group_order=g.order, timings=timings, **extra)

    if not g.is_transitive():
        orbit = g.orbit(0)
        other = min(p for p in range(k) if p not in orbit)
        verdict = Verdict(1, False, ((0,), (other,)), TRANSITIVITY)
        return report(Degree.finite(0), [verdict], FAILED_AT_M)

    verdicts = [Verdict(1, True, method=TRANSITIVITY)]
    cap = min(n, k - 1)
    limit = cap if max_m is None else min(cap, max_m)
    antipode = antipodal_matching(ldm) if antipodal_folding else None
    if antipodal_folding and antipode is None:
        logger.warning(f"Antipodal folding requested but {name} has no antipodal matching")
    probe = point_rank_probe(points, n) if points is not None and cross_check else None

    def level_checker(folding: bool = True) -> LevelChecker:
        return LevelChecker(ldm, g, threads=threads, antipode=antipode if folding else None,
                            rank_probe=probe)

    def final(limit_verdicts: List[Verdict]) -> Tuple[Degree, str]:
        failing = next((v for v in limit_verdicts if not v.holds), None)
        if failing is not None:
            return Degree.finite(failing.m - 1), FAILED_AT_M
        if limit < cap:
            return Degree.at_least(max(limit, 1)), MAX_M_CAP
        return Degree.infinite(), REACHED_AFFINE_RANK if cap == n else REACHED_K

    if accelerators:
        shortcut_started = time.time()
        fired = distinct_distance_shortcut(ldm, g)
        timings["distinct_distance"] = time.time() - shortcut_started
        if fired:
            if cross_check:
                long_path = _level_verdicts(level_checker(False), cap)
                if not all(v.holds for v in long_path):
                    raise ConsistencyError(f"Distinct-distance shortcut disagrees with the level check on {name}")
            logger.debug(f"Distinct-distance shortcut fired on {name}")
            return report(Degree.infinite(), verdicts + [Verdict(k, True, method=DISTINCT_DISTANCE)],
                          DISTINCT_DISTANCE_SHORTCUT)

    accelerated: Optional[List[Verdict]] = None
    if accelerators and limit >= 2:
        accelerator_started = time.time()
        outcome = three_distance_accelerator(ldm, g, limit, points=points, threads=threads)
        timings["three_distance"] = time.time() - accelerator_started
        if outcome:
            accelerated = [Verdict(m, True, method=THREE_DISTANCE) for m in range(2, limit + 1)]

    checker = None
    if accelerated is not None and not cross_check:
        level_verdicts = accelerated
    else:
        levels_started = time.time()
        checker = level_checker()
        level_verdicts = _level_verdicts(checker, limit)
        timings["levels"] = time.time() - levels_started
        if accelerated is not None:
            _compare_paths(name, accelerated, level_verdicts, "Three-distance rule")
            level_verdicts = accelerated
        if antipode is not None and cross_check:
            _compare_paths(name, level_verdicts, _level_verdicts(level_checker(False), limit),
                           "Antipodal folding")

    degree, termination = final(level_verdicts)
    certificate = None
    if certify and termination == REACHED_AFFINE_RANK and k <= CERTIFY_MAX_POINTS and n + 1 <= k:
        certify_started = time.time()
        if checker is None:
            checker = level_checker()
        certificate = checker.run(n + 1)
        timings["certificate"] = time.time() - certify_started
        if not certificate.holds:
            raise ConsistencyError(f"{name} is homogeneous at its rank but fails at m={n + 1}")

    return report(degree, verdicts + level_verdicts, termination, certificate=certificate,
                  folded=checker.folded if checker is not None else 0)
