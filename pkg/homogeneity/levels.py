"""
Level-by-level m-point homogeneity check.

Orbit representatives of injective j-tuples are kept together with their
pointwise stabilizers.  Extending a representative T by one point splits the
remaining points into extension classes (points with the same label vector to
T); the space is (j+1)-point homogeneous at T exactly when the stabilizer of T
is transitive on every class.  A class that splits yields the witness
(T + (x,), T + (y,)): two tuples with identical label profiles that no
isometry maps onto each other.  The reported witness is the
lexicographically smallest such pair at the first failing length.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from groups.permgroup import PermGroup
from metric.distmat import LabeledDistanceMatrix
from utils.errors import InputError, ParamError, PolyhomError
from utils.logger import log_search_stats

logger = logging.getLogger(__name__)

Witness = Tuple[Tuple[int, ...], Tuple[int, ...]]
Rep = Tuple[Tuple[int, ...], PermGroup]

EXTENSION_CLASSES = "extension_classes"
THREE_DISTANCE = "three_distance"
DISTINCT_DISTANCE = "distinct_distance"
TRANSITIVITY = "transitivity"


class NotHomogeneous(PolyhomError):
    """The isometry group is not transitive on the points."""


class NeedsDimension(InputError):
    """An abstract matrix was analyzed without a dimension."""


class ConsistencyError(PolyhomError):
    """Two independent computations disagree."""


@dataclass(frozen=True)
class Verdict:
    m: int
    holds: bool
    witness: Optional[Witness] = None
    method: str = EXTENSION_CLASSES

    def to_dict(self) -> Dict[str, object]:
        data = {"m": self.m, "holds": self.holds, "method": self.method}
        if self.witness is not None:
            data["witness"] = [list(self.witness[0]), list(self.witness[1])]
        return data


@dataclass(frozen=True)
class LevelOutcome:
    children: Tuple[Rep, ...]
    witness: Optional[Witness]
    folded: int = 0


class LevelChecker:
    """Advances one tuple length at a time.

    Args:
        ldm: labeled matrix.
        group: its full isometry group (or the group acting on ``universe``).
        universe: points tuples are drawn from; all points by default.
        prefix: points fixed in front of every tuple; classes are still taken
            relative to the whole tuple, prefix included.
        threads: worker threads per level; results do not depend on it.
        antipode: unique-farthest-point matching; when given, a class whose
            image under it was already checked reuses that check.
        rank_probe: ``T -> bool``, true when T determines every point by its
            labels; such a T must only see singleton classes.
    """

    def __init__(self, ldm: LabeledDistanceMatrix, group: PermGroup,
                 universe: Sequence[int] = None, prefix: Sequence[int] = (),
                 threads: int = 1, antipode: Sequence[int] = None,
                 rank_probe: Callable[[Tuple[int, ...]], bool] = None):
        self.ldm = ldm
        self.universe = tuple(sorted(universe)) if universe is not None else tuple(range(ldm.k))
        self.prefix = tuple(prefix)
        start = group.tuple_stabilizer(self.prefix) if self.prefix else group
        self.start = start
        self.reps: List[Rep] = [(self.prefix, start)]
        self.threads = max(1, int(threads))
        self.antipode = tuple(antipode) if antipode is not None else None
        self.rank_probe = rank_probe
        self.length = 0
        self.failure: Optional[Verdict] = None
        self.folded = 0

    def extension_classes(self, t: Tuple[int, ...]) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Points of the universe outside ``t`` grouped by label vector to
        ``t``, classes sorted by vector, members sorted."""
        labels = self.ldm.labels
        used = set(t)
        classes: Dict[Tuple[int, ...], List[int]] = {}
        for point in self.universe:
            if point in used:
                continue
            classes.setdefault(tuple(labels[x][point] for x in t), []).append(point)
        return [(vector, tuple(classes[vector])) for vector in sorted(classes)]

    def extend(self, rep: Rep) -> LevelOutcome:
        t, stabilizer = rep
        classes = self.extension_classes(t)
        if self.rank_probe is not None and any(len(members) > 1 for _, members in classes):
            if self.rank_probe(t):
                raise ConsistencyError(
                    f"Tuple {t} spans the space but leaves a non-singleton extension class")

        children: List[Rep] = []
        checked: Dict[FrozenSet[int], Tuple[int, PermGroup]] = {}
        folded = 0
        for _, members in classes:
            if self.antipode is not None:
                mirror = frozenset(self.antipode[p] for p in members)
                earlier = checked.get(mirror)
                if earlier is not None and mirror != frozenset(members):
                    point, point_stabilizer = earlier
                    children.append((t + (self.antipode[point],), point_stabilizer))
                    folded += 1
                    continue

            point = members[0]
            orbit = stabilizer.orbit(point)
            if len(members) > 1 and not orbit.issuperset(members):
                other = next(p for p in members if p not in orbit)
                return LevelOutcome(tuple(children), (t + (point,), t + (other,)), folded)
            point_stabilizer = stabilizer.stabilizer(point)
            children.append((t + (point,), point_stabilizer))
            if self.antipode is not None:
                checked[frozenset(members)] = (point, point_stabilizer)
        return LevelOutcome(tuple(children), None, folded)

    def smallest_witness(self, failing: Sequence[Rep]) -> Witness:
        """Lexicographically smallest witness pair among the failing orbits.

        Splitting is invariant along an orbit, so the smallest first tuple
        starts with the smallest orbit image of a failing representative,
        followed by the smallest point of a split class.  Its partner shares
        the same prefix and ends in the smallest point of that class outside
        the stabilizer orbit.
        """
        size = len(self.prefix)
        t = min(self.prefix + self.start.min_image(rep_tuple[size:]) for rep_tuple, _ in failing)
        stabilizer = self.start.tuple_stabilizer(t)
        best = None
        for _, members in self.extension_classes(t):
            if len(members) < 2:
                continue
            orbit = stabilizer.orbit(members[0])
            other = next((p for p in members if p not in orbit), None)
            if other is None:
                continue
            candidate = (t + (members[0],), t + (other,))
            if best is None or candidate < best:
                best = candidate
        if best is None:
            raise ConsistencyError(f"Orbit image {t} of a failing representative has no split class")
        return best

    def advance(self) -> Verdict:
        """Check tuples one point longer than the current representatives."""
        m = self.length + 1
        if self.failure is not None:
            return Verdict(m, False, self.failure.witness, self.failure.method)

        if self.threads > 1 and len(self.reps) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                outcomes = list(pool.map(self.extend, self.reps))
        else:
            outcomes = [self.extend(rep) for rep in self.reps]

        children: List[Rep] = []
        failing = []
        for rep, outcome in zip(self.reps, outcomes):
            self.folded += outcome.folded
            if outcome.witness is not None:
                failing.append(rep)
            children.extend(outcome.children)

        log_search_stats("level", m=m, representatives=len(self.reps),
                         children=len(children), folded=self.folded, failing=len(failing))
        self.length = m
        if failing:
            self.failure = Verdict(m, False, self.smallest_witness(failing))
            return self.failure
        self.reps = children
        return Verdict(m, True)

    def run(self, m: int) -> Verdict:
        """Verdict for tuple length ``m``; stops at the first failing length,
        so a witness may be shorter than ``m``."""
        while self.length < m and self.failure is None:
            self.advance()
        if self.failure is not None and self.failure.m <= m:
            return Verdict(m, False, self.failure.witness, self.failure.method)
        return Verdict(m, True)


def is_m_point_homogeneous(ldm: LabeledDistanceMatrix, g: PermGroup, m: int,
                           threads: int = 1, antipode: Sequence[int] = None,
                           rank_probe: Callable = None) -> Verdict:
    """Whether every label-preserving correspondence of m-tuples extends to an
    isometry.

    Raises:
        ParamError: ``m < 1``.
    """
    if m < 1:
        raise ParamError(f"m must be at least 1, got {m}", "m")
    checker = LevelChecker(ldm, g, threads=threads, antipode=antipode, rank_probe=rank_probe)
    return checker.run(m)


@dataclass(frozen=True)
class WitnessCheck:
    profiles_equal: bool
    equivalent: bool

    @property
    def is_witness(self) -> bool:
        return self.profiles_equal and not self.equivalent


def check_witness(ldm: LabeledDistanceMatrix, g: PermGroup,
                  first: Sequence[int], second: Sequence[int]) -> WitnessCheck:
    """Compare label profiles and decide orbit equivalence of two tuples."""
    first, second = tuple(first), tuple(second)
    if len(first) != len(second):
        raise ParamError("Witness tuples must have the same length", "witness")
    for point in first + second:
        if not 0 <= point < ldm.k:
            raise ParamError(f"Point {point} outside 0..{ldm.k - 1}", "witness")
    profiles_equal = ldm.profile(first) == ldm.profile(second)
    equivalent = profiles_equal and second in g.orbit_of_tuple(first)
    return WitnessCheck(profiles_equal=profiles_equal, equivalent=equivalent)
