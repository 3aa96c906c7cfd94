"""
Permutation groups on {0, …, k−1} through a base and strong generating set.

Permutations are tuples of images.  Products compose left to right:
``mult(p, q)`` applies ``p`` first, then ``q``.
"""

import logging
import math
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from utils.errors import ParamError, PolyhomError
from utils.logger import log_search_stats

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]
Transversal = Dict[int, Perm]


class NotInOrbit(PolyhomError, ValueError):
    """No group element maps one tuple onto another."""

    def __init__(self, source: Sequence[int], target: Sequence[int]):
        super().__init__(f"{tuple(target)} is not in the orbit of {tuple(source)}")
        self.source = tuple(source)
        self.target = tuple(target)


def identity(k: int) -> Perm:
    return tuple(range(k))


def mult(p: Perm, q: Perm) -> Perm:
    """p then q."""
    return tuple(q[x] for x in p)


def inverse(p: Perm) -> Perm:
    result = [0] * len(p)
    for i, x in enumerate(p):
        result[x] = i
    return tuple(result)


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def validate_perm(images: Sequence[int], k: int) -> Perm:
    perm = tuple(int(x) for x in images)
    if len(perm) != k or sorted(perm) != list(range(k)):
        raise ParamError(f"{list(images)} is not a permutation of 0..{k - 1}", "perm")
    return perm


def perm_from_cycles(cycles: Iterable[Sequence[int]], k: int) -> Perm:
    images = list(range(k))
    for cycle in cycles:
        cycle = list(cycle)
        for index, point in enumerate(cycle):
            images[point] = cycle[(index + 1) % len(cycle)]
    return validate_perm(images, k)


def cycle_notation(p: Perm) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        point = p[start]
        while point != start:
            cycle.append(point)
            seen.add(point)
            point = p[point]
        parts.append("(" + " ".join(str(x) for x in cycle) + ")")
    return "".join(parts) or "()"


def _first_moved(p: Perm) -> Optional[int]:
    return next((i for i, x in enumerate(p) if i != x), None)


def _orbit_transversal(point: int, generators: Sequence[Perm], k: int) -> Transversal:
    """Orbit of ``point`` with, for each orbit point y, an element u with u[point] = y."""
    transversal = {point: identity(k)}
    queue = deque([point])
    while queue:
        current = queue.popleft()
        rep = transversal[current]
        for s in generators:
            image = s[current]
            if image not in transversal:
                transversal[image] = mult(rep, s)
                queue.append(image)
    return transversal


class PermGroup:
    """Stabilizer chain of a permutation group.

    ``strong[l]`` generates the pointwise stabilizer of ``base[:l]`` and
    ``transversals[l]`` is the orbit of ``base[l]`` under it.  The chain is
    built deterministically and never changes afterwards.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (),
                 base_prefix: Sequence[int] = ()):
        self.degree = degree
        gens: List[Perm] = []
        for g in generators:
            perm = validate_perm(g, degree)
            if not is_identity(perm) and perm not in gens:
                gens.append(perm)
        self.generators: Tuple[Perm, ...] = tuple(gens)

        prefix: List[int] = []
        for point in base_prefix:
            if not 0 <= point < degree:
                raise ParamError(f"Base point {point} outside 0..{degree - 1}", "base")
            if point not in prefix:
                prefix.append(point)

        self.base: List[int] = []
        self.strong: List[List[Perm]] = []
        self.transversals: List[Transversal] = []
        self._sifts = 0
        self._schreier_sims(prefix)

    @classmethod
    def _from_chain(cls, degree: int, base: List[int], strong: List[List[Perm]],
                    transversals: List[Transversal]) -> "PermGroup":
        group = cls.__new__(cls)
        group.degree = degree
        group.generators = tuple(strong[0]) if strong else ()
        group.base = list(base)
        group.strong = [list(level) for level in strong]
        group.transversals = list(transversals)
        group._sifts = 0
        return group

    # -- construction -------------------------------------------------------

    def _strip(self, g: Perm, start: int) -> Tuple[Perm, int]:
        """Sift ``g`` through levels ``start..``; returns the residue and the
        level where sifting stopped (``len(base)`` when it went through)."""
        self._sifts += 1
        for level in range(start, len(self.base)):
            image = g[self.base[level]]
            rep = self.transversals[level].get(image)
            if rep is None:
                return g, level
            g = mult(g, inverse(rep))
        return g, len(self.base)

    def _extend_base(self, g: Perm) -> None:
        self.base.append(_first_moved(g))
        self.strong.append([])
        self.transversals.append({})

    def _schreier_sims(self, prefix: List[int]) -> None:
        k = self.degree
        self.base = list(prefix)
        for g in self.generators:
            if all(g[b] == b for b in self.base):
                self.base.append(_first_moved(g))

        self.strong = [
            [g for g in self.generators if all(g[b] == b for b in self.base[:level])]
            for level in range(len(self.base))
        ]
        self.transversals = [
            _orbit_transversal(self.base[level], self.strong[level], k)
            for level in range(len(self.base))
        ]

        level = len(self.base) - 1
        while level >= 0:
            added = self._check_level(level)
            level = added if added is not None else level - 1

        log_search_stats("schreier_sims", degree=k, base_length=len(self.base),
                         sifts=self._sifts, strong_generators=len(set(self.strong[0])) if self.strong else 0)

    def _check_level(self, level: int) -> Optional[int]:
        """Sift every Schreier generator of ``level``; on the first failure add
        the residue as a strong generator and return the deepest level touched."""
        k = self.degree
        transversal = self.transversals[level]
        for point in list(transversal):
            rep = transversal[point]
            for s in list(self.strong[level]):
                schreier = mult(mult(rep, s), inverse(transversal[s[point]]))
                if is_identity(schreier):
                    continue
                residue, stop = self._strip(schreier, level + 1)
                if stop == len(self.base) and is_identity(residue):
                    continue
                if stop == len(self.base):
                    self._extend_base(residue)
                for deeper in range(level + 1, stop + 1):
                    self.strong[deeper].append(residue)
                    self.transversals[deeper] = _orbit_transversal(
                        self.base[deeper], self.strong[deeper], k)
                return stop
        return None

    # -- queries ------------------------------------------------------------

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    @property
    def transversal_sizes(self) -> Tuple[int, ...]:
        return tuple(len(t) for t in self.transversals)

    def contains(self, g: Sequence[int]) -> bool:
        if len(g) != self.degree:
            return False
        residue, stop = self._strip(tuple(g), 0)
        return stop == len(self.base) and is_identity(residue)

    __contains__ = contains

    def orbit(self, point: int) -> Set[int]:
        if not self.generators:
            return {point}
        return set(_orbit_transversal(point, self.generators, self.degree))

    def orbits(self) -> List[Tuple[int, ...]]:
        """Orbit partition, each orbit sorted, orbits ordered by their minimum."""
        seen: Set[int] = set()
        result = []
        for point in range(self.degree):
            if point in seen:
                continue
            orbit = self.orbit(point)
            seen |= orbit
            result.append(tuple(sorted(orbit)))
        return result

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit(0)) == self.degree

    def orbit_of_tuple(self, t: Sequence[int]) -> Set[Tuple[int, ...]]:
        start = self._check_tuple(t)
        seen = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for s in self.generators:
                image = tuple(s[x] for x in current)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        return seen

    def mapping(self, source: Sequence[int], target: Sequence[int]) -> Perm:
        """An element g with g[source[i]] = target[i] for all i.

        Raises:
            NotInOrbit: ``target`` is not in the orbit of ``source``.
        """
        source = self._check_tuple(source)
        target = tuple(target)
        if len(source) != len(target):
            raise NotInOrbit(source, target)
        found = {source: identity(self.degree)}
        queue = deque([source])
        while queue:
            current = queue.popleft()
            if current == target:
                return found[current]
            for s in self.generators:
                image = tuple(s[x] for x in current)
                if image not in found:
                    found[image] = mult(found[current], s)
                    queue.append(image)
        raise NotInOrbit(source, target)

    def min_image(self, t: Sequence[int]) -> Tuple[int, ...]:
        """Lexicographically smallest tuple in the orbit of ``t``.

        Greedy per coordinate: the smallest reachable point is fixed, then the
        search continues in its stabilizer.
        """
        current = list(self._check_tuple(t))
        group = self
        result = []
        for index in range(len(current)):
            if group.generators:
                transversal = _orbit_transversal(current[index], group.generators, self.degree)
            else:
                transversal = {current[index]: identity(self.degree)}
            target = min(transversal)
            u = transversal[target]
            current = [u[x] for x in current]
            result.append(target)
            group = group.stabilizer(target)
        return tuple(result)

    def tuple_stabilizer(self, t: Sequence[int]) -> "PermGroup":
        """Pointwise stabilizer of the entries of ``t``."""
        points = []
        for x in self._check_tuple(t):
            if x not in points:
                points.append(x)
        depth = len(points)
        if depth == 0:
            return self
        chain = self
        if self.base[:depth] != points:
            chain = PermGroup(self.degree, self.generators, base_prefix=points)
        if depth >= len(chain.base):
            return PermGroup(self.degree)
        return PermGroup._from_chain(
            self.degree,
            chain.base[depth:],
            chain.strong[depth:],
            chain.transversals[depth:],
        )

    def stabilizer(self, point: int) -> "PermGroup":
        return self.tuple_stabilizer((point,))

    def elements(self) -> Iterator[Perm]:
        """All elements (only sensible for small groups)."""
        def expand(level: int) -> Iterator[Perm]:
            if level == len(self.transversals):
                yield identity(self.degree)
                return
            for tail in expand(level + 1):
                for rep in self.transversals[level].values():
                    yield mult(tail, rep)
        return expand(0)

    def _check_tuple(self, t: Sequence[int]) -> Tuple[int, ...]:
        t = tuple(int(x) for x in t)
        for x in t:
            if not 0 <= x < self.degree:
                raise ParamError(f"Point {x} outside 0..{self.degree - 1}", "tuple")
        return t

    def to_dict(self) -> Dict[str, object]:
        return {
            "degree": self.degree,
            "order": str(self.order),
            "base": list(self.base),
            "transversal_sizes": list(self.transversal_sizes),
            "generators": [list(g) for g in self.generators],
        }

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, base={self.base})"


def bsgs_from_generators(gens: Iterable[Sequence[int]], k: int) -> PermGroup:
    group = PermGroup(k, gens)
    logger.debug(f"BSGS on {k} points: order {group.order}, base {group.base}")
    return group


def orbit_of_tuple(g: PermGroup, t: Sequence[int]) -> Set[Tuple[int, ...]]:
    return g.orbit_of_tuple(t)


def tuple_stabilizer(g: PermGroup, t: Sequence[int]) -> PermGroup:
    return g.tuple_stabilizer(t)
