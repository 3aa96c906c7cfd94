"""
Automorphism group of a labeled distance matrix by individualization and
refinement.

The first path through the search tree is the anchor: its leaf fixes a point
order, and every other leaf with the same refinement trace yields a candidate
permutation that is kept when it preserves all labels.  Levels are processed
from the deepest up, skipping branches already in the orbit of the anchor
point under the generators found so far, so the generators found at a level
generate the stabilizer of the anchor points above it.
"""

import logging
import time
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from groups.permgroup import Perm, PermGroup, bsgs_from_generators
from metric.distmat import LabeledDistanceMatrix
from utils.logger import log_search_stats

logger = logging.getLogger(__name__)

Cells = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class RefinementState:
    """Equitable ordered partition and the trace that produced it."""

    cells: Cells
    trace: Tuple

    @property
    def discrete(self) -> bool:
        return all(len(cell) == 1 for cell in self.cells)

    def target_cell(self) -> int:
        """Index of the first smallest non-singleton cell."""
        best = None
        for index, cell in enumerate(self.cells):
            if len(cell) > 1 and (best is None or len(cell) < len(self.cells[best])):
                best = index
        return best


class AutomorphismSearch:
    def __init__(self, ldm: LabeledDistanceMatrix):
        self.ldm = ldm
        self.k = ldm.k
        self.labels = ldm.array.astype(np.int64)
        self.stride = ldm.num_labels + 1
        self.nodes = 0
        self.leaves = 0
        self.pruned = 0

    def refine(self, cells: Sequence[Tuple[int, ...]]) -> RefinementState:
        """Split cells by the multiset of (cell, label) pairs seen from each
        point until no cell splits."""
        self.nodes += 1
        cells = list(cells)
        trace = []
        cell_of = np.empty(self.k, dtype=np.int64)
        while True:
            for index, cell in enumerate(cells):
                cell_of[list(cell)] = index
            signatures = np.sort(cell_of[None, :] * self.stride + self.labels, axis=1)

            refined = []
            for position, cell in enumerate(cells):
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                fragments = {}
                for point in cell:
                    fragments.setdefault(signatures[point].tobytes(), []).append(point)
                if len(fragments) == 1:
                    refined.append(cell)
                    continue
                keys = sorted(fragments)
                refined.extend(tuple(fragments[key]) for key in keys)
                trace.append((position, tuple(len(fragments[key]) for key in keys), hash(b"".join(keys))))

            if len(refined) == len(cells):
                break
            cells = refined

        trace.append(tuple(len(cell) for cell in cells))
        return RefinementState(cells=tuple(cells), trace=tuple(trace))

    def individualize(self, state: RefinementState, index: int, point: int) -> RefinementState:
        cell = state.cells[index]
        rest = tuple(p for p in cell if p != point)
        cells = state.cells[:index] + ((point,), rest) + state.cells[index + 1:]
        return self.refine(cells)

    def _as_automorphism(self, leaf: RefinementState) -> Optional[Perm]:
        self.leaves += 1
        gamma = np.empty(self.k, dtype=np.int64)
        for anchor, image in zip(self.anchor, leaf.cells):
            gamma[anchor[0]] = image[0]
        if np.array_equal(self.labels[np.ix_(gamma, gamma)], self.labels):
            return tuple(int(x) for x in gamma)
        return None

    def _search(self, state: RefinementState, depth: int) -> Optional[Perm]:
        """First automorphism among leaves below ``state`` (which matches the
        anchor path at ``depth``)."""
        if state.discrete:
            return self._as_automorphism(state)
        index = state.target_cell()
        for point in state.cells[index]:
            child = self.individualize(state, index, point)
            if child.trace != self.path[depth + 1].trace:
                self.pruned += 1
                continue
            found = self._search(child, depth + 1)
            if found is not None:
                return found
        return None

    def run(self) -> List[Perm]:
        started = time.time()
        state = self.refine([tuple(range(self.k))])
        self.path = [state]
        choices = []
        while not state.discrete:
            index = state.target_cell()
            choices.append(index)
            state = self.individualize(state, index, state.cells[index][0])
            self.path.append(state)
        self.anchor = state.cells

        generators: List[Perm] = []
        for depth in range(len(choices) - 1, -1, -1):
            node = self.path[depth]
            index = choices[depth]
            anchor_point = node.cells[index][0]
            orbit = _orbit(anchor_point, generators)
            for candidate in node.cells[index][1:]:
                if candidate in orbit:
                    continue
                child = self.individualize(node, index, candidate)
                if child.trace != self.path[depth + 1].trace:
                    self.pruned += 1
                    continue
                found = self._search(child, depth + 1)
                if found is not None:
                    generators.append(found)
                    orbit = _orbit(anchor_point, generators)

        log_search_stats(
            "automorphisms",
            points=self.k,
            depth=len(choices),
            nodes=self.nodes,
            leaves=self.leaves,
            pruned=self.pruned,
            generators=len(generators),
        )
        logger.debug(f"Automorphism search on {self.ldm.name or 'matrix'} took {time.time() - started:.2f}s")
        return generators


def _orbit(point: int, generators: Sequence[Perm]) -> Set[int]:
    seen = {point}
    queue = deque([point])
    while queue:
        current = queue.popleft()
        for g in generators:
            image = g[current]
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def automorphisms(ldm: LabeledDistanceMatrix) -> List[Perm]:
    """Generators of the full label-preserving permutation group."""
    return AutomorphismSearch(ldm).run()


def automorphism_group(ldm: LabeledDistanceMatrix) -> PermGroup:
    group = bsgs_from_generators(automorphisms(ldm), ldm.k)
    logger.info(f"Isometry group of {ldm.name or 'matrix'}: order {group.order}")
    return group


def is_transitive(g: PermGroup) -> bool:
    return g.is_transitive()
