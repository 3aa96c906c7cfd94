"""
Catalog of point sets and abstract metrics.

Each family is registered with its parameter schema, a vertex-count formula
and the facts known about it.  Families with rational or golden-ratio
coordinates emit a :class:`PointSet`; families whose coordinates would need
trigonometric values (prisms, antiprisms, polygons) and the abstract six-point
octahedral metric emit a :class:`LabeledDistanceMatrix` directly.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Union

import mpmath

from config import EXPENSIVE_FAMILIES, HIGH_PRECISION_DIGITS
from metric.distmat import LabeledDistanceMatrix
from metric.geometry import PointSet, squared_distance
from metric.scalar import PHI, Scalar
from utils.errors import ParamError

logger = logging.getLogger(__name__)

Instance = Union[PointSet, LabeledDistanceMatrix]

INV_PHI = PHI - 1          # 1/φ
INV_PHI_SQ = 2 - PHI       # 1/φ²
PHI_SQ = PHI + 1           # φ²
SQRT5 = Scalar.sqrt(5)


@dataclass(frozen=True)
class ExpectedFacts:
    """Known values for an instance.

    ``degree`` is ``"inf"``, a decimal integer, or ``">=q"`` for a lower bound.
    ``verdicts`` lists m-point verdicts that are known without the full degree.
    ``search_cap`` bounds the table run for instances whose degree is open.
    """

    degree: Optional[str] = None
    group_order: Optional[int] = None
    min_group_order: Optional[int] = None
    shells: Optional[Tuple[int, ...]] = None
    distance_classes: Optional[int] = None
    verdicts: Tuple[Tuple[int, bool], ...] = ()
    search_cap: Optional[int] = None   # table runs stop here when the degree is open
    source: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data = {}
        for key in ("degree", "group_order", "min_group_order", "shells", "distance_classes"):
            value = getattr(self, key)
            if value is not None:
                data[key] = list(value) if isinstance(value, tuple) else value
        if self.verdicts:
            data["verdicts"] = {str(m): holds for m, holds in self.verdicts}
        if self.source:
            data["source"] = self.source
        return data


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str                      # "int" or "rational"
    default: Any = None
    constraint: str = ""

    def coerce(self, raw: Any):
        try:
            if self.kind == "int":
                value = Fraction(str(raw))
                if value.denominator != 1:
                    raise ValueError(f"{raw} is not an integer")
                return int(value)
            return Fraction(str(raw))
        except (ValueError, ZeroDivisionError) as e:
            raise ParamError(f"Parameter {self.name}: {e}", self.name)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    builder: Callable[..., Instance]
    params: Tuple[ParamSpec, ...] = ()
    vertex_count: str = ""
    description: str = ""
    expected: Optional[Callable[..., Optional[ExpectedFacts]]] = None
    expensive: bool = False

    @property
    def emits(self) -> str:
        return "matrix" if self.name in MATRIX_FAMILIES else "points"

    def schema(self) -> str:
        parts = []
        for spec in self.params:
            text = f"{spec.name}:{spec.kind}"
            if spec.default is not None:
                text += f"={spec.default}"
            parts.append(text)
        return ", ".join(parts)


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    params: Tuple[Tuple[str, Any], ...] = ()
    expected: Optional[ExpectedFacts] = None
    label: Optional[str] = None

    @property
    def param_dict(self) -> Dict[str, Any]:
        return dict(self.params)

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if not self.params:
            return self.family
        inner = ", ".join(f"{key}={value}" for key, value in self.params)
        return f"{self.family}({inner})"


# -- small combinatorial helpers -----------------------------------------------

def _sign_vectors(n: int) -> List[Tuple[int, ...]]:
    return list(itertools.product((1, -1), repeat=n))


def _cyclic_shifts(v: Sequence) -> List[Tuple]:
    return [tuple(v[(i + s) % len(v)] for i in range(len(v))) for s in range(len(v))]


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inversions % 2


def _signed_arrangements(values: Sequence, even_only: bool = False) -> List[Tuple]:
    """All sign changes of ``values`` combined with all (or only even)
    coordinate permutations, duplicates removed, first-seen order kept."""
    n = len(values)
    orders = [p for p in itertools.permutations(range(n)) if not even_only or _parity(p) == 0]
    seen: Dict[Tuple, None] = {}
    for signs in _sign_vectors(n):
        signed = [v if s > 0 else -v for v, s in zip(values, signs)]
        for order in orders:
            seen.setdefault(tuple(signed[i] for i in order), None)
    return list(seen)


def _unit(n: int, i: int, value=1) -> Tuple:
    return tuple(value if j == i else 0 for j in range(n))


def _require(condition: bool, message: str, parameter: str = None) -> None:
    if not condition:
        raise ParamError(message, parameter)


def _point_set(points, name: str, dimension: int, weights=None, **metadata) -> PointSet:
    return PointSet(points=points, column_weights=weights, name=name,
                    declared_dimension=dimension, metadata=metadata)


# -- PointSet families ------------------------------------------------------------

def simplex(n: int) -> PointSet:
    _require(n >= 1, "simplex needs n >= 1", "n")
    return _point_set([_unit(n + 1, i) for i in range(n + 1)], f"simplex({n})", n)


def cube(n: int) -> PointSet:
    _require(n >= 1, "cube needs n >= 1", "n")
    return _point_set(_sign_vectors(n), f"cube({n})", n)


def orthoplex(n: int) -> PointSet:
    _require(n >= 1, "orthoplex needs n >= 1", "n")
    points = []
    for i in range(n):
        points.append(_unit(n, i, 1))
        points.append(_unit(n, i, -1))
    return _point_set(points, f"orthoplex({n})", n)


def demihypercube(n: int) -> PointSet:
    _require(n >= 3, "demihypercube needs n >= 3 (smaller cases are not full-dimensional)", "n")
    points = [v for v in _sign_vectors(n) if v.count(-1) % 2 == 0]
    return _point_set(points, f"demihypercube({n})", n)


def truncated_simplex(n: int) -> PointSet:
    """Midpoints of the edges of the n-simplex: vectors with two ones in R^{n+1}."""
    _require(n >= 2, "truncated_simplex needs n >= 2", "n")
    points = [
        tuple(1 if c in pair else 0 for c in range(n + 1))
        for pair in itertools.combinations(range(n + 1), 2)
    ]
    return _point_set(points, f"truncated_simplex({n})", n)


def doubled_simplex(n: int) -> PointSet:
    """Vertices ±v_i with v_i = (n+1)·e_i − (1,…,1) in R^{n+1}."""
    _require(n >= 2, "doubled_simplex needs n >= 2 (n = 1 collapses to a segment)", "n")
    base = [tuple(n if c == i else -1 for c in range(n + 1)) for i in range(n + 1)]
    points = base + [tuple(-x for x in v) for v in base]
    return _point_set(points, f"doubled_simplex({n})", n)


def tetrahedron() -> PointSet:
    points = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return _point_set(points, "tetrahedron", 3, equal_edge=True, regular=True)


def cube3() -> PointSet:
    ps = cube(3)
    return _point_set(ps.points, "cube3", 3, equal_edge=True, regular=True)


def octahedron() -> PointSet:
    ps = orthoplex(3)
    return _point_set(ps.points, "octahedron", 3, equal_edge=True, regular=True)


def icosahedron() -> PointSet:
    points = []
    for s1, s2 in itertools.product((1, -1), repeat=2):
        points.extend(_cyclic_shifts((Scalar(0), Scalar(s1), s2 * PHI)))
    return _point_set(points, "icosahedron", 3, equal_edge=True, regular=True)


def dodecahedron() -> PointSet:
    points = [tuple(Scalar(s) for s in v) for v in _sign_vectors(3)]
    for s1, s2 in itertools.product((1, -1), repeat=2):
        points.extend(_cyclic_shifts((Scalar(0), s1 * INV_PHI, s2 * PHI)))
    return _point_set(points, "dodecahedron", 3, equal_edge=True, regular=True)


def cuboctahedron() -> PointSet:
    points = []
    for zero in range(3):
        for s1, s2 in itertools.product((1, -1), repeat=2):
            signs = iter((s1, s2))
            points.append(tuple(0 if c == zero else next(signs) for c in range(3)))
    return _point_set(points, "cuboctahedron", 3, equal_edge=True)


def icosidodecahedron() -> PointSet:
    """Edge midpoints of the icosahedron."""
    ico = icosahedron()
    edge_sq = min(squared_distance(ico, 0, j) for j in range(1, ico.k))
    points = []
    for i, j in itertools.combinations(range(ico.k), 2):
        if squared_distance(ico, i, j) == edge_sq:
            points.append(tuple((x + y) / 2 for x, y in zip(ico.points[i], ico.points[j])))
    return _point_set(points, "icosidodecahedron", 3, equal_edge=True)


def goss6() -> PointSet:
    """27 points in R^6; columns 1-5 store multiples of √2/4 (weight 2),
    column 6 multiples of √6/12 (weight 6)."""
    a, b = Fraction(1, 4), Fraction(1, 12)
    points = [(0, 0, 0, 0, 0, 4 * b)]
    points.append((a, a, a, a, a, b))
    for minus in itertools.combinations(range(5), 2):
        points.append(tuple(-a if c in minus else a for c in range(5)) + (b,))
    for minus in itertools.combinations(range(5), 4):
        points.append(tuple(-a if c in minus else a for c in range(5)) + (b,))
    for sign in (1, -1):
        for i in range(5):
            points.append(_unit(5, i, sign * 2 * a) + (-2 * b,))
    return _point_set(points, "goss6", 6, weights=(2, 2, 2, 2, 2, 6))


def goss7() -> PointSet:
    """56 points in R^7; column 7 stores multiples of √3/6 (weight 3).

    Points 29..56 are the central images of points 28..1, so point i and
    point 57 - i (1-based) are antipodal.
    """
    a, b, c = Fraction(1, 4), Fraction(1, 12), Fraction(1, 6)
    first = [(0, 0, 0, 0, 0, 0, 3 * c), (0, 0, 0, 0, 0, 4 * b, c), (a, a, a, a, a, b, c)]
    for minus in itertools.combinations(range(5), 2):
        first.append(tuple(-a if i in minus else a for i in range(5)) + (b, c))
    for minus in itertools.combinations(range(5), 4):
        first.append(tuple(-a if i in minus else a for i in range(5)) + (b, c))
    for sign in (1, -1):
        for i in range(5):
            first.append(_unit(5, i, sign * 2 * a) + (-2 * b, c))
    points = first + [tuple(-x for x in v) for v in reversed(first)]
    return _point_set(points, "goss7", 7, weights=(2, 2, 2, 2, 2, 6, 3))


def rhombus(alpha: Fraction = Fraction(1, 2)) -> PointSet:
    _require(alpha > 0, "rhombus needs alpha > 0", "alpha")
    points = [(-1, 0), (1, 0), (0, alpha), (0, -alpha)]
    return _point_set(points, f"rhombus({alpha})", 2)


def rectangle(a: Fraction = Fraction(1), b: Fraction = Fraction(2)) -> PointSet:
    _require(a > 0 and b > 0, "rectangle needs positive side lengths", "a")
    points = [(0, 0), (a, 0), (a, b), (0, b)]
    return _point_set(points, f"rectangle({a},{b})", 2)


def simplex_3edge(a: Fraction = Fraction(3), b: Fraction = Fraction(4),
                  c: Fraction = Fraction(24, 5)) -> PointSet:
    """Tetrahedron whose opposite edges have equal lengths a, b, c.

    Stored as (±1, ±1, ±1) with an even number of minus signs; the column
    weights carry the squared half-extents of the enclosing box.
    """
    _require(0 < a < b < c, "simplex_3edge needs 0 < a < b < c", "a")
    _require(c * c < a * a + b * b, "simplex_3edge needs c^2 < a^2 + b^2", "c")
    weights = (
        (b * b + c * c - a * a) / 8,
        (a * a + c * c - b * b) / 8,
        (a * a + b * b - c * c) / 8,
    )
    points = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return _point_set(points, f"simplex_3edge({a},{b},{c})", 3, weights=weights)


def cell24() -> PointSet:
    points = _signed_arrangements((1, 1, 0, 0))
    return _point_set(points, "cell24", 4)


def cell600() -> PointSet:
    half = Fraction(1, 2)
    points: List[Tuple] = []
    points.extend(_signed_arrangements((half, half, half, half)))
    points.extend(_signed_arrangements((1, 0, 0, 0)))
    points.extend(_signed_arrangements((PHI / 2, Scalar(half), INV_PHI / 2, Scalar(0)), even_only=True))
    return _point_set(points, "cell600", 4)


def cell120() -> PointSet:
    groups = [
        _signed_arrangements((0, 0, 2, 2)),
        _signed_arrangements((Scalar(1), Scalar(1), Scalar(1), SQRT5)),
        _signed_arrangements((INV_PHI_SQ, PHI, PHI, PHI)),
        _signed_arrangements((INV_PHI, INV_PHI, INV_PHI, PHI_SQ)),
        _signed_arrangements((Scalar(0), INV_PHI_SQ, Scalar(1), PHI_SQ), even_only=True),
        _signed_arrangements((Scalar(0), INV_PHI, PHI, SQRT5), even_only=True),
        _signed_arrangements((INV_PHI, Scalar(1), PHI, Scalar(2)), even_only=True),
    ]
    seen: Dict[Tuple, None] = {}
    for points in groups:
        for point in points:
            seen.setdefault(tuple(Scalar.coerce(x) for x in point), None)
    return _point_set(list(seen), "cell120", 4)


# -- realization of the octahedral six-point metric ---------------------------------

def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def octsev_beta(alpha: Fraction) -> Optional[Fraction]:
    """Positive rational β with β(2+β)/(1+2β²) = α, or None."""
    alpha = Fraction(alpha)
    if alpha == Fraction(1, 2):
        return Fraction(1, 4)
    root = _rational_sqrt((1 - alpha) * (1 + 2 * alpha))
    if root is None:
        return None
    return (root - 1) / (1 - 2 * alpha)


def octsev_realization(alpha: Fraction = Fraction(1, 3)) -> Optional[PointSet]:
    """Six unit vectors A, B=−A, C, D=−C, E, F=−E realizing the octahedral metric.

    Rows of [[1,β,β],[β,1,β],[β,β,1]] scaled by 1/√(1+2β²), the scale carried as a
    uniform column weight.  Absent when β is irrational.
    """
    alpha = Fraction(alpha)
    _require(0 < alpha < 1, "octsev needs 0 < alpha < 1", "alpha")
    beta = octsev_beta(alpha)
    if beta is None:
        logger.warning(f"octsev({alpha}): no rational realization, skipping coordinates")
        return None
    weight = 1 / (1 + 2 * beta * beta)
    rows = [(1, beta, beta), (beta, 1, beta), (beta, beta, 1)]
    points = []
    for row in rows:
        points.append(row)
        points.append(tuple(-x for x in row))
    return _point_set(points, f"octsev_realization({alpha})", 3, weights=(weight,) * 3)


# -- LabeledDistanceMatrix families -------------------------------------------------

def _ldm_from_keys(k: int, key_of: Callable[[int, int], Hashable],
                   value_of: Callable[[Hashable], Any], name: str,
                   dimension: int, **metadata) -> LabeledDistanceMatrix:
    """Label pairs by combinatorial class keys.

    Keys are ordered by their high-precision value; keys whose values agree to
    within 10 digits of the working precision are merged into one class.
    """
    with mpmath.workdps(HIGH_PRECISION_DIGITS):
        keys = sorted({key_of(i, j) for i in range(k) for j in range(i + 1, k)}, key=str)
        values = {key: mpmath.mpf(value_of(key)) for key in keys}
        ordered = sorted(keys, key=lambda key: values[key])
        threshold = mpmath.mpf(10) ** (10 - HIGH_PRECISION_DIGITS) * max(values.values())

        label_of: Dict[Hashable, int] = {}
        class_values: List[float] = [0.0]
        previous = None
        for key in ordered:
            if previous is None or values[key] - values[previous] > threshold:
                class_values.append(float(values[key]))
            label_of[key] = len(class_values) - 1
            previous = key

    labels = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            labels[i][j] = labels[j][i] = label_of[key_of(i, j)]
    return LabeledDistanceMatrix(labels=labels, class_values=tuple(class_values), exact=False,
                                 name=name, dimension_hint=dimension, metadata=metadata)


def _chord_sq(angle_steps: int, n: int, half_steps: bool = False):
    """Squared chord between points on the circle through a unit-edge n-gon."""
    angle = mpmath.pi * angle_steps / (2 * n if half_steps else n)
    return mpmath.sin(angle) ** 2 / mpmath.sin(mpmath.pi / n) ** 2


def _base_diameter_sq(n: int) -> float:
    with mpmath.workdps(HIGH_PRECISION_DIGITS):
        return float(_chord_sq(n // 2, n))


def _default_lateral_sq(n: int) -> Fraction:
    return Fraction(math.floor(_base_diameter_sq(n)) + 1)


def n_gon(n: int = 5) -> LabeledDistanceMatrix:
    """Regular n-gon; the label of a pair is its step distance min(j, n − j)."""
    _require(n >= 3, "n_gon needs n >= 3", "n")
    labels = [[min((j - i) % n, (i - j) % n) for j in range(n)] for i in range(n)]
    with mpmath.workdps(HIGH_PRECISION_DIGITS):
        values = [0.0] + [float(4 * mpmath.sin(mpmath.pi * j / n) ** 2) for j in range(1, n // 2 + 1)]
    return LabeledDistanceMatrix(labels=labels, class_values=tuple(values), exact=False,
                                 name=f"n_gon({n})", dimension_hint=2)


def prism(n: int = 4, lateral_sq: Fraction = None) -> LabeledDistanceMatrix:
    """Right prism over a unit-edge regular n-gon with squared height ``lateral_sq``."""
    _require(n >= 3, "prism needs base n >= 3", "n")
    if lateral_sq is None:
        lateral_sq = _default_lateral_sq(n)
    lateral_sq = Fraction(lateral_sq)
    _require(lateral_sq > 0, "prism needs lateral_sq > 0", "lateral_sq")

    def key_of(i: int, j: int):
        step = (j - i) % n
        step = min(step, n - step)
        return ("ring", step) if (i < n) == (j < n) else ("cross", step)

    def value_of(key):
        kind, step = key
        chord = _chord_sq(step, n)
        if kind == "ring":
            return chord
        return mpmath.mpf(lateral_sq.numerator) / lateral_sq.denominator + chord

    return _ldm_from_keys(2 * n, key_of, value_of, f"prism({n},{lateral_sq})", 3,
                          equal_edge=(lateral_sq == 1))


def antiprism(n: int = 4, lateral_sq: Fraction = None) -> LabeledDistanceMatrix:
    """Antiprism over a unit-edge regular n-gon whose lateral edges have squared
    length ``lateral_sq``."""
    _require(n >= 3, "antiprism needs base n >= 3", "n")
    if lateral_sq is None:
        lateral_sq = _default_lateral_sq(n)
    lateral_sq = Fraction(lateral_sq)
    with mpmath.workdps(HIGH_PRECISION_DIGITS):
        lateral = mpmath.mpf(lateral_sq.numerator) / lateral_sq.denominator
        height_sq = lateral - _chord_sq(1, n, half_steps=True)
        _require(height_sq > 0, "antiprism needs lateral_sq above the squared offset chord", "lateral_sq")

    def key_of(i: int, j: int):
        if (i < n) == (j < n):
            step = (j - i) % n
            return ("ring", min(step, n - step))
        top, bottom = (i, j - n) if i < n else (j, i - n)
        half = (2 * ((bottom - top) % n) + 1) % (2 * n)
        return ("cross", min(half, 2 * n - half))

    def value_of(key):
        kind, steps = key
        if kind == "ring":
            return _chord_sq(steps, n)
        return height_sq + _chord_sq(steps, n, half_steps=True)

    return _ldm_from_keys(2 * n, key_of, value_of, f"antiprism({n},{lateral_sq})", 3,
                          equal_edge=(lateral_sq == 1))


OCTSEV_D1_PAIRS = frozenset({(0, 2), (0, 4), (1, 3), (1, 5), (2, 4), (3, 5)})
OCTSEV_ANTIPODES = frozenset({(0, 1), (2, 3), (4, 5)})


def octsev(alpha: Fraction = Fraction(1, 3)) -> LabeledDistanceMatrix:
    """Abstract six-point metric A..F on a sphere: three antipodal pairs, the
    pairs AC, AE, BD, BF, CE, DF at angle d₁ with cos d₁ = α, the rest at π − d₁.

    Class values are squared chords on the unit sphere: 2 − 2α, 2 + 2α, 4.
    """
    alpha = Fraction(alpha)
    _require(0 < alpha < 1, "octsev needs 0 < alpha < 1 (0 < d1 < d2, d1 + d2 = pi)", "alpha")
    labels = [[0] * 6 for _ in range(6)]
    for i, j in itertools.combinations(range(6), 2):
        if (i, j) in OCTSEV_ANTIPODES:
            label = 3
        elif (i, j) in OCTSEV_D1_PAIRS:
            label = 1
        else:
            label = 2
        labels[i][j] = labels[j][i] = label
    values = (Scalar(0), Scalar(2 - 2 * alpha), Scalar(2 + 2 * alpha), Scalar(4))
    return LabeledDistanceMatrix(labels=labels, class_values=values, name=f"octsev({alpha})",
                                 dimension_hint=3)


# -- registry -------------------------------------------------------------------------

def _facts(degree=None, group_order=None, **kwargs) -> ExpectedFacts:
    return ExpectedFacts(degree=degree, group_order=group_order, **kwargs)


def _simplex_facts(n):
    return _facts("inf", math.factorial(n + 1), distance_classes=1,
                  source="regular simplex: every bijection is an isometry")


def _cube_facts(n):
    degree = "inf" if n <= 3 else "3"
    return _facts(degree, 2 ** n * math.factorial(n), distance_classes=n,
                  source="hypercube: 3-point homogeneous; Hadamard-row 4-tuples fail for n >= 4")


def _orthoplex_facts(n):
    return _facts("inf", 2 ** n * math.factorial(n),
                  source="cross-polytope: 2n-point homogeneous")


def _demihypercube_facts(n):
    if n == 3:
        return _facts("inf", 24, source="half of the 3-cube is a regular tetrahedron")
    if n == 4:
        return _facts("inf", 384, source="half of the 4-cube is the 16-cell (a cross-polytope)")
    return _facts("3", 2 ** (n - 1) * math.factorial(n),
                  source="half-cube: 3-point homogeneous, Hadamard-row 4-tuples fail")


def _truncated_simplex_facts(n):
    if n == 2:
        return _facts("inf", 6, source="three points forming a regular triangle")
    if n == 3:
        return _facts("inf", 48, source="the octahedron")
    return _facts("2", math.factorial(n + 1), distance_classes=2,
                  source="two-distance set; ({1,2},{1,3},{2,3}) vs ({1,2},{1,3},{1,4}) fails")


def _doubled_simplex_facts(n):
    return _facts("inf", 2 * math.factorial(n + 1),
                  source="simplex together with its central image: 2(n+1)-point homogeneous")


def _prism_facts(n, lateral_sq=None):
    if lateral_sq is not None and Fraction(lateral_sq) == 1 and n != 4:
        return _facts("1", 4 * n, source="unit-edge prism: isotropy too small for the edge shell")
    if lateral_sq is None or Fraction(lateral_sq) > Fraction(_base_diameter_sq(n)):
        return _facts(">=3", 4 * n, source="long lateral edge: 3-point homogeneous")
    return None


def _antiprism_facts(n, lateral_sq=None):
    if lateral_sq is not None and Fraction(lateral_sq) == 1 and n != 3:
        return _facts("1", 4 * n, source="unit-edge antiprism: isotropy too small for the edge shell")
    if lateral_sq is None or Fraction(lateral_sq) > Fraction(_base_diameter_sq(n)):
        return _facts(">=3", 4 * n, source="long lateral edge: 3-point homogeneous")
    return None


FAMILIES: Dict[str, FamilySpec] = {}


def register_family(spec: FamilySpec) -> FamilySpec:
    FAMILIES[spec.name] = spec
    return spec


MATRIX_FAMILIES = ("prism", "antiprism", "n_gon", "octsev")

for _spec in (
    FamilySpec("simplex", simplex, (ParamSpec("n", "int", 3, "n >= 1"),), "n+1",
               "regular simplex e_1..e_{n+1}", _simplex_facts),
    FamilySpec("cube", cube, (ParamSpec("n", "int", 3, "n >= 1"),), "2^n",
               "hypercube (±1,…,±1)", _cube_facts),
    FamilySpec("orthoplex", orthoplex, (ParamSpec("n", "int", 3, "n >= 1"),), "2n",
               "cross-polytope ±e_i", _orthoplex_facts),
    FamilySpec("demihypercube", demihypercube, (ParamSpec("n", "int", 4, "n >= 3"),), "2^(n-1)",
               "(±1,…,±1) with an even number of minus signs", _demihypercube_facts),
    FamilySpec("truncated_simplex", truncated_simplex, (ParamSpec("n", "int", 4, "n >= 2"),),
               "n(n+1)/2", "points of R^{n+1} with two coordinates 1, the rest 0",
               _truncated_simplex_facts),
    FamilySpec("doubled_simplex", doubled_simplex, (ParamSpec("n", "int", 3, "n >= 2"),),
               "2(n+1)", "simplex together with its central image", _doubled_simplex_facts),
    FamilySpec("tetrahedron", tetrahedron, (), "4", "regular tetrahedron",
               lambda: _facts("inf", 24, distance_classes=1,
                              source="regular simplex: every bijection is an isometry")),
    FamilySpec("cube3", cube3, (), "8", "3-cube",
               lambda: _facts("inf", 48, distance_classes=3,
                              source="three-distance rule: centrally symmetric, diameter pairs form a perfect matching")),
    FamilySpec("octahedron", octahedron, (), "6", "regular octahedron",
               lambda: _facts("inf", 48, distance_classes=2,
                              source="cross-polytope: 2n-point homogeneous")),
    FamilySpec("icosahedron", icosahedron, (), "12", "cyclic (0, ±1, ±φ)",
               lambda: _facts("inf", 120, distance_classes=3,
                              source="three-distance rule: centrally symmetric, diameter pairs form a perfect matching")),
    FamilySpec("dodecahedron", dodecahedron, (), "20", "(±1,±1,±1) and cyclic (0, ±1/φ, ±φ)",
               lambda: _facts("2", 120, shells=(3, 6, 6, 3, 1), distance_classes=5,
                              source="isotropy of order 6 acts simply transitively on the second sphere")),
    FamilySpec("cuboctahedron", cuboctahedron, (), "12", "permutations of (±1, ±1, 0)",
               lambda: _facts("inf", 48, shells=(4, 2, 4, 1), distance_classes=4,
                              source="vertex isotropy is transitive on every sphere and reorders the equator square; 12-point homogeneous")),
    FamilySpec("icosidodecahedron", icosidodecahedron, (), "30", "edge midpoints of the icosahedron",
               lambda: _facts("1", 120, distance_classes=6,
                              source="the ends of an edge see a common neighbour at different distances; not 2-point homogeneous")),
    FamilySpec("goss6", goss6, (), "27", "semiregular Gosset polytope in R^6",
               lambda: _facts(">=2", None, min_group_order=27 * 1920, shells=(16, 10),
                              distance_classes=2, verdicts=((2, True),), search_cap=2,
                              source="isotropy transitive on both spheres; 2-point homogeneous, degree open")),
    FamilySpec("goss7", goss7, (), "56", "semiregular Gosset polytope in R^7",
               lambda: _facts(">=3", None, shells=(27, 27, 1), distance_classes=3,
                              verdicts=((2, True), (3, True)), search_cap=3,
                              source="isotropy transitive on every sphere with 2-point homogeneous spheres; 3-point homogeneous, degree open")),
    FamilySpec("rhombus", rhombus, (ParamSpec("alpha", "rational", Fraction(1, 2), "alpha > 0"),), "4",
               "(±1, 0), (0, ±alpha)",
               lambda alpha=Fraction(1, 2): _facts("0", 4, source="long and short diagonal ends form two orbits; not vertex-transitive")
               if Fraction(alpha) != 1 else _facts("inf", 8, source="the square")),
    FamilySpec("rectangle", rectangle, (ParamSpec("a", "rational", Fraction(1), "a > 0"),
                                        ParamSpec("b", "rational", Fraction(2), "b > 0")), "4",
               "axis-parallel rectangle with sides a, b",
               lambda a=Fraction(1), b=Fraction(2): _facts("inf", 4, source="pairwise distinct distances per vertex")
               if Fraction(a) != Fraction(b) else _facts("inf", 8, source="the square")),
    FamilySpec("simplex_3edge", simplex_3edge,
               (ParamSpec("a", "rational", Fraction(3), "0 < a < b"),
                ParamSpec("b", "rational", Fraction(4), "b < c"),
                ParamSpec("c", "rational", Fraction(24, 5), "c^2 < a^2 + b^2")), "4",
               "tetrahedron with opposite edges equal",
               lambda a=None, b=None, c=None: _facts("inf", 4,
                                                              source="every vertex sees the others at pairwise distinct distances")),
    FamilySpec("cell24", cell24, (), "24", "permutations of (±1, ±1, 0, 0)",
               lambda: _facts(None, 1152, source="Weyl group of F4; degree open")),
    FamilySpec("cell600", cell600, (), "120", "600-cell, golden-ratio coordinates",
               lambda: _facts(None, 14400, source="Coxeter group H4; degree open"), expensive=True),
    FamilySpec("cell120", cell120, (), "600", "120-cell, golden-ratio coordinates",
               lambda: None, expensive=True),
    FamilySpec("prism", prism, (ParamSpec("n", "int", 4, "n >= 3"),
                                ParamSpec("lateral_sq", "rational", None,
                                          "> 0; default exceeds the squared base diameter")),
               "2n", "right prism over a unit-edge n-gon", _prism_facts),
    FamilySpec("antiprism", antiprism, (ParamSpec("n", "int", 4, "n >= 3"),
                                        ParamSpec("lateral_sq", "rational", None,
                                                  "above the squared offset chord")),
               "2n", "antiprism over a unit-edge n-gon", _antiprism_facts),
    FamilySpec("n_gon", n_gon, (ParamSpec("n", "int", 5, "n >= 3"),), "n", "regular polygon",
               lambda n=5: _facts("inf", 2 * n, source="regular polygon: a point and its orientation fix every vertex")),
    FamilySpec("octsev", octsev, (ParamSpec("alpha", "rational", Fraction(1, 3), "0 < alpha < 1"),), "6",
               "octahedral six-point spherical metric with cos d1 = alpha",
               lambda alpha=Fraction(1, 3): _facts("inf", 12,
                                                   source="3-point and 6-point homogeneous")),
):
    register_family(_spec)
del _spec


def family(name: str) -> FamilySpec:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ParamError(f"Unknown catalog family '{name}'; known: {', '.join(FAMILIES)}", "family")


def make_entry(family_name: str, label: str = None, **raw_params) -> CatalogEntry:
    """Validate and coerce parameters, fill in defaults and expected facts."""
    spec = family(family_name)
    known = {p.name for p in spec.params}
    unknown = set(raw_params) - known
    if unknown:
        raise ParamError(f"{family_name} has no parameter(s) {', '.join(sorted(unknown))}",
                         sorted(unknown)[0])
    params = []
    for p in spec.params:
        if p.name in raw_params and raw_params[p.name] is not None:
            params.append((p.name, p.coerce(raw_params[p.name])))
        elif p.default is not None:
            params.append((p.name, p.default))
    expected = spec.expected(**dict(params)) if spec.expected else None
    return CatalogEntry(family=family_name, params=tuple(params), expected=expected, label=label)


def generate(entry: CatalogEntry, allow_expensive: bool = False) -> Instance:
    """Build the instance for a catalog entry.

    Raises:
        ParamError: unknown family, invalid parameters, or an expensive family
            without ``allow_expensive``.
    """
    spec = family(entry.family)
    if (spec.expensive or entry.family in EXPENSIVE_FAMILIES) and not allow_expensive:
        raise ParamError(f"{entry.family} is expensive; pass --allow-expensive", "family")
    instance = spec.builder(**entry.param_dict)
    instance.metadata.update({
        "family": entry.family,
        "params": {key: str(value) for key, value in entry.params},
        "entry": entry.name,
    })
    if entry.expected is not None:
        instance.metadata["expected"] = entry.expected
    logger.debug(f"Generated {entry.name}: {instance.k} points")
    return instance


def catalog_rows() -> List[Dict[str, Any]]:
    """Listing data: family, parameter schema, vertex count, default facts."""
    rows = []
    for name, spec in FAMILIES.items():
        try:
            facts = make_entry(name).expected
        except ParamError:
            facts = None
        rows.append({
            "family": name,
            "params": spec.schema(),
            "vertices": spec.vertex_count,
            "emits": spec.emits,
            "expensive": spec.expensive,
            "description": spec.description,
            "expected": facts.to_dict() if facts else {},
        })
    return rows


def _entry(family_name: str, label: str, **params) -> CatalogEntry:
    return make_entry(family_name, label=label, **params)


def acceptance_set() -> List[CatalogEntry]:
    """Instances with known degrees, group orders and shells."""
    return [
        _entry("tetrahedron", "tetrahedron"),
        _entry("cube3", "3-cube"),
        _entry("octahedron", "octahedron"),
        _entry("icosahedron", "icosahedron"),
        _entry("dodecahedron", "dodecahedron"),
        _entry("cuboctahedron", "cuboctahedron"),
        _entry("icosidodecahedron", "icosidodecahedron"),
        _entry("cube", "4-cube", n=4),
        _entry("cube", "5-cube", n=5),
        _entry("demihypercube", "demihypercube(4)", n=4),
        _entry("demihypercube", "demihypercube(5)", n=5),
        _entry("truncated_simplex", "TS_3", n=3),
        _entry("truncated_simplex", "TS_4", n=4),
        _entry("truncated_simplex", "TS_5", n=5),
        _entry("orthoplex", "orthoplex(3)", n=3),
        _entry("orthoplex", "orthoplex(4)", n=4),
        _entry("doubled_simplex", "doubled_simplex(2)", n=2),
        _entry("doubled_simplex", "doubled_simplex(3)", n=3),
        _entry("simplex", "simplex(4)", n=4),
        _entry("n_gon", "pentagon", n=5),
        _entry("n_gon", "heptagon", n=7),
        _entry("octsev", "octsev(1/3)", alpha=Fraction(1, 3)),
        _entry("simplex_3edge", "simplex_3edge(3,4,24/5)", a=3, b=4, c=Fraction(24, 5)),
        _entry("rhombus", "rhombus(1/2)", alpha=Fraction(1, 2)),
        _entry("rectangle", "rectangle(1,2)", a=1, b=2),
        _entry("prism", "prism(4,9)", n=4, lateral_sq=9),
        _entry("antiprism", "antiprism(4,9)", n=4, lateral_sq=9),
        _entry("goss6", "goss6"),
        _entry("goss7", "goss7"),
    ]


PLATONIC_AND_CUBOCTAHEDRON = frozenset({
    "tetrahedron", "cube3", "octahedron", "icosahedron", "dodecahedron", "cuboctahedron",
})


def equal_edge_set() -> List[CatalogEntry]:
    """3D instances whose smallest distance is the common edge length."""
    entries = [make_entry(name) for name in (
        "tetrahedron", "cube3", "octahedron", "icosahedron", "dodecahedron",
        "cuboctahedron", "icosidodecahedron",
    )]
    entries += [make_entry("prism", n=n, lateral_sq=1) for n in (3, 5, 6)]
    entries += [make_entry("antiprism", n=n, lateral_sq=1) for n in (4, 5)]
    return entries
