#!/usr/bin/env python3
"""
Entry point: analyze finite metric spaces for isometry groups and point
homogeneity degrees.
"""

import argparse
import json
import sys
import time
import traceback
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from config import DEFAULT_THREADS, ORACLE_MAX_M, ORACLE_MAX_POINTS, REPORT_INDENT
from database.sqlite_db import SQLiteDatabase
from groups.autgroup import automorphisms
from groups.permgroup import PermGroup, bsgs_from_generators, cycle_notation
from homogeneity.analysis import DegreeReport, homogeneity_degree
from homogeneity.criteria import reflection_falsifier_3d, two_point_sphere_criterion
from homogeneity.levels import ConsistencyError, check_witness, is_m_point_homogeneous
from homogeneity.oracle import brute_automorphisms, brute_m_homog
from metric import catalog
from metric.catalog import CatalogEntry
from metric.distmat import (
    AmbiguousClustering, LabeledDistanceMatrix, class_records, double_centered_rank,
    label_exact, label_float, load_distance_matrix, shell_sizes,
)
from metric.geometry import (
    PointSet, affine_rank, chord_cosines, circumsphere_check, float_squared_distances,
    load_point_set, save_point_set, squared_distances,
)
from metric.scalar import format_scalar
from utils.errors import InputError, ParamError
from utils.helpers import format_tuple, parse_params, parse_tuple, save_json_to_file
from utils.logger import setup_logger, log_performance, performance_logger

logger = setup_logger()

Instance = Union[PointSet, LabeledDistanceMatrix]


@dataclass
class AnalysisRequest:
    catalog: Optional[str] = None
    params: Dict[str, str] = field(default_factory=dict)
    points_file: Optional[str] = None
    matrix_file: Optional[str] = None
    mode: str = "exact"
    tol: Optional[float] = None
    max_m: Optional[int] = None
    accelerators: bool = True
    cross_check: bool = False
    threads: int = DEFAULT_THREADS
    dimension: Optional[int] = None
    allow_expensive: bool = False
    antipodal_folding: bool = False

    def validate(self) -> None:
        sources = [s for s in (self.catalog, self.points_file, self.matrix_file) if s]
        if len(sources) != 1:
            raise InputError("Give exactly one of --catalog, --points-file, --matrix-file")
        if self.mode not in ("exact", "float"):
            raise ParamError(f"Unknown mode '{self.mode}'", "mode")
        if self.max_m is not None and self.max_m < 1:
            raise ParamError("--max-m must be at least 1", "max_m")
        if self.threads < 1:
            raise ParamError("--threads must be at least 1", "threads")


@dataclass
class PreparedInstance:
    name: str
    ldm: LabeledDistanceMatrix
    n: int
    points: Optional[PointSet] = None
    entry: Optional[CatalogEntry] = None
    source: str = "catalog"
    timings: Dict[str, float] = field(default_factory=dict)


class HomogeneityAnalyzer:
    def __init__(self, db: SQLiteDatabase = None):
        self._db = db

    @property
    def db(self) -> SQLiteDatabase:
        if self._db is None:
            self._db = SQLiteDatabase()
        return self._db

    # -- input ----------------------------------------------------------------

    def resolve(self, request: AnalysisRequest) -> Tuple[Instance, Optional[CatalogEntry], str]:
        request.validate()
        if request.catalog:
            entry = catalog.make_entry(request.catalog, **request.params)
            return catalog.generate(entry, allow_expensive=request.allow_expensive), entry, "catalog"
        if request.points_file:
            return load_point_set(request.points_file), None, "points_file"
        return load_distance_matrix(request.matrix_file, mode=request.mode, tol=request.tol), None, "matrix_file"

    def prepare(self, request: AnalysisRequest) -> PreparedInstance:
        """Instance → labeled matrix plus the dimension used to cap the search."""
        started = time.time()
        instance, entry, source = self.resolve(request)
        name = (entry.name if entry else None) or instance.name or "instance"

        if isinstance(instance, PointSet):
            n = affine_rank(instance)
            if request.mode == "float":
                ldm = label_float(float_squared_distances(instance), tol=request.tol, squared=True,
                                  name=name, dimension_hint=n)
            else:
                ldm = label_exact(squared_distances(instance), name=name, dimension_hint=n)
            points = instance
        else:
            ldm, points = instance, None
            n = request.dimension or ldm.dimension_hint
            if n is None:
                n = double_centered_rank(ldm)
                logger.warning(f"No dimension given for {name}; using Gram rank {n}")
        if request.dimension is not None and points is not None and request.dimension != n:
            logger.warning(f"Ignoring --dimension {request.dimension}: {name} has affine rank {n}")

        prepared = PreparedInstance(name=name, ldm=ldm, n=n, points=points, entry=entry, source=source)
        prepared.timings["labeling"] = time.time() - started
        logger.info(f"Prepared {name}: k={ldm.k}, n={n}, {ldm.num_labels} distance classes")
        return prepared

    def build_group(self, prepared: PreparedInstance) -> PermGroup:
        started = time.time()
        generators = automorphisms(prepared.ldm)
        prepared.timings["automorphisms"] = time.time() - started
        started = time.time()
        group = bsgs_from_generators(generators, prepared.ldm.k)
        prepared.timings["bsgs"] = time.time() - started
        return group

    # -- analysis -------------------------------------------------------------

    def analyze(self, request: AnalysisRequest) -> Tuple[Dict[str, Any], DegreeReport]:
        started = time.time()
        prepared = self.prepare(request)
        group = self.build_group(prepared)
        degree = homogeneity_degree(
            prepared.ldm, group, n=prepared.n, max_m=request.max_m, points=prepared.points,
            accelerators=request.accelerators, cross_check=request.cross_check,
            antipodal_folding=request.antipodal_folding, threads=request.threads,
        )
        if request.cross_check:
            self.cross_check(prepared, group, degree)
        report = self.build_report(prepared, group, degree)
        log_performance("analyze", time.time() - started, len(degree.verdicts))
        return report, degree

    def cross_check(self, prepared: PreparedInstance, group: PermGroup, degree: DegreeReport) -> None:
        """Independent confirmations; any disagreement raises ConsistencyError."""
        ldm, name = prepared.ldm, prepared.name
        second = degree.verdict(2)
        if group.is_transitive() and second is not None:
            if two_point_sphere_criterion(ldm, group, all_vertices=True) != second.holds:
                raise ConsistencyError(f"Sphere criterion disagrees with m=2 on {name}")

        third = degree.verdict(3)
        if prepared.points is not None and prepared.n == 3 and third is not None and third.holds:
            if reflection_falsifier_3d(prepared.points, group, ldm) is not None:
                raise ConsistencyError(f"Reflection falsifier refutes m=3 on {name}")

        if ldm.k <= ORACLE_MAX_POINTS:
            brute = brute_automorphisms(ldm)
            if len(brute) != group.order:
                raise ConsistencyError(f"Group order {group.order} but brute force finds {len(brute)} on {name}")
            for m in range(1, ORACLE_MAX_M + 1):
                if brute_m_homog(ldm, m) != is_m_point_homogeneous(ldm, group, m).holds:
                    raise ConsistencyError(f"Brute-force oracle disagrees at m={m} on {name}")
        logger.info(f"Cross-checks passed for {name}")

    def build_report(self, prepared: PreparedInstance, group: PermGroup,
                     degree: DegreeReport) -> Dict[str, Any]:
        ldm = prepared.ldm
        instance: Dict[str, Any] = {"name": prepared.name, "source": prepared.source}
        if prepared.entry is not None:
            instance["family"] = prepared.entry.family
            instance["params"] = {key: str(value) for key, value in prepared.entry.params}

        report: Dict[str, Any] = {
            "instance": instance,
            "k": ldm.k,
            "n": prepared.n,
            "group_order": str(group.order),
            "shells": list(shell_sizes(ldm, 0)) if ldm.k > 1 else [],
            "classes": class_records(ldm),
        }
        if prepared.points is not None and ldm.exact:
            sphere = circumsphere_check(prepared.points)
            if sphere.equidistant:
                report["radius_sq"] = format_scalar(sphere.radius_sq)
                report["cosines"] = [format_scalar(c) for c in chord_cosines(sphere.radius_sq, ldm.class_values[1:])]
        report.update(degree.to_dict())
        report["group_order"] = str(group.order)
        report["n"] = prepared.n
        wall_times = dict(prepared.timings)
        wall_times.update(report.pop("wall_times"))
        report["wall_times"] = {key: round(value, 6) for key, value in wall_times.items()}
        if prepared.entry is not None and prepared.entry.expected is not None:
            expected = prepared.entry.expected
            report["expected"] = expected.to_dict()
            if expected.degree is not None and degree.termination != "max_m_cap":
                report["matches_expected"] = degree.degree.satisfies(expected.degree)
        return report

    def group_summary(self, request: AnalysisRequest) -> Dict[str, Any]:
        prepared = self.prepare(request)
        group = self.build_group(prepared)
        summary = group.to_dict()
        summary["instance"] = prepared.name
        summary["transitive"] = group.is_transitive()
        summary["orbits"] = [list(orbit) for orbit in group.orbits()]
        summary["stabilizer_order"] = str(group.stabilizer(0).order) if prepared.ldm.k else "1"
        summary["cycles"] = [cycle_notation(g) for g in group.generators]
        return summary

    def witness(self, request: AnalysisRequest, first: str = None, second: str = None,
                m: int = None) -> Dict[str, Any]:
        """Check a given pair of tuples, or search the first witness at m."""
        prepared = self.prepare(request)
        group = self.build_group(prepared)
        ldm = prepared.ldm
        if first is not None or second is not None:
            if first is None or second is None:
                raise InputError("--first and --second go together")
            a, b = parse_tuple(first), parse_tuple(second)
            result = check_witness(ldm, group, a, b)
            return {
                "instance": prepared.name,
                "first": list(a),
                "second": list(b),
                "first_profile": list(ldm.profile(a)),
                "second_profile": list(ldm.profile(b)),
                "profiles_equal": result.profiles_equal,
                "equivalent": result.equivalent,
                "is_witness": result.is_witness,
            }
        if m is None:
            raise InputError("Give --first/--second or --m")
        verdict = is_m_point_homogeneous(ldm, group, m, threads=request.threads)
        data = {"instance": prepared.name, "m": m, "holds": verdict.holds}
        if verdict.witness is not None:
            data["witness"] = [list(verdict.witness[0]), list(verdict.witness[1])]
        return data

    # -- table ----------------------------------------------------------------

    def _table_row(self, entry: CatalogEntry, threads: int) -> Dict[str, Any]:
        expected = entry.expected
        request = AnalysisRequest(catalog=entry.family,
                                  params={key: str(value) for key, value in entry.params},
                                  threads=threads, max_m=expected.search_cap if expected else None)
        request.validate()
        instance = catalog.generate(entry)
        if isinstance(instance, PointSet):
            n = affine_rank(instance)
            ldm = label_exact(squared_distances(instance), name=entry.name, dimension_hint=n)
            points = instance
        else:
            ldm, n, points = instance, instance.dimension_hint, None
        prepared = PreparedInstance(name=entry.name, ldm=ldm, n=n, points=points, entry=entry)
        group = self.build_group(prepared)
        report = homogeneity_degree(ldm, group, n=n, max_m=request.max_m, points=points, threads=threads)

        checks = []
        if expected.degree is not None:
            checks.append(report.degree.satisfies(expected.degree))
        if expected.group_order is not None:
            checks.append(group.order == expected.group_order)
        if expected.min_group_order is not None:
            checks.append(group.order >= expected.min_group_order)
        if expected.shells is not None:
            checks.append(tuple(shell_sizes(ldm, 0)) == expected.shells)
        for m, holds in expected.verdicts:
            verdict = report.verdict(m)
            checks.append(verdict is not None and verdict.holds == holds)
        return {
            "instance": entry.name,
            "expected_degree": expected.degree or "",
            "degree": str(report.degree),
            "expected_order": expected.group_order or (f">={expected.min_group_order}" if expected.min_group_order else ""),
            "order": group.order,
            "expected_shells": ",".join(str(s) for s in expected.shells) if expected.shells else "",
            "shells": ",".join(str(s) for s in shell_sizes(ldm, 0)),
            "status": "PASS" if all(checks) else "FAIL",
        }

    @performance_logger
    def run_table(self, threads: int = DEFAULT_THREADS) -> Tuple[List[Dict[str, Any]], bool]:
        rows = [self._table_row(entry, threads) for entry in catalog.acceptance_set()]
        return rows, all(row["status"] == "PASS" for row in rows)

    @performance_logger
    def run_equal_edge(self, threads: int = DEFAULT_THREADS) -> Tuple[List[Dict[str, Any]], bool]:
        """Among equal-edge 3D instances only the Platonic solids and the
        cuboctahedron reach degree 2."""
        rows = []
        for entry in catalog.equal_edge_set():
            instance = catalog.generate(entry)
            if isinstance(instance, PointSet):
                n = affine_rank(instance)
                ldm = label_exact(squared_distances(instance), name=entry.name, dimension_hint=n)
            else:
                ldm, n = instance, instance.dimension_hint
            prepared = PreparedInstance(name=entry.name, ldm=ldm, n=n, entry=entry)
            report = homogeneity_degree(ldm, self.build_group(prepared), n=n, max_m=2, threads=threads)
            reaches_two = report.degree.is_infinite or (report.degree.value or 0) >= 2
            expected = entry.family in catalog.PLATONIC_AND_CUBOCTAHEDRON
            rows.append({
                "instance": entry.name,
                "degree": str(report.degree),
                "degree_at_least_2": reaches_two,
                "status": "PASS" if reaches_two == expected else "FAIL",
            })
        return rows, all(row["status"] == "PASS" for row in rows)

    # -- persistence ------------------------------------------------------------

    def store(self, report: Dict[str, Any]) -> Optional[int]:
        run = self.db.add_run(report)
        return run.id if run is not None else None

    def history(self, instance: str = None, limit: int = 20) -> List[Dict[str, Any]]:
        return [
            {
                "id": run.id,
                "instance": run.instance,
                "k": run.k,
                "n": run.n,
                "group_order": run.group_order,
                "degree": run.degree,
                "termination": run.termination,
                "created_at": run.created_at.isoformat(sep=" ", timespec="seconds"),
            }
            for run in self.db.get_runs(instance=instance, limit=limit)
        ]

    def export_instance(self, request: AnalysisRequest, output: str) -> str:
        instance, entry, _ = self.resolve(request)
        path = Path(output)
        try:
            if isinstance(instance, PointSet):
                save_point_set(instance, path)
            elif instance.exact:
                values = instance.class_values
                saved = save_json_to_file({
                    "name": entry.name if entry else instance.name,
                    "dimension": instance.dimension_hint,
                    "squared_distances": [[format_scalar(values[label]) for label in row]
                                          for row in instance.labels],
                }, str(path))
                if not saved:
                    raise InputError(f"Cannot write {path}")
            else:
                if path.suffix.lower() != ".csv":
                    raise ParamError(f"{request.catalog} has floating-point distances; "
                                     f"export it to a .csv file", "output")
                values = np.asarray(instance.class_values, dtype=float)
                if instance.squared:
                    values = np.sqrt(values)
                pd.DataFrame(values[instance.array]).to_csv(path, header=False, index=False, float_format="%.17g")
        except OSError as e:
            raise InputError(f"Cannot write {path}: {e}")
        logger.info(f"Exported {request.catalog} to {path}")
        return str(path)


# -- text rendering --------------------------------------------------------------

def format_report(report: Dict[str, Any]) -> str:
    lines = [
        f"Instance: {report['instance']['name']} (k={report['k']}, n={report['n']})",
        f"Group order: {report['group_order']}",
        f"Shells: {format_tuple(report['shells'])}",
        "Distance classes:",
    ]
    cosines = report.get("cosines")
    for index, record in enumerate(report["classes"]):
        text = f"  {record['label']}: {record['value']} ({record['pairs']} pairs)"
        if cosines:
            text += f", cos = {cosines[index]}"
        lines.append(text)
    if "radius_sq" in report:
        lines.append(f"Radius^2: {report['radius_sq']}")
    lines.append("Verdicts:")
    for verdict in report["verdicts"]:
        text = f"  m={verdict['m']}: {'holds' if verdict['holds'] else 'fails'} ({verdict['method']})"
        if "witness" in verdict:
            first, second = verdict["witness"]
            text += f" witness {format_tuple(first)} vs {format_tuple(second)}"
        lines.append(text)
    lines.append(f"Degree: {report['degree']} ({report['termination']})")
    return "\n".join(lines)


def format_group(summary: Dict[str, Any]) -> str:
    lines = [
        f"Instance: {summary['instance']}",
        f"Order: {summary['order']}",
        f"Base: {format_tuple(summary['base'])}",
        f"Transversal sizes: {format_tuple(summary['transversal_sizes'])}",
        f"Transitive: {summary['transitive']} ({len(summary['orbits'])} orbits)",
        f"Stabilizer of point 0: order {summary['stabilizer_order']}",
        "Generators:",
    ]
    lines.extend(f"  {cycles}" for cycles in summary["cycles"])
    return "\n".join(lines)


def catalog_frame(rows: List[Dict[str, Any]]) -> pd.DataFrame:
    """Text listing: schema and vertex formula next to the default instance's known facts."""
    records = []
    for row in rows:
        expected = row["expected"]
        order = expected.get("group_order")
        if order is None and "min_group_order" in expected:
            order = f">={expected['min_group_order']}"
        records.append({
            "family": row["family"] + (" *" if row["expensive"] else ""),
            "params": row["params"],
            "vertices": row["vertices"],
            "degree": expected.get("degree", ""),
            "group_order": order if order is not None else "",
            "shells": ",".join(str(s) for s in expected.get("shells", [])),
            "source": expected.get("source", ""),
        })
    return pd.DataFrame(records, columns=["family", "params", "vertices", "degree", "group_order",
                                          "shells", "source"])


def emit(data: Any, fmt: str, text: str = None) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=REPORT_INDENT, ensure_ascii=False))
    else:
        print(text if text is not None else data)


def create_parser():
    parser = argparse.ArgumentParser(description='Isometry groups and point homogeneity of finite metric spaces',
                                     formatter_class=argparse.RawDescriptionHelpFormatter,
                                     epilog="""
Examples:
  # list the catalog
  python main.py catalog list

  # analyze a catalog instance
  python main.py analyze --catalog dodecahedron
  python main.py analyze --catalog cube --param n=4 --format json

  # analyze your own points or distances
  python main.py analyze --points-file rhombus.json
  python main.py analyze --matrix-file distances.csv --mode float --dimension 3

  # reproduce the degree table
  python main.py table

  # check a pair of tuples
  python main.py witness --catalog truncated_simplex --param n=4 --first 0,1,4 --second 0,1,2
""")
    parser.add_argument('--verbose', action='store_true', help='Show tracebacks on errors')

    subparsers = parser.add_subparsers(dest='command', help='Command to execute')

    def add_source_arguments(sub):
        sub.add_argument('--catalog', help='Catalog family name')
        sub.add_argument('--param', action='append', default=[], metavar='KEY=VALUE',
                         help='Catalog parameter (repeatable)')
        sub.add_argument('--points-file', help='Instance JSON with exact coordinates')
        sub.add_argument('--matrix-file', help='Distance matrix (.csv distances or .json squared distances)')
        sub.add_argument('--mode', choices=['exact', 'float'], default='exact', help='Distance arithmetic')
        sub.add_argument('--tol', type=float, default=None, help='Clustering tolerance (float mode)')
        sub.add_argument('--dimension', type=int, default=None, help='Dimension for abstract matrices')
        sub.add_argument('--allow-expensive', action='store_true', help='Allow the 600-cell and 120-cell')
        sub.add_argument('--threads', type=int, default=DEFAULT_THREADS, help='Worker threads per level')
        sub.add_argument('--format', choices=['text', 'json'], default='text', help='Output format')

    catalog_parser = subparsers.add_parser('catalog', help='List catalog families or export an instance')
    catalog_parser.add_argument('action', nargs='?', choices=['list'], default='list',
                                help='List families with their known facts (default)')
    catalog_parser.add_argument('--export', metavar='NAME', help='Family to export')
    catalog_parser.add_argument('--param', action='append', default=[], metavar='KEY=VALUE',
                                help='Family parameter (repeatable)')
    catalog_parser.add_argument('-o', '--output', help='Output file for --export')
    catalog_parser.add_argument('--allow-expensive', action='store_true', help='Allow expensive families')
    catalog_parser.add_argument('--format', choices=['text', 'json'], default='text', help='Output format')

    analyze_parser = subparsers.add_parser('analyze', help='Group, verdicts and degree of one instance')
    add_source_arguments(analyze_parser)
    analyze_parser.add_argument('--max-m', type=int, default=None, help='Stop after this m')
    analyze_parser.add_argument('--no-accelerators', action='store_true', help='Level check only')
    analyze_parser.add_argument('--cross-check', action='store_true',
                                help='Verify shortcuts, criteria and (small instances) brute force')
    analyze_parser.add_argument('--antipodal-folding', action='store_true',
                                help='Check antipodal extension classes once')
    analyze_parser.add_argument('--store', action='store_true', help='Save the report in the run history')

    table_parser = subparsers.add_parser('table', help='Reproduce the known degree table')
    table_parser.add_argument('--equal-edge', action='store_true',
                              help='Run the equal-edge check instead')
    table_parser.add_argument('--threads', type=int, default=DEFAULT_THREADS, help='Worker threads per level')
    table_parser.add_argument('--format', choices=['text', 'json'], default='text', help='Output format')

    group_parser = subparsers.add_parser('group', help='Isometry group summary')
    add_source_arguments(group_parser)

    witness_parser = subparsers.add_parser('witness', help='Check or find a homogeneity witness')
    add_source_arguments(witness_parser)
    witness_parser.add_argument('--first', help='First tuple, e.g. 0,1,2')
    witness_parser.add_argument('--second', help='Second tuple')
    witness_parser.add_argument('--m', type=int, default=None, help='Search the first witness at m')

    history_parser = subparsers.add_parser('history', help='List stored analysis runs')
    history_parser.add_argument('--instance', help='Only runs of this instance')
    history_parser.add_argument('--limit', type=int, default=20, help='Number of runs')
    history_parser.add_argument('--format', choices=['text', 'json'], default='text', help='Output format')

    return parser


def request_from_args(args) -> AnalysisRequest:
    return AnalysisRequest(
        catalog=args.catalog,
        params=parse_params(args.param),
        points_file=args.points_file,
        matrix_file=args.matrix_file,
        mode=args.mode,
        tol=args.tol,
        max_m=getattr(args, 'max_m', None),
        accelerators=not getattr(args, 'no_accelerators', False),
        cross_check=getattr(args, 'cross_check', False),
        threads=args.threads,
        dimension=args.dimension,
        allow_expensive=args.allow_expensive,
        antipodal_folding=getattr(args, 'antipodal_folding', False),
    )


def run_command(args, analyzer: HomogeneityAnalyzer) -> int:
    if args.command == 'catalog':
        if args.export:
            if not args.output:
                raise InputError("--export needs -o/--output")
            request = AnalysisRequest(catalog=args.export, params=parse_params(args.param),
                                      allow_expensive=args.allow_expensive)
            print(f"Exported {args.export} to {analyzer.export_instance(request, args.output)}")
            return 0
        rows = catalog.catalog_rows()
        if args.format == 'json':
            emit(rows, 'json')
        else:
            print(catalog_frame(rows).to_string(index=False))
            print("* needs --allow-expensive")
        return 0

    if args.command == 'analyze':
        report, _ = analyzer.analyze(request_from_args(args))
        if args.store:
            run_id = analyzer.store(report)
            if run_id is not None:
                logger.info(f"Stored as run {run_id}")
        emit(report, args.format, format_report(report))
        return 0

    if args.command == 'table':
        rows, all_pass = analyzer.run_equal_edge(args.threads) if args.equal_edge else analyzer.run_table(args.threads)
        if args.format == 'json':
            emit({"rows": rows, "all_pass": all_pass}, 'json')
        else:
            for row in rows:
                if "expected_degree" in row:
                    print(f"{row['instance']}: expected degree {row['expected_degree']}, "
                          f"computed {row['degree']}, {row['status']}")
                else:
                    print(f"{row['instance']}: degree {row['degree']}, {row['status']}")
            print(pd.DataFrame(rows).to_string(index=False))
        return 0 if all_pass else 1

    if args.command == 'group':
        summary = analyzer.group_summary(request_from_args(args))
        emit(summary, args.format, format_group(summary))
        return 0

    if args.command == 'witness':
        result = analyzer.witness(request_from_args(args), args.first, args.second, args.m)
        emit(result, args.format, "\n".join(f"{key}: {value}" for key, value in result.items()))
        return 0

    if args.command == 'history':
        runs = analyzer.history(args.instance, args.limit)
        if args.format == 'json':
            emit(runs, 'json')
        elif runs:
            print(pd.DataFrame(runs).to_string(index=False))
        else:
            print("No stored runs")
        return 0

    logger.error(f"Unknown command: {args.command}")
    return 1


def main(argv: List[str] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 0

    analyzer = HomogeneityAnalyzer()
    try:
        return run_command(args, analyzer)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    except AmbiguousClustering as e:
        logger.error(str(e))
        return 3
    except InputError as e:
        logger.error(f"Input error: {e}")
        return 2
    except Exception as e:
        logger.error(f"Application error: {e}")
        if args.verbose:
            traceback.print_exc()
        return 1
    finally:
        if analyzer._db is not None:
            analyzer._db.close()


if __name__ == "__main__":
    sys.exit(main())
