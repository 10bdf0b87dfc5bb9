"""Command-line front end.

Examples:
  permquot analyze --generators '(1 2 3 4 5)' --endo-d 2
  permquot analyze --family 'dihedral:4 x cyclic:2^6' --fixed-point --endo-d 2 --format json
  permquot analyze --table group.json --fixed-point
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .age import age_report, ages_by_cycle_type, lemma_shortcut, oracle_disagreements, reid_tai_verdict
from .endo import certificate
from .groups import (
    DEFAULT_CAP,
    CapExceeded,
    MultiplicationTable,
    PermutationGroup,
    close_generators,
    parse_family,
    parse_generators,
    regular_representation,
)
from .perm import FORBIDDEN_TYPES, ParseError, cycle_lengths, format_cycles

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_ORACLE = 4

MAX_WITNESSES = 20


@dataclass
class AnalysisRequest:
    generators: str | None = None
    table: str | None = None  # path to a MultiplicationTable JSON file
    family: str | None = None
    fixed_point: bool = False
    degree: int | None = None
    endo_d: int | None = None
    cap: int = DEFAULT_CAP
    oracle: bool = False
    fmt: str = "text"
    verbose: bool = False
    timing: bool = False

    def __post_init__(self) -> None:
        sources = [s for s in (self.generators, self.table, self.family) if s is not None]
        if len(sources) != 1:
            raise ValueError("exactly one of --generators, --table, --family is required")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")


@dataclass
class AnalysisReport:
    group: dict
    cycle_types: list[dict]
    lemma_shortcut: bool
    verdict: dict
    endo: dict | None = None
    oracle: dict | None = None
    elements: list[dict] | None = None
    timing: dict | None = None
    schema: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        out = {"schema": self.schema}
        for k, v in asdict(self).items():
            if k != "schema" and v is not None:
                out[k] = v
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict | str) -> AnalysisReport:
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)


def build_group(req: AnalysisRequest) -> PermutationGroup:
    if req.generators is not None:
        degree, gens = parse_generators(req.generators, req.degree)
        return close_generators(gens, req.cap, degree=degree)
    if req.table is not None:
        table = MultiplicationTable.from_json(Path(req.table).read_text(encoding="utf-8"))
    else:
        table = parse_family(req.family, req.cap)
    return regular_representation(table, add_fixed_point=req.fixed_point, cap=req.cap)


def _frac(x) -> str:
    return str(x)


def analyze(req: AnalysisRequest) -> AnalysisReport:
    t0 = time.perf_counter()
    G = build_group(req)
    t1 = time.perf_counter()

    digest = []
    for lengths, (rep, mult) in sorted(ages_by_cycle_type(G).items(), reverse=True):
        digest.append(
            {
                "cycle_type": list(lengths),
                "multiplicity": mult,
                "representative": format_cycles(rep.element),
                "order": rep.order,
                "chart_ages": {str(c): _frac(a) for c, a in rep.chart_ages.items()},
                "min_age": _frac(rep.min_age),
                "lower_bound": _frac(rep.lower_bound),
                "quasi_reflection_charts": list(rep.quasi_reflection_charts),
                "forbidden_type": tuple(L for L in lengths if L > 1) in FORBIDDEN_TYPES,
            }
        )
    shortcut = lemma_shortcut(G)
    verdict = reid_tai_verdict(G)
    t2 = time.perf_counter()

    # one witness per cycle type unless verbose
    witnesses = []
    seen_types = set()
    for w in verdict.witnesses:
        key = cycle_lengths(w.element)
        if not req.verbose and key in seen_types:
            continue
        seen_types.add(key)
        witnesses.append(w.to_json())
    verdict_json = {
        "kind": verdict.kind.value,
        "extension": verdict.is_extension,
        "min_age": None if verdict.min_age is None else _frac(verdict.min_age),
        "witness_count": len(verdict.witnesses),
        "witnesses": witnesses if req.verbose else witnesses[:MAX_WITNESSES],
    }

    report = AnalysisReport(
        group={
            "degree": G.degree,
            "order": G.order,
            "generators": [format_cycles(g) for g in G.generators],
        },
        cycle_types=digest,
        lemma_shortcut=shortcut,
        verdict=verdict_json,
    )
    if req.endo_d is not None:
        report.endo = certificate(G, req.endo_d, with_verdict=False).to_json()
    if req.oracle:
        reps = [r.element for r, _ in ages_by_cycle_type(G).values()]
        bad = oracle_disagreements(reps)
        report.oracle = {
            "checked_cycle_types": len(reps),
            "disagreements": [
                {"element": format_cycles(b.element), "chart": b.chart, "exact": _frac(b.exact), "numeric": None if b.numeric != b.numeric else b.numeric}
                for b in bad
            ],
        }
    if req.verbose:
        report.elements = [
            {"element": format_cycles(g), "min_age": _frac(age_report(g).min_age)} for g in G.elements
        ]
    if req.timing:
        t3 = time.perf_counter()
        report.timing = {"closure_s": t1 - t0, "ages_s": t2 - t1, "total_s": t3 - t0}
    return report


def render_text(report: AnalysisReport) -> str:
    g = report.group
    lines = [
        f"group: degree {g['degree']}, order {g['order']}, {len(g['generators'])} generator(s)",
    ]
    for gen in g["generators"][:10]:
        lines.append(f"  {gen}" if len(gen) <= 120 else f"  {gen[:117]}...")
    lines.append("cycle types:")
    for row in report.cycle_types:
        ct = "[" + ",".join(map(str, row["cycle_type"])) + "]"
        if len(ct) > 40:
            ct = ct[:37] + "..."
        qr = " quasi-reflection" if row["quasi_reflection_charts"] else ""
        lines.append(
            f"  {ct:<40} x{row['multiplicity']:<6} order {row['order']:<4} "
            f"min age {row['min_age']:<6} bound {row['lower_bound']}{qr}"
        )
    lines.append(f"lemma shortcut (no (12), (123), (12)(34) types): {report.lemma_shortcut}")
    v = report.verdict
    kind = v["kind"] + (" (refinement beyond terminality)" if v["extension"] else "")
    lines.append(f"verdict: {kind}; min age {v['min_age']}")
    for w in v["witnesses"]:
        elem = w["element"] if len(w["element"]) <= 80 else w["element"][:77] + "..."
        lines.append(f"  witness {elem} chart {w['chart']} age {w['age']}")
    if report.endo is not None:
        e = report.endo
        deg = str(e["degree"])
        if len(deg) > 40:
            deg = f"{e['d']}^{e['dimension']}"
        lines.append(
            f"endomorphism: d={e['d']} on P^{e['dimension']}, degree {deg}, "
            f"commutes with all generators: {all(e['commutes'].values())}"
        )
    if report.oracle is not None:
        n_bad = len(report.oracle["disagreements"])
        lines.append(f"oracle: {report.oracle['checked_cycle_types']} cycle types, {n_bad} disagreement(s)")
    if report.timing is not None:
        lines.append("timing: " + ", ".join(f"{k} {v:.3f}" for k, v in report.timing.items()))
    return "\n".join(lines) + "\n"


def run(req: AnalysisRequest) -> tuple[AnalysisReport, int]:
    report = analyze(req)
    code = EXIT_OK
    if report.oracle is not None and report.oracle["disagreements"]:
        code = EXIT_ORACLE
    return report, code


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permquot", description="Terminality and power-map endomorphisms of P^(n-1)/G")
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyse a permutation group")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--generators", help="JSON ({\"degree\":n,\"generators\":[...]} or list) or cycles separated by ';'")
    src.add_argument("--table", help="multiplication table JSON file")
    src.add_argument("--family", help="named group, e.g. heisenberg:3 or 'dihedral:4 x cyclic:2^6'")
    a.add_argument("--degree", type=int, help="degree for --generators (default: largest point)")
    a.add_argument("--fixed-point", action="store_true", help="add a fixed coordinate to the regular representation")
    a.add_argument("--endo-d", type=int, help="certify the d-th power endomorphism")
    a.add_argument("--cap", type=int, default=DEFAULT_CAP)
    a.add_argument("--oracle", action="store_true", help="cross-check ages numerically")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--verbose", action="store_true", help="list every element and witness")
    a.add_argument("--timing", action="store_true", help="include wall-clock timings")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        req = AnalysisRequest(
            generators=args.generators,
            table=args.table,
            family=args.family,
            fixed_point=args.fixed_point,
            degree=args.degree,
            endo_d=args.endo_d,
            cap=args.cap,
            oracle=args.oracle,
            fmt=args.format,
            verbose=args.verbose,
            timing=args.timing,
        )
        report, code = run(req)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.dumps() if req.fmt == "json" else render_text(report))
    if code == EXIT_ORACLE:
        print("error: exact and numeric ages disagree", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
